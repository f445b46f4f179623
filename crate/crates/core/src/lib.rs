//! Sink extensions of finite directed graphs.
//!
//! The crate models a graph `E` that extends a base graph `G` by finitely
//! many added vertices draining into designated sinks, together with the
//! moves that reshape such extensions without changing their essential
//! data, the integer lattice computations that decide when two extensions
//! can be brought to a common form, and replayable certificates for those
//! decisions.

pub mod certificate;
pub mod classify;
pub mod extension;
pub mod fixtures;
pub mod graph;
pub mod ids;
pub mod lattice;
pub mod text;
pub mod vector;
