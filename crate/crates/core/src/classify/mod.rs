//! Decision procedures on pairs of extensions of a common base graph.

mod algorithm;
mod balance;
mod k0;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::extension::{wojciech_vector, ExtensionError, SinkExtension};
use crate::graph::{maximal_tails, vertex_matrix, Graph, GraphError, VertexSet};
use crate::ids::VertexId;
use crate::lattice::{image_membership, restricted_membership, IntMatrix, IntVector, LatticeError};
use crate::vector::VertexVector;

pub use algorithm::{classify_1sink, classify_nsink};
pub use balance::{balance_loop, BalanceOutcome};
pub use k0::{embedding_obstruction, k0_matrix, k0_presentation, ObstructionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("the extensions have different base graphs")]
    BaseMismatch,
    #[error("expected 1-sink extensions, found {0} sinks")]
    NotOneSink(usize),
    #[error("sink counts differ: {first} vs {second}")]
    SinkCountMismatch { first: usize, second: usize },
    #[error("extension {which} is not essential: {vertex} does not reach sink {sink}")]
    NotEssential { which: usize, sink: VertexId, vertex: VertexId },
    #[error("base vertex {0} is a source")]
    SourceInBase(VertexId),
    #[error("base vertex {0} is a sink")]
    SinkInBase(VertexId),
    #[error("base graph has a cycle through {0}")]
    NotAcyclic(VertexId),
    #[error("closure mismatch: {} vs {}", fmt_set(.first), fmt_set(.second))]
    ClosureMismatch { first: VertexSet, second: VertexSet },
    #[error("no candidate: {0}")]
    NoCandidate(String),
    #[error("loop balancing precondition failed: {0}")]
    BalancePrecondition(String),
    #[error("no classification mode applies: {0}")]
    NoModeApplies(String),
    #[error("sink {index}: {source}")]
    AtSink { index: usize, source: Box<ClassifyError> },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// `{a,b,c}`.
pub fn fmt_set(set: &VertexSet) -> String {
    let names: Vec<&str> = set.iter().map(VertexId::as_str).collect();
    format!("{{{}}}", names.join(","))
}

/// Which hypotheses a classification runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Auto,
    Essential,
    Closure,
    Af,
    NSink,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Essential => "essential",
            Mode::Closure => "closure",
            Mode::Af => "af",
            Mode::NSink => "nsink",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Mode::Auto),
            "essential" => Ok(Mode::Essential),
            "closure" => Ok(Mode::Closure),
            "af" => Ok(Mode::Af),
            "nsink" => Ok(Mode::NSink),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Outcome of a lattice test on a Wojciech gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    CandidateFound(IntVector),
    Obstructed(String),
    Inconclusive(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CandidateFound(n) => write!(f, "CandidateFound: n = {n}"),
            Verdict::Obstructed(reason) => write!(f, "Obstructed: {reason}"),
            Verdict::Inconclusive(reason) => write!(f, "Inconclusive: {reason}"),
        }
    }
}

/// `A_G − I` in canonical vertex order.
pub fn a_minus_i(g: &Graph) -> IntMatrix {
    vertex_matrix(g).minus_identity().expect("adjacency matrices are square")
}

/// `(A_G − I)·δ_v`.
pub fn delta_image(g: &Graph, v: &VertexId) -> VertexVector {
    let mut out = VertexVector::new();
    for e in g.in_edges(v) {
        out.add_to(g.source(e).expect("edge"), &1.into());
    }
    out.add_to(v, &(-1).into());
    out
}

/// `(A_G − I)·n`.
pub fn apply_a_minus_i(g: &Graph, n: &VertexVector) -> VertexVector {
    let mut out = VertexVector::new();
    for (v, x) in n.entries() {
        out = &out + &delta_image(g, v).scale(x);
    }
    out
}

pub(crate) fn same_base(a: &SinkExtension, b: &SinkExtension) -> Result<Graph, ClassifyError> {
    let g = a.base_graph();
    if g != b.base_graph() {
        return Err(ClassifyError::BaseMismatch);
    }
    Ok(g)
}

/// A base vertex that does not reach sink `index`, if any.
pub(crate) fn non_reaching(ext: &SinkExtension, index: usize) -> Option<VertexId> {
    let sink = &ext.sinks()[index];
    let reach = ext.graph().ancestors([sink]);
    ext.base_vertices().iter().find(|w| !reach.contains(*w)).cloned()
}

/// Every base vertex reaches every sink.
pub fn is_essential(ext: &SinkExtension) -> bool {
    (0..ext.sink_count()).all(|i| non_reaching(ext, i).is_none())
}

/// Union of the maximal tails of the base graph all of whose vertices
/// reach sink `index`.
pub fn closure_of_sink(ext: &SinkExtension, index: usize) -> Result<VertexSet, ClassifyError> {
    let sink = ext.sink(index)?;
    let reach = ext.graph().ancestors([sink]);
    let mut out = VertexSet::new();
    for tail in maximal_tails(&ext.base_graph()) {
        if tail.is_subset(&reach) {
            out.extend(tail);
        }
    }
    Ok(out)
}

/// Sink closures agree position by position.
pub fn same_closure(a: &SinkExtension, b: &SinkExtension) -> Result<bool, ClassifyError> {
    same_base(a, b)?;
    if a.sink_count() != b.sink_count() {
        return Err(ClassifyError::SinkCountMismatch { first: a.sink_count(), second: b.sink_count() });
    }
    for i in 0..a.sink_count() {
        if closure_of_sink(a, i)? != closure_of_sink(b, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal tails together with the sets `λ_v = {w : w ≥ v}` of every sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailFamily {
    pub tails: Vec<VertexSet>,
    pub sink_tails: BTreeMap<VertexId, VertexSet>,
    graph: Graph,
}

impl TailFamily {
    /// Every element, tails first, then the sink sets in vertex order.
    pub fn elements(&self) -> Vec<VertexSet> {
        self.tails.iter().chain(self.sink_tails.values()).cloned().collect()
    }

    /// Elements `λ` with `λ ≥ ⋃ subset`: every vertex of `λ` reaches the union.
    pub fn closure(&self, subset: &[VertexSet]) -> Vec<VertexSet> {
        let union: VertexSet = subset.iter().flatten().cloned().collect();
        let reach = self.graph.ancestors(&union);
        self.elements().into_iter().filter(|l| l.is_subset(&reach)).collect()
    }
}

/// Tails of the base and the sink sets of the whole extension.
pub fn prim_skeleton(ext: &SinkExtension) -> TailFamily {
    let g = ext.graph();
    let sink_tails = g.sinks().into_iter().map(|s| {
        let up = g.ancestors([&s]);
        (s, up)
    });
    TailFamily { tails: maximal_tails(&ext.base_graph()), sink_tails: sink_tails.collect(), graph: g.clone() }
}

/// Hereditary saturated vertex subsets (including `∅` and all of `E⁰`),
/// sorted by size, then lexicographically.
pub fn saturated_hereditary_subsets(g: &Graph, bound: usize) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(GraphError::BoundExceeded { size: n, bound });
    }
    let order: Vec<&VertexId> = g.vertices().iter().collect();
    let index: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let succ: Vec<u64> =
        order.iter().map(|v| g.out_edges(v).fold(0u64, |m, e| m | 1 << index[g.range(e).expect("edge")])).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let hereditary = (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| succ[i] & !mask == 0);
        let saturated = (0..n).filter(|&i| mask >> i & 1 == 0).all(|i| succ[i] == 0 || succ[i] & !mask != 0);
        if hereditary && saturated {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| order[i].clone()).collect::<VertexSet>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Lattice test on `W(ext₁; i) − W(ext₂; i)`, optionally restricted to
/// candidates supported in `support`.
pub fn wojciech_gap(
    a: &SinkExtension,
    b: &SinkExtension,
    index: usize,
    support: Option<&VertexSet>,
) -> Result<Verdict, ClassifyError> {
    let g = same_base(a, b)?;
    let order: Vec<&VertexId> = g.vertices().iter().collect();
    let gap = &wojciech_vector(a, index)? - &wojciech_vector(b, index)?;
    let d = gap.to_dense(order.iter().copied());
    let m = a_minus_i(&g);
    let found = match support {
        None => image_membership(&m, &d)?,
        Some(s) => {
            let cols: Vec<usize> = order.iter().enumerate().filter(|(_, v)| s.contains(**v)).map(|(i, _)| i).collect();
            restricted_membership(&m, &d, &cols)?
        }
    };
    Ok(match found {
        Some(n) => Verdict::CandidateFound(n),
        None => Verdict::Obstructed(match support {
            None => format!("gap {d} not in image of {m}"),
            Some(s) => format!("gap {d} not in image of {m} restricted to {}", fmt_set(s)),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{parse_certificate, verify_certificate};
    use crate::fixtures::load;

    #[test]
    fn intro_pair_classifies() {
        let e1 = load("E1_intro").unwrap();
        let e2 = load("E2_intro").unwrap();
        assert_eq!(wojciech_gap(&e1, &e2, 0, None).unwrap(), Verdict::CandidateFound(IntVector::from_i64s(&[0, 0, 1])));
        let cert = classify_1sink(&e1, &e2, Mode::Essential).unwrap();
        let text = cert.serialize();
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        verify_certificate(&e1, &e2, &cert).unwrap();
        let w = crate::extension::wojciech_vector(&cert.target, 0).unwrap();
        assert_eq!(w.format_dense(cert.target.base_vertices()), "(1,1,2)");
    }

    #[test]
    fn ex26_closure_mismatch() {
        let e1 = load("E1_ex26").unwrap();
        let e2 = load("E2_ex26").unwrap();
        let err = classify_1sink(&e1, &e2, Mode::Closure).unwrap_err();
        assert_eq!(err.to_string(), "closure mismatch: {w1} vs {w1,w2}");
    }

    #[test]
    fn o3_is_obstructed() {
        let report = embedding_obstruction(&load("o3_w1").unwrap(), &load("o3_w2").unwrap()).unwrap();
        assert!(report.hypothesis_holds);
        assert!(matches!(report.verdict, Verdict::Obstructed(_)));
        assert_eq!(k0_presentation(&load("o3_w1").unwrap()).unwrap().to_string(), "Z");
        assert_eq!(k0_presentation(&load("o3_w2").unwrap()).unwrap().to_string(), "Z/2 + Z");
    }
}
