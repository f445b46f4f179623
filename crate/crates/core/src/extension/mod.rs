//! Sink extensions of a base graph and the moves acting on them.

mod canonical;
mod moves;
mod paths;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{dot_quote, graph_to_parse, Graph, GraphError, VertexSet};
use crate::ids::{EdgeId, VertexId};
use crate::text::{lex, ParseError, ParseErrorKind, Record, Role};

pub use canonical::{canonical_simple, canonically_equal};
pub use moves::{
    apply_move, apply_trace, outsplit, outsplit_along_path, parse_move, simplify, star, strip_sink, Move, MoveTrace,
    OutsplitRecord,
};
pub use paths::{
    boundary, boundary_edges_at, is_forest_extension, is_tree_extension, saturation, wojciech_vector, wojciech_vectors,
    z_paths, Boundary,
};

/// One failed clause of the extension definition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub clause: u8,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CLAUSE({}): {}", self.clause, self.witness)
    }
}

fn render_violations(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{}", render_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("base edge {0} has an endpoint outside the base")]
    BaseEdgeOutsideBase(EdgeId),
    #[error("{0} is not a boundary edge")]
    NotBoundaryEdge(EdgeId),
    #[error("{0} is a source of the base graph")]
    SourceOfBase(VertexId),
    #[error("{0} is not a base edge")]
    NotBaseEdge(EdgeId),
    #[error("path ends at {path_end} but the edge starts at {edge_source}")]
    PathMismatch { path_end: VertexId, edge_source: VertexId },
    #[error("vertex {0} is not a base vertex")]
    NotBaseVertex(VertexId),
    #[error("multiplicity at {0} is negative")]
    NegativeMultiplicity(VertexId),
    #[error("vector {index} is zero; its sink would be a source")]
    ZeroVector { index: usize },
    #[error("extension is not simple")]
    NotSimple,
    #[error("extension has no sinks")]
    NoSinks,
    #[error("sink index {index} out of range for {count} sinks")]
    SinkIndex { index: usize, count: usize },
    #[error("expected a 1-sink extension, found {0} sinks")]
    NotOneSink(usize),
    #[error("set is not hereditary: edge {0} leaves it")]
    NotHereditary(EdgeId),
    #[error("move {index}: {source}")]
    Trace { index: usize, source: Box<ExtensionError> },
}

/// A graph `E` together with a base subgraph `G` and an ordered sink list.
///
/// Values of this type always satisfy the four defining clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkExtension {
    graph: Graph,
    base_vertices: VertexSet,
    base_edges: BTreeSet<EdgeId>,
    sinks: Vec<VertexId>,
}

impl SinkExtension {
    /// Checks structure and every clause; all violated clauses are reported.
    pub fn new(
        graph: Graph,
        base_vertices: VertexSet,
        base_edges: BTreeSet<EdgeId>,
        sinks: Vec<VertexId>,
    ) -> Result<Self, ExtensionError> {
        for v in base_vertices.iter().chain(&sinks) {
            graph.check_vertex(v)?;
        }
        for e in &base_edges {
            let ends = graph.endpoints(e)?;
            if !base_vertices.contains(&ends.source) || !base_vertices.contains(&ends.range) {
                return Err(ExtensionError::BaseEdgeOutsideBase(e.clone()));
            }
        }
        let ext = Self { graph, base_vertices, base_edges, sinks };
        let violations = ext.violations();
        if violations.is_empty() {
            Ok(ext)
        } else {
            Err(ExtensionError::Invalid(violations))
        }
    }

    pub(crate) fn new_unchecked(
        graph: Graph,
        base_vertices: VertexSet,
        base_edges: BTreeSet<EdgeId>,
        sinks: Vec<VertexId>,
    ) -> Self {
        let ext = Self { graph, base_vertices, base_edges, sinks };
        debug_assert!(ext.violations().is_empty(), "{:?}", ext.violations());
        ext
    }

    /// The base graph viewed as an extension with no sinks.
    pub fn from_base(g: &Graph) -> Self {
        Self {
            graph: g.clone(),
            base_vertices: g.vertices().clone(),
            base_edges: g.edges().map(|(e, _)| e.clone()).collect(),
            sinks: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_vertices(&self) -> &VertexSet {
        &self.base_vertices
    }

    pub fn base_edges(&self) -> &BTreeSet<EdgeId> {
        &self.base_edges
    }

    pub fn is_base_edge(&self, e: &EdgeId) -> bool {
        self.base_edges.contains(e)
    }

    pub fn is_base_vertex(&self, v: &VertexId) -> bool {
        self.base_vertices.contains(v)
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    pub fn sink_count(&self) -> usize {
        self.sinks.len()
    }

    pub fn sink(&self, index: usize) -> Result<&VertexId, ExtensionError> {
        self.sinks.get(index).ok_or(ExtensionError::SinkIndex { index, count: self.sinks.len() })
    }

    /// The base graph `G` as a standalone graph.
    pub fn base_graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in &self.base_vertices {
            g.add_vertex(v.clone()).expect("fresh vertex");
        }
        for e in &self.base_edges {
            let ends = self.graph.endpoints(e).expect("base edge");
            g.add_edge(e.clone(), ends.source.clone(), ends.range.clone()).expect("base edge");
        }
        g
    }

    /// `H = E⁰ \ G⁰`.
    pub fn added_vertices(&self) -> VertexSet {
        self.graph.vertices().difference(&self.base_vertices).cloned().collect()
    }

    /// `H` consists of the sinks alone.
    pub fn is_simple(&self) -> bool {
        self.graph.vertex_count() == self.base_vertices.len() + self.sinks.len()
    }

    /// Every violated clause, in clause order.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let h = self.added_vertices();
        let g = &self.graph;
        let listed: BTreeSet<&VertexId> = self.sinks.iter().collect();
        let mut seen = BTreeSet::new();
        for s in &self.sinks {
            if !seen.insert(s) {
                out.push(Violation { clause: 1, witness: format!("sink {s} is listed twice") });
            }
            if self.base_vertices.contains(s) {
                out.push(Violation { clause: 1, witness: format!("listed sink {s} is a base vertex") });
            }
            if let Some(e) = g.out_edges(s).next() {
                out.push(Violation { clause: 1, witness: format!("listed sink {s} emits edge {e}") });
            }
        }
        for x in &h {
            if g.in_degree(x) == 0 {
                out.push(Violation { clause: 1, witness: format!("vertex {x} of H is a source") });
            }
            if g.out_degree(x) == 0 && !listed.contains(x) {
                out.push(Violation { clause: 1, witness: format!("vertex {x} of H is an unlisted sink") });
            }
        }
        if let Some(cycle) = g.find_cycle_within(&h) {
            let names: Vec<&str> = cycle.iter().map(EdgeId::as_str).collect();
            out.push(Violation { clause: 2, witness: format!("cycle {} lies inside H", names.join(".")) });
        }
        for (e, ends) in g.edges() {
            if !self.base_edges.contains(e) && !h.contains(&ends.range) {
                out.push(Violation {
                    clause: 3,
                    witness: format!("edge {e} is not a base edge but ends at base vertex {}", ends.range),
                });
            }
        }
        for w in &self.base_vertices {
            let base_sink = g.out_edges(w).all(|e| !self.base_edges.contains(e));
            if let Some(e) = g.out_edges(w).next().filter(|_| base_sink) {
                out.push(Violation { clause: 4, witness: format!("base sink {w} emits edge {e}") });
            }
        }
        out
    }
}

/// Same checks as [`SinkExtension::new`].
pub fn validate_extension(
    graph: Graph,
    base_vertices: VertexSet,
    base_edges: BTreeSet<EdgeId>,
    sinks: Vec<VertexId>,
) -> Result<SinkExtension, ExtensionError> {
    SinkExtension::new(graph, base_vertices, base_edges, sinks)
}

/// Parses the extension format. Untagged lines belong to the base, so a
/// plain graph document reads as an extension with no sinks.
pub fn parse_extension(text: &str) -> Result<SinkExtension, ExtensionError> {
    let records = lex(text)?;
    let mut graph = Graph::new();
    let mut base_vertices = VertexSet::new();
    let mut base_edges = BTreeSet::new();
    let mut sinks: Vec<VertexId> = Vec::new();
    for (line, rec) in &records {
        if let Record::Vertex { id, role } = rec {
            graph
                .add_vertex(id.clone())
                .map_err(|_| ParseError::new(*line, ParseErrorKind::DuplicateVertex(id.clone())))?;
            if *role != Some(Role::Ext) {
                base_vertices.insert(id.clone());
            }
        }
    }
    for (line, rec) in records {
        match rec {
            Record::Edge { id, source, range, role } => {
                graph.add_edge(id.clone(), source, range).map_err(|err| ParseError::new(line, graph_to_parse(err)))?;
                if role != Some(Role::Ext) {
                    base_edges.insert(id);
                }
            }
            Record::Sink { id } => {
                if !graph.contains_vertex(id.as_str()) {
                    return Err(ParseError::new(line, ParseErrorKind::UnknownSink(id)).into());
                }
                if sinks.contains(&id) {
                    return Err(ParseError::new(line, ParseErrorKind::DuplicateSink(id)).into());
                }
                sinks.push(id);
            }
            Record::Vertex { .. } => {}
        }
    }
    SinkExtension::new(graph, base_vertices, base_edges, sinks)
}

fn role_of(is_base: bool) -> &'static str {
    if is_base {
        Role::Base.as_str()
    } else {
        Role::Ext.as_str()
    }
}

/// Canonical text: tagged vertices and edges in sorted order, then sinks.
pub fn serialize_extension(ext: &SinkExtension) -> String {
    let mut out = String::new();
    for v in ext.graph.vertices() {
        let _ = writeln!(out, "v {v} {}", role_of(ext.is_base_vertex(v)));
    }
    for (e, ends) in ext.graph.edges() {
        let _ = writeln!(out, "e {e} {} {} {}", ends.source, ends.range, role_of(ext.is_base_edge(e)));
    }
    for s in &ext.sinks {
        let _ = writeln!(out, "sink {s}");
    }
    out
}

/// Graphviz rendering; added elements are blue, sinks double circles.
pub fn extension_to_dot(ext: &SinkExtension) -> String {
    let mut out = String::from("digraph E {\n");
    for v in ext.graph.vertices() {
        let mut attrs = Vec::new();
        if !ext.is_base_vertex(v) {
            attrs.push("color=blue");
        }
        if ext.sinks.contains(v) {
            attrs.push("shape=doublecircle");
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {};", dot_quote(v.as_str()));
        } else {
            let _ = writeln!(out, "  {} [{}];", dot_quote(v.as_str()), attrs.join(", "));
        }
    }
    for (e, ends) in ext.graph.edges() {
        let style = if ext.is_base_edge(e) { "" } else { ", color=blue, style=dashed" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            dot_quote(ends.source.as_str()),
            dot_quote(ends.range.as_str()),
            dot_quote(e.as_str())
        );
    }
    out.push_str("}\n");
    out
}

/// `stem'1`, `stem'2`, … : the first label not yet used in `g`.
pub(crate) fn fresh_vertex(g: &Graph, stem: &str) -> VertexId {
    (1..)
        .map(|k| format!("{stem}'{k}"))
        .find(|name| !g.contains_vertex(name))
        .map(|name| VertexId::new(name).expect("derived from a valid label"))
        .expect("unbounded search")
}

/// `preferred` if unused in `g`, else `preferred'2`, `preferred'3`, ….
pub(crate) fn fresh_edge(g: &Graph, preferred: &str) -> EdgeId {
    let name = if g.contains_edge(preferred) {
        (2..).map(|k| format!("{preferred}'{k}")).find(|name| !g.contains_edge(name)).expect("unbounded search")
    } else {
        preferred.to_string()
    };
    EdgeId::new(name).expect("derived from a valid label")
}

/// Like [`fresh_edge`], for vertices.
pub(crate) fn fresh_plain_vertex(g: &Graph, preferred: &str) -> VertexId {
    let name = if g.contains_vertex(preferred) {
        (2..).map(|k| format!("{preferred}'{k}")).find(|name| !g.contains_vertex(name)).expect("unbounded search")
    } else {
        preferred.to_string()
    };
    VertexId::new(name).expect("derived from a valid label")
}
