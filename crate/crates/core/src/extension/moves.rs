use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive};

use super::paths::z_paths;
use super::{fresh_edge, fresh_plain_vertex, fresh_vertex, ExtensionError, SinkExtension};
use crate::graph::{Graph, Path};
use crate::ids::{EdgeId, VertexId};
use crate::vector::{parse_vector, VertexVector};

/// Names created by one boundary outsplitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutsplitRecord {
    pub new_vertex: VertexId,
    /// `e′`, the replacement of the split edge.
    pub split_edge: EdgeId,
    /// `f ↦ f′` for every edge `f` into `s(e)`.
    pub copies: BTreeMap<EdgeId, EdgeId>,
}

/// Boundary outsplitting `E(e)`.
///
/// Fresh names: the new vertex is `<s(e)>'k`, the moved edge `<e>'`, and
/// each copied edge `<f>'`, with a numeric suffix on collision.
pub fn outsplit(ext: &SinkExtension, e: &EdgeId) -> Result<(SinkExtension, OutsplitRecord), ExtensionError> {
    let g = ext.graph();
    let ends = g.endpoints(e)?.clone();
    if !ext.is_base_vertex(&ends.source) || ext.is_base_vertex(&ends.range) {
        return Err(ExtensionError::NotBoundaryEdge(e.clone()));
    }
    let incoming: Vec<EdgeId> = g.in_edges(&ends.source).cloned().collect();
    if !incoming.iter().any(|f| ext.is_base_edge(f)) {
        return Err(ExtensionError::SourceOfBase(ends.source));
    }
    let mut graph = g.clone();
    let new_vertex = fresh_vertex(&graph, ends.source.as_str());
    graph.add_vertex(new_vertex.clone())?;
    graph.remove_edge(e)?;
    let split_edge = fresh_edge(&graph, &format!("{e}'"));
    graph.add_edge(split_edge.clone(), new_vertex.clone(), ends.range.clone())?;
    let mut copies = BTreeMap::new();
    for f in incoming {
        let f_source = g.source(&f)?.clone();
        let copy = fresh_edge(&graph, &format!("{f}'"));
        graph.add_edge(copy.clone(), f_source, new_vertex.clone())?;
        copies.insert(f, copy);
    }
    let out = SinkExtension::new_unchecked(
        graph,
        ext.base_vertices().clone(),
        ext.base_edges().clone(),
        ext.sinks().to_vec(),
    );
    Ok((out, OutsplitRecord { new_vertex, split_edge, copies }))
}

/// Outsplittings along the base path `alpha`, starting at the boundary
/// edge `e` with `s(e) = r(alpha)`: first at `e`, then at the copies of
/// `αₙ, …, α₂`. Afterwards `s(alpha)` is a boundary vertex.
/// An empty path performs no outsplitting.
pub fn outsplit_along_path(
    ext: &SinkExtension,
    e: &EdgeId,
    alpha: &[EdgeId],
) -> Result<(SinkExtension, Vec<OutsplitRecord>), ExtensionError> {
    let g = ext.graph();
    let ends = g.endpoints(e)?;
    if !ext.is_base_vertex(&ends.source) || ext.is_base_vertex(&ends.range) {
        return Err(ExtensionError::NotBoundaryEdge(e.clone()));
    }
    for a in alpha {
        if !ext.is_base_edge(a) {
            return Err(ExtensionError::NotBaseEdge(a.clone()));
        }
    }
    if alpha.is_empty() {
        return Ok((ext.clone(), Vec::new()));
    }
    let path = Path::new(g, None, alpha.to_vec())?;
    if path.range() != &ends.source {
        return Err(ExtensionError::PathMismatch { path_end: path.range().clone(), edge_source: ends.source.clone() });
    }
    let mut current = ext.clone();
    let mut edge = e.clone();
    let mut records = Vec::with_capacity(alpha.len());
    for k in (0..alpha.len()).rev() {
        let (next, record) = outsplit(&current, &edge)?;
        if k > 0 {
            edge = record.copies[&alpha[k]].clone();
        }
        records.push(record);
        current = next;
    }
    Ok((current, records))
}

/// Simplification: every path that leaves the base at once and runs to a
/// sink becomes a single edge. A one-edge path keeps its name; a longer
/// path from `w` is named `<w>|<edges joined by '.'>`.
pub fn simplify(ext: &SinkExtension) -> SinkExtension {
    if ext.is_simple() {
        return ext.clone();
    }
    let mut graph = ext.base_graph();
    for s in ext.sinks() {
        graph.add_vertex(s.clone()).expect("sinks are not base vertices");
    }
    for (i, s) in ext.sinks().iter().enumerate() {
        for w in ext.base_vertices() {
            for path in z_paths(ext, w, i).expect("valid sink and base vertex") {
                let name = match path.edges() {
                    [single] => single.to_string(),
                    edges => {
                        let parts: Vec<&str> = edges.iter().map(EdgeId::as_str).collect();
                        format!("{w}|{}", parts.join("."))
                    }
                };
                let id = fresh_edge(&graph, &name);
                graph.add_edge(id, w.clone(), s.clone()).expect("fresh edge");
            }
        }
    }
    SinkExtension::new_unchecked(graph, ext.base_vertices().clone(), ext.base_edges().clone(), ext.sinks().to_vec())
}

/// Edges `<w>-<sink>:1 … <w>-<sink>:m(w)` from each base vertex to `sink`.
pub(crate) fn attach_sink(graph: &mut Graph, sink: &VertexId, m: &VertexVector) -> Result<(), ExtensionError> {
    for (w, x) in m.entries() {
        if x.is_negative() {
            return Err(ExtensionError::NegativeMultiplicity(w.clone()));
        }
        let count = x.to_u64().ok_or(ExtensionError::NegativeMultiplicity(w.clone()))?;
        for k in 1..=count {
            let id = fresh_edge(graph, &format!("{w}-{sink}:{k}"));
            graph.add_edge(id, w.clone(), sink.clone())?;
        }
    }
    Ok(())
}

/// `E*m`: a fresh last sink receiving `m(w)` edges from each base vertex.
pub fn star(ext: &SinkExtension, m: &VertexVector) -> Result<SinkExtension, ExtensionError> {
    for (w, x) in m.entries() {
        if !ext.is_base_vertex(w) {
            return Err(ExtensionError::NotBaseVertex(w.clone()));
        }
        if x.is_negative() {
            return Err(ExtensionError::NegativeMultiplicity(w.clone()));
        }
    }
    let mut graph = ext.graph().clone();
    let sink = fresh_plain_vertex(&graph, &format!("v{}", ext.sink_count() + 1));
    graph.add_vertex(sink.clone())?;
    attach_sink(&mut graph, &sink, m)?;
    let mut sinks = ext.sinks().to_vec();
    sinks.push(sink);
    SinkExtension::new(graph, ext.base_vertices().clone(), ext.base_edges().clone(), sinks)
}

/// Removes the last sink of a simple extension with all edges into it.
pub fn strip_sink(ext: &SinkExtension) -> Result<SinkExtension, ExtensionError> {
    if !ext.is_simple() {
        return Err(ExtensionError::NotSimple);
    }
    let Some((last, rest)) = ext.sinks().split_last() else {
        return Err(ExtensionError::NoSinks);
    };
    let mut graph = ext.graph().clone();
    graph.remove_vertex(last)?;
    Ok(SinkExtension::new_unchecked(graph, ext.base_vertices().clone(), ext.base_edges().clone(), rest.to_vec()))
}

/// A single replayable move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Outsplit(EdgeId),
    OutsplitAlongPath(EdgeId, Vec<EdgeId>),
    Simplify,
    Star(VertexVector),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Outsplit(e) => write!(f, "outsplit {e}"),
            Move::OutsplitAlongPath(e, alpha) => {
                write!(f, "along {e}")?;
                for a in alpha {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            Move::Simplify => f.write_str("simplify"),
            Move::Star(m) if m.is_zero() => f.write_str("star"),
            Move::Star(m) => write!(f, "star {m}"),
        }
    }
}

/// Parses one move line as rendered by `Display`.
pub fn parse_move(line: &str) -> Result<Move, String> {
    let mut tokens = line.split_whitespace();
    let keyword = tokens.next().ok_or("empty move line")?;
    let rest: Vec<&str> = tokens.collect();
    let edge = |s: &str| EdgeId::new(s).map_err(|err| err.to_string());
    match (keyword, rest.as_slice()) {
        ("outsplit", [e]) => Ok(Move::Outsplit(edge(e)?)),
        ("along", [e, alpha @ ..]) => {
            Ok(Move::OutsplitAlongPath(edge(e)?, alpha.iter().map(|a| edge(a)).collect::<Result<_, _>>()?))
        }
        ("simplify", []) => Ok(Move::Simplify),
        ("star", entries) => parse_vector(&entries.join(" ")).map(Move::Star).map_err(|err| err.to_string()),
        _ => Err(format!("unrecognised move {:?}", line.trim())),
    }
}

/// Ordered list of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveTrace(Vec<Move>);

impl MoveTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }
}

impl FromIterator<Move> for MoveTrace {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

pub fn apply_move(ext: &SinkExtension, m: &Move) -> Result<SinkExtension, ExtensionError> {
    match m {
        Move::Outsplit(e) => outsplit(ext, e).map(|(x, _)| x),
        Move::OutsplitAlongPath(e, alpha) => outsplit_along_path(ext, e, alpha).map(|(x, _)| x),
        Move::Simplify => Ok(simplify(ext)),
        Move::Star(m) => star(ext, m),
    }
}

/// Replays `trace`; the first failing move is reported with its index.
pub fn apply_trace(ext: &SinkExtension, trace: &MoveTrace) -> Result<SinkExtension, ExtensionError> {
    let mut current = ext.clone();
    for (index, m) in trace.moves().iter().enumerate() {
        current = apply_move(&current, m).map_err(|err| ExtensionError::Trace { index, source: Box::new(err) })?;
    }
    Ok(current)
}
