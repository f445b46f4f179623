//! Finite directed multigraphs, paths and reachability.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ids::{EdgeId, VertexId};
use crate::lattice::IntMatrix;
use crate::text::{lex, ParseError, ParseErrorKind, Record};

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} has dangling endpoint {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("edges {first} and {second} are not composable")]
    NotComposable { first: EdgeId, second: EdgeId },
    #[error("an empty path needs an anchor vertex")]
    EmptyPathWithoutAnchor,
    #[error("path starts at {found}, expected {expected}")]
    PathStart { expected: VertexId, found: VertexId },
    #[error("{size} vertices exceed the enumeration bound {bound}; use the SCC-based variant")]
    BoundExceeded { size: usize, bound: usize },
}

/// Endpoints of an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoints {
    pub source: VertexId,
    pub range: VertexId,
}

/// Finite directed multigraph with labelled vertices and edges.
///
/// Iteration order is always the canonical (sorted) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Endpoints>,
    out: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    inc: BTreeMap<VertexId, BTreeSet<EdgeId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if self.vertices.contains(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.out.insert(v.clone(), BTreeSet::new());
        self.inc.insert(v.clone(), BTreeSet::new());
        self.vertices.insert(v);
        Ok(())
    }

    pub fn add_edge(&mut self, id: EdgeId, source: VertexId, range: VertexId) -> Result<(), GraphError> {
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        for x in [&source, &range] {
            if !self.vertices.contains(x) {
                return Err(GraphError::DanglingEndpoint { edge: id, vertex: x.clone() });
            }
        }
        self.out.get_mut(&source).expect("known vertex").insert(id.clone());
        self.inc.get_mut(&range).expect("known vertex").insert(id.clone());
        self.edges.insert(id, Endpoints { source, range });
        Ok(())
    }

    pub fn remove_edge(&mut self, id: &EdgeId) -> Result<Endpoints, GraphError> {
        let ends = self.edges.remove(id).ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
        self.out.get_mut(&ends.source).expect("known vertex").remove(id);
        self.inc.get_mut(&ends.range).expect("known vertex").remove(id);
        Ok(ends)
    }

    /// Removes a vertex together with every incident edge.
    pub fn remove_vertex(&mut self, v: &VertexId) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        let incident: BTreeSet<EdgeId> = self.out[v].iter().chain(&self.inc[v]).cloned().collect();
        for e in &incident {
            self.remove_edge(e)?;
        }
        self.vertices.remove(v);
        self.out.remove(v);
        self.inc.remove(v);
        Ok(())
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &str) -> bool {
        self.edges.contains_key(e)
    }

    pub fn check_vertex(&self, v: &VertexId) -> Result<(), GraphError> {
        if self.vertices.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.clone()))
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Endpoints)> {
        self.edges.iter()
    }

    pub fn endpoints(&self, e: &EdgeId) -> Result<&Endpoints, GraphError> {
        self.edges.get(e).ok_or_else(|| GraphError::UnknownEdge(e.clone()))
    }

    pub fn source(&self, e: &EdgeId) -> Result<&VertexId, GraphError> {
        self.endpoints(e).map(|x| &x.source)
    }

    pub fn range(&self, e: &EdgeId) -> Result<&VertexId, GraphError> {
        self.endpoints(e).map(|x| &x.range)
    }

    /// Edges emitted by `v`, sorted. Empty for unknown vertices.
    pub fn out_edges(&self, v: &VertexId) -> impl DoubleEndedIterator<Item = &EdgeId> {
        self.out.get(v).into_iter().flatten()
    }

    /// Edges received by `v`, sorted. Empty for unknown vertices.
    pub fn in_edges(&self, v: &VertexId) -> impl DoubleEndedIterator<Item = &EdgeId> {
        self.inc.get(v).into_iter().flatten()
    }

    pub fn out_degree(&self, v: &VertexId) -> usize {
        self.out.get(v).map_or(0, BTreeSet::len)
    }

    pub fn in_degree(&self, v: &VertexId) -> usize {
        self.inc.get(v).map_or(0, BTreeSet::len)
    }

    /// Number of edges from `u` to `w`.
    pub fn multiplicity(&self, u: &VertexId, w: &VertexId) -> usize {
        self.out_edges(u).filter(|e| &self.edges[*e].range == w).count()
    }

    /// Subgraph induced on `keep` (unknown vertices ignored).
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices.intersection(keep) {
            g.add_vertex(v.clone()).expect("fresh vertex");
        }
        for (id, ends) in &self.edges {
            if keep.contains(&ends.source) && keep.contains(&ends.range) {
                g.add_edge(id.clone(), ends.source.clone(), ends.range.clone()).expect("fresh edge");
            }
        }
        g
    }

    pub fn sinks(&self) -> VertexSet {
        self.vertices.iter().filter(|v| self.out_degree(v) == 0).cloned().collect()
    }

    pub fn sources(&self) -> VertexSet {
        self.vertices.iter().filter(|v| self.in_degree(v) == 0).cloned().collect()
    }

    /// Vertices reachable from any of `start` by a possibly empty path.
    pub fn descendants<'a>(&self, start: impl IntoIterator<Item = &'a VertexId>) -> VertexSet {
        self.closure(start, |v| self.out_edges(v).map(|e| &self.edges[e].range).collect())
    }

    /// Vertices that reach some member of `targets` by a possibly empty path.
    pub fn ancestors<'a>(&self, targets: impl IntoIterator<Item = &'a VertexId>) -> VertexSet {
        self.closure(targets, |v| self.in_edges(v).map(|e| &self.edges[e].source).collect())
    }

    fn closure<'a, 'b>(
        &'b self,
        start: impl IntoIterator<Item = &'a VertexId>,
        step: impl Fn(&VertexId) -> Vec<&'b VertexId>,
    ) -> VertexSet {
        let mut seen: VertexSet = start.into_iter().filter(|v| self.vertices.contains(*v)).cloned().collect();
        let mut stack: Vec<VertexId> = seen.iter().cloned().collect();
        while let Some(v) = stack.pop() {
            for w in step(&v) {
                if seen.insert(w.clone()) {
                    stack.push(w.clone());
                }
            }
        }
        seen
    }

    /// True when `v` lies on a cycle (a nonempty path from `v` to itself).
    pub fn on_cycle(&self, v: &VertexId) -> bool {
        let next: Vec<&VertexId> = self.out_edges(v).map(|e| &self.edges[e].range).collect();
        self.descendants(next).contains(v)
    }

    /// Some cycle lying entirely inside `within`, as an edge list.
    pub fn find_cycle_within(&self, within: &VertexSet) -> Option<Vec<EdgeId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut mark: BTreeMap<&VertexId, Mark> = BTreeMap::new();
        for root in within.iter().filter(|v| self.vertices.contains(*v)) {
            if mark.contains_key(root) {
                continue;
            }
            // Iterative DFS; each frame holds its vertex, pending edges and the edge used to enter it.
            let mut frames: Vec<(&VertexId, Vec<&EdgeId>, Option<&EdgeId>)> = Vec::new();
            mark.insert(root, Mark::Open);
            frames.push((root, self.out_edges(root).rev().collect(), None));
            while let Some(frame) = frames.last_mut() {
                let Some(e) = frame.1.pop() else {
                    mark.insert(frame.0, Mark::Done);
                    frames.pop();
                    continue;
                };
                let w = &self.edges[e].range;
                if !within.contains(w) {
                    continue;
                }
                match mark.get(w) {
                    Some(Mark::Done) => {}
                    Some(Mark::Open) => {
                        let start = frames.iter().position(|f| f.0 == w).expect("open vertex on stack");
                        let mut cycle: Vec<EdgeId> = frames[start + 1..].iter().filter_map(|f| f.2.cloned()).collect();
                        cycle.push(e.clone());
                        return Some(cycle);
                    }
                    None => {
                        mark.insert(w, Mark::Open);
                        frames.push((w, self.out_edges(w).rev().collect(), Some(e)));
                    }
                }
            }
        }
        None
    }

    /// Shortest simple cycle inside `within`; among those of minimal length,
    /// the one whose least vertex is smallest, then the lexicographically
    /// least edge sequence starting at that vertex.
    pub fn shortest_cycle_within(&self, within: &VertexSet) -> Option<Path> {
        let mut best: Option<Path> = None;
        for w in within.iter().filter(|v| self.vertices.contains(*v)) {
            let allowed: VertexSet = within.range(w.clone()..).cloned().collect();
            let Some(path) = self.bfs(w, &allowed, |x, first| !first && x == w) else {
                continue;
            };
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
        best
    }

    /// Lexicographically least shortest path from `from` through `allowed`
    /// to a vertex accepted by `stop` (`first` is true only for `from`).
    fn bfs(&self, from: &VertexId, allowed: &VertexSet, stop: impl Fn(&VertexId, bool) -> bool) -> Option<Path> {
        if stop(from, true) {
            return Some(Path::empty(from.clone()));
        }
        let mut parent: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
        let mut queue = VecDeque::from([from.clone()]);
        let mut seen = BTreeSet::from([from.clone()]);
        while let Some(x) = queue.pop_front() {
            for e in self.out_edges(&x) {
                let y = &self.edges[e].range;
                if stop(y, false) {
                    let mut edges = vec![e.clone()];
                    let mut cur = x.clone();
                    while cur != *from {
                        let pe = &parent[&cur];
                        edges.push(pe.clone());
                        cur = self.edges[pe].source.clone();
                    }
                    edges.reverse();
                    return Some(Path { start: from.clone(), end: y.clone(), edges });
                }
                if allowed.contains(y) && seen.insert(y.clone()) {
                    parent.insert(y.clone(), e.clone());
                    queue.push_back(y.clone());
                }
            }
        }
        None
    }
}

/// A composable edge sequence with explicit endpoints; empty paths sit at
/// their anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    end: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(anchor: VertexId) -> Self {
        Self { start: anchor.clone(), end: anchor, edges: Vec::new() }
    }

    /// Checks composability in `g`. An empty edge list needs `anchor`.
    pub fn new(g: &Graph, anchor: Option<&VertexId>, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        let Some(first) = edges.first() else {
            let anchor = anchor.ok_or(GraphError::EmptyPathWithoutAnchor)?;
            g.check_vertex(anchor)?;
            return Ok(Self::empty(anchor.clone()));
        };
        let start = g.endpoints(first)?.source.clone();
        if let Some(a) = anchor {
            if *a != start {
                return Err(GraphError::PathStart { expected: a.clone(), found: start });
            }
        }
        let mut end = start.clone();
        let mut prev: Option<&EdgeId> = None;
        for e in &edges {
            let ends = g.endpoints(e)?;
            if ends.source != end {
                return Err(GraphError::NotComposable {
                    first: prev.cloned().unwrap_or_else(|| e.clone()),
                    second: e.clone(),
                });
            }
            end = ends.range.clone();
            prev = Some(e);
        }
        Ok(Self { start, end, edges })
    }

    pub fn source(&self) -> &VertexId {
        &self.start
    }

    pub fn range(&self) -> &VertexId {
        &self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices `s(α₁), r(α₁), …, r(αₙ)`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.start.clone()];
        out.extend(self.edges.iter().map(|e| g.edges[e].range.clone()));
        out
    }

    /// Concatenation; `self.range()` must equal `other.source()`.
    pub fn concat(&self, other: &Path) -> Path {
        assert_eq!(self.end, other.start, "paths are not composable");
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        Path { start: self.start.clone(), end: other.end.clone(), edges }
    }

    /// Cycle rotated to start (and end) at position `k`.
    pub fn rotate(&self, g: &Graph, k: usize) -> Path {
        assert_eq!(self.start, self.end, "only cycles can be rotated");
        let n = self.edges.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let edges: Vec<EdgeId> = self.edges[k..].iter().chain(&self.edges[..k]).cloned().collect();
        let start = g.edges[&edges[0]].source.clone();
        Path { start: start.clone(), end: start, edges }
    }

    /// `self` repeated `times` times (a cycle power).
    pub fn power(&self, times: usize) -> Path {
        assert!(times == 0 || self.start == self.end, "only cycles have powers");
        let edges = (0..times).flat_map(|_| self.edges.iter().cloned()).collect();
        Path { start: self.start.clone(), end: self.start.clone(), edges }
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.edges.is_empty() {
            write!(f, "[{}]", self.start)
        } else {
            let names: Vec<&str> = self.edges.iter().map(EdgeId::as_str).collect();
            f.write_str(&names.join("."))
        }
    }
}

/// Parses the plain graph format: `v <id>` and `e <id> <src> <dst>` lines.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let records = lex(text)?;
    let mut g = Graph::new();
    for (line, rec) in &records {
        match rec {
            Record::Vertex { role: Some(_), .. } | Record::Edge { role: Some(_), .. } => {
                return Err(ParseError::new(*line, ParseErrorKind::UnexpectedTag))
            }
            Record::Sink { .. } => return Err(ParseError::new(*line, ParseErrorKind::UnexpectedSink)),
            Record::Vertex { id, .. } => g
                .add_vertex(id.clone())
                .map_err(|_| ParseError::new(*line, ParseErrorKind::DuplicateVertex(id.clone())))?,
            Record::Edge { .. } => {}
        }
    }
    for (line, rec) in records {
        if let Record::Edge { id, source, range, .. } = rec {
            g.add_edge(id, source, range).map_err(|err| ParseError::new(line, graph_to_parse(err)))?;
        }
    }
    Ok(g)
}

pub(crate) fn graph_to_parse(err: GraphError) -> ParseErrorKind {
    match err {
        GraphError::DuplicateEdge(e) => ParseErrorKind::DuplicateEdge(e),
        GraphError::DuplicateVertex(v) => ParseErrorKind::DuplicateVertex(v),
        GraphError::DanglingEndpoint { edge, vertex } => ParseErrorKind::DanglingEndpoint { edge, vertex },
        other => ParseErrorKind::Malformed(other.to_string()),
    }
}

/// Canonical text: vertices sorted, then edges sorted by identifier.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "v {v}");
    }
    for (id, ends) in g.edges() {
        let _ = writeln!(out, "e {id} {} {}", ends.source, ends.range);
    }
    out
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering, byte-identical across runs.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", dot_quote(v.as_str()));
    }
    for (id, ends) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_quote(ends.source.as_str()),
            dot_quote(ends.range.as_str()),
            dot_quote(id.as_str())
        );
    }
    out.push_str("}\n");
    out
}

/// Adjacency matrix in canonical vertex order: `M[u][w]` counts edges `u → w`.
pub fn vertex_matrix(g: &Graph) -> IntMatrix {
    let order: Vec<&VertexId> = g.vertices().iter().collect();
    let index: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let labels: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    let mut m = IntMatrix::zeros(order.len(), order.len()).with_labels(labels.clone(), labels);
    for (_, ends) in g.edges() {
        let (i, j) = (index[&ends.source], index[&ends.range]);
        let x = m.get(i, j) + BigInt::from(1);
        m.set(i, j, x);
    }
    m
}

/// Whether some possibly empty path runs from `v` into `target`.
pub fn reaches(g: &Graph, v: &VertexId, target: &VertexSet) -> Result<bool, GraphError> {
    g.check_vertex(v)?;
    for t in target {
        g.check_vertex(t)?;
    }
    Ok(find_path(g, v, target)?.is_some())
}

/// `(sinks, sources)`.
pub fn vertex_roles(g: &Graph) -> (VertexSet, VertexSet) {
    (g.sinks(), g.sources())
}

/// Shortest path from `from` into `into`; ties go to the lexicographically
/// least edge sequence. `from ∈ into` gives the empty path.
pub fn find_path(g: &Graph, from: &VertexId, into: &VertexSet) -> Result<Option<Path>, GraphError> {
    g.check_vertex(from)?;
    Ok(g.bfs(from, g.vertices(), |x, _| into.contains(x)))
}

fn sort_family(mut family: Vec<VertexSet>) -> Vec<VertexSet> {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    family.dedup();
    family
}

/// Default vertex bound for subset enumerations.
pub const ENUMERATION_BOUND: usize = 20;

/// Maximal tails by checking every nonempty vertex subset.
///
/// Sorted by size, then lexicographically.
pub fn maximal_tails_bruteforce(g: &Graph, bound: usize) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(GraphError::BoundExceeded { size: n, bound });
    }
    let order: Vec<&VertexId> = g.vertices().iter().collect();
    let index: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    // reach[i] = bitmask of vertices reachable from i (reflexive).
    let reach: Vec<u64> =
        order.iter().map(|v| g.descendants([*v]).iter().fold(0u64, |m, w| m | 1 << index[w])).collect();
    let preds: Vec<u64> =
        (0..n).map(|j| (0..n).filter(|&i| reach[i] >> j & 1 == 1).fold(0, |m, i| m | 1 << i)).collect();
    let succ: Vec<u64> =
        order.iter().map(|v| g.out_edges(v).fold(0u64, |m, e| m | 1 << index[g.range(e).expect("edge")])).collect();
    let mut tails = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let members = (0..n).filter(|&i| mask >> i & 1 == 1);
        let hereditary = members.clone().all(|i| preds[i] & !mask == 0);
        if !hereditary || members.clone().any(|i| succ[i] & mask == 0) {
            continue;
        }
        let cofinal = members.clone().all(|i| members.clone().all(|j| reach[i] & reach[j] & mask != 0));
        if cofinal {
            tails.push((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| order[i].clone()).collect());
        }
    }
    Ok(sort_family(tails))
}

/// Maximal tails of a finite graph: the ancestor sets of vertices lying on
/// cycles. Same order as [`maximal_tails_bruteforce`].
pub fn maximal_tails(g: &Graph) -> Vec<VertexSet> {
    let tails = g.vertices().iter().filter(|v| g.on_cycle(v)).map(|v| g.ancestors([v])).collect();
    sort_family(tails)
}

/// Number of first-return paths at `v`, saturated at 2.
pub fn return_path_count(g: &Graph, v: &VertexId) -> Result<u8, GraphError> {
    g.check_vertex(v)?;
    let rest: VertexSet = g.vertices().iter().filter(|x| *x != v).cloned().collect();
    let avoid = g.induced(&rest);
    let next: Vec<&VertexId> = g.out_edges(v).map(|e| g.range(e).expect("edge")).filter(|w| *w != v).collect();
    let forward = avoid.descendants(next);
    let back_seeds: Vec<&VertexId> = g.in_edges(v).map(|e| g.source(e).expect("edge")).filter(|w| *w != v).collect();
    let backward = avoid.ancestors(back_seeds);
    let middle: VertexSet = forward.intersection(&backward).cloned().collect();
    if avoid.find_cycle_within(&middle).is_some() {
        return Ok(2);
    }
    // Paths from each middle vertex back to v, memoized in reverse topological order.
    fn count(g: &Graph, x: &VertexId, v: &VertexId, middle: &VertexSet, memo: &mut BTreeMap<VertexId, u64>) -> u64 {
        if let Some(&c) = memo.get(x) {
            return c;
        }
        let mut total = 0u64;
        for e in g.out_edges(x) {
            let y = g.range(e).expect("edge");
            let add = if y == v {
                1
            } else if middle.contains(y) {
                count(g, y, v, middle, memo)
            } else {
                0
            };
            total = total.saturating_add(add).min(2);
        }
        memo.insert(x.clone(), total);
        total
    }
    let mut memo = BTreeMap::new();
    let mut total = 0u64;
    for e in g.out_edges(v) {
        let y = g.range(e).expect("edge");
        let add = if y == v {
            1
        } else if middle.contains(y) {
            count(g, y, v, &middle, &mut memo)
        } else {
            0
        };
        total = total.saturating_add(add).min(2);
    }
    Ok(total as u8)
}

/// Every vertex has zero or at least two first-return paths.
pub fn condition_k(g: &Graph) -> bool {
    g.vertices().iter().all(|v| return_path_count(g, v).expect("known vertex") != 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::{e, v};

    fn ex26() -> Graph {
        parse_graph("v w1\nv w2\ne a w1 w1\ne b w1 w1\ne c w1 w2\ne d w2 w2\ne f w2 w2\n").unwrap()
    }

    #[test]
    fn parse_rejects_extension_syntax() {
        assert!(matches!(parse_graph("v a base\n").unwrap_err().kind, ParseErrorKind::UnexpectedTag));
        assert!(matches!(parse_graph("v a\nsink a\n").unwrap_err().kind, ParseErrorKind::UnexpectedSink));
        let err = parse_graph("v a\ne x a b\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::DanglingEndpoint { .. }));
        assert!(matches!(parse_graph("v a\nv a\n").unwrap_err().kind, ParseErrorKind::DuplicateVertex(_)));
    }

    #[test]
    fn serialization_is_sorted() {
        let g = parse_graph("e z b a\nv b\nv a\ne y a a\n").unwrap();
        assert_eq!(serialize_graph(&g), "v a\nv b\ne y a a\ne z b a\n");
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn remove_vertex_drops_incident_edges() {
        let mut g = ex26();
        g.remove_vertex(&v("w2")).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.remove_vertex(&v("w2")).is_err());
    }

    #[test]
    fn cycles() {
        let g = ex26();
        assert!(g.find_cycle_within(&VertexSet::from([v("w2")])).is_some());
        let dag = parse_graph("v a\nv b\ne x a b\n").unwrap();
        assert!(dag.find_cycle_within(dag.vertices()).is_none());
        let c = g.shortest_cycle_within(g.vertices()).unwrap();
        assert_eq!(c.edges(), &[e("a")]);
    }

    #[test]
    fn path_helpers() {
        let g = parse_graph("v a\nv b\ne x a b\ne y b a\n").unwrap();
        let p = Path::new(&g, None, vec![e("x"), e("y")]).unwrap();
        assert_eq!(p.rotate(&g, 1).edges(), &[e("y"), e("x")]);
        assert_eq!(p.power(2).len(), 4);
        assert!(Path::new(&g, None, vec![e("x"), e("x")]).is_err());
        assert_eq!(p.to_string(), "x.y");
    }

    #[test]
    fn return_paths_through_a_diamond() {
        let g = parse_graph("v a\nv b\nv c\ne 1 a b\ne 2 a c\ne 3 b a\ne 4 c a\n").unwrap();
        assert_eq!(return_path_count(&g, &v("a")).unwrap(), 2);
        assert_eq!(return_path_count(&g, &v("b")).unwrap(), 2);
        let two_cycle = parse_graph("v a\nv b\ne 1 a b\ne 2 b a\n").unwrap();
        assert_eq!(return_path_count(&two_cycle, &v("a")).unwrap(), 1);
        assert!(!condition_k(&two_cycle));
    }
}
