use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExtensionError, SinkExtension};
use crate::graph::{Path, VertexSet};
use crate::ids::{EdgeId, VertexId};
use crate::vector::VertexVector;

/// Least saturated set containing the hereditary set `x`.
pub fn saturation(ext: &SinkExtension, x: &VertexSet) -> Result<VertexSet, ExtensionError> {
    let g = ext.graph();
    for v in x {
        g.check_vertex(v)?;
        if let Some(e) = g.out_edges(v).find(|e| !x.contains(g.range(e).expect("edge"))) {
            return Err(ExtensionError::NotHereditary(e.clone()));
        }
    }
    let mut set = x.clone();
    loop {
        let add: Vec<VertexId> = g
            .vertices()
            .iter()
            .filter(|w| !set.contains(*w) && g.out_degree(w) > 0)
            .filter(|w| g.out_edges(w).all(|e| set.contains(g.range(e).expect("edge"))))
            .cloned()
            .collect();
        if add.is_empty() {
            return Ok(set);
        }
        set.extend(add);
    }
}

/// Boundary vertices `B⁰` and boundary edges `B¹`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Boundary {
    pub vertices: VertexSet,
    pub edges: BTreeSet<EdgeId>,
}

pub fn boundary(ext: &SinkExtension) -> Boundary {
    let mut out = Boundary::default();
    for (e, ends) in ext.graph().edges() {
        if ext.is_base_vertex(&ends.source) && !ext.is_base_vertex(&ends.range) {
            out.vertices.insert(ends.source.clone());
            out.edges.insert(e.clone());
        }
    }
    out
}

/// Boundary edges emitted by `w`, sorted.
pub fn boundary_edges_at(ext: &SinkExtension, w: &VertexId) -> Vec<EdgeId> {
    if !ext.is_base_vertex(w) {
        return Vec::new();
    }
    let g = ext.graph();
    g.out_edges(w).filter(|e| !ext.is_base_vertex(g.range(e).expect("edge"))).cloned().collect()
}

/// Number of paths from each vertex of `H` to the sink, all inside `H`.
fn counts_to_sink(ext: &SinkExtension, sink: &VertexId) -> BTreeMap<VertexId, BigInt> {
    fn visit(ext: &SinkExtension, x: &VertexId, sink: &VertexId, memo: &mut BTreeMap<VertexId, BigInt>) -> BigInt {
        if let Some(c) = memo.get(x) {
            return c.clone();
        }
        let total = if x == sink {
            BigInt::one()
        } else {
            let g = ext.graph();
            let next: Vec<VertexId> = g.out_edges(x).map(|e| g.range(e).expect("edge").clone()).collect();
            next.iter().map(|y| visit(ext, y, sink, memo)).sum()
        };
        memo.insert(x.clone(), total.clone());
        total
    }
    let mut memo = BTreeMap::new();
    for x in ext.added_vertices() {
        visit(ext, &x, sink, &mut memo);
    }
    memo
}

/// Paths from `w` to sink `index` whose first edge already leaves the base.
/// Listed in lexicographic edge order.
pub fn z_paths(ext: &SinkExtension, w: &VertexId, index: usize) -> Result<Vec<Path>, ExtensionError> {
    let sink = ext.sink(index)?.clone();
    if !ext.is_base_vertex(w) {
        return Err(ExtensionError::NotBaseVertex(w.clone()));
    }
    let g = ext.graph();
    let mut out = Vec::new();
    let mut stack: Vec<(VertexId, Vec<EdgeId>)> =
        boundary_edges_at(ext, w).into_iter().rev().map(|e| (g.range(&e).expect("edge").clone(), vec![e])).collect();
    while let Some((x, edges)) = stack.pop() {
        if x == sink {
            out.push(Path::new(g, Some(w), edges).expect("composable by construction"));
            continue;
        }
        for e in g.out_edges(&x).rev() {
            let mut next = edges.clone();
            next.push(e.clone());
            stack.push((g.range(e).expect("edge").clone(), next));
        }
    }
    Ok(out)
}

/// `W(w)` = number of paths from `w` to the sink that leave the base at once.
pub fn wojciech_vector(ext: &SinkExtension, index: usize) -> Result<VertexVector, ExtensionError> {
    let sink = ext.sink(index)?.clone();
    let counts = counts_to_sink(ext, &sink);
    let g = ext.graph();
    let mut out = VertexVector::new();
    for w in ext.base_vertices() {
        let total: BigInt = boundary_edges_at(ext, w).iter().map(|e| &counts[g.range(e).expect("edge")]).sum();
        if !total.is_zero() {
            out.set(w.clone(), total);
        }
    }
    Ok(out)
}

/// Wojciech vectors of every sink, in sink order.
pub fn wojciech_vectors(ext: &SinkExtension) -> Vec<VertexVector> {
    (0..ext.sink_count()).map(|i| wojciech_vector(ext, i).expect("index in range")).collect()
}

/// One path from each vertex of `H` to the single sink.
pub fn is_tree_extension(ext: &SinkExtension) -> Result<bool, ExtensionError> {
    if ext.sink_count() != 1 {
        return Err(ExtensionError::NotOneSink(ext.sink_count()));
    }
    Ok(is_forest_extension(ext))
}

/// Each vertex of `H` has exactly one path into the sinks.
pub fn is_forest_extension(ext: &SinkExtension) -> bool {
    let mut totals: BTreeMap<VertexId, BigInt> = BTreeMap::new();
    for s in ext.sinks() {
        for (x, c) in counts_to_sink(ext, s) {
            *totals.entry(x).or_default() += c;
        }
    }
    ext.added_vertices().iter().all(|x| totals.get(x).is_some_and(One::is_one))
}
