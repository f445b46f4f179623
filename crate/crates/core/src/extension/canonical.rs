use std::collections::{BTreeMap, BTreeSet};

use super::moves::attach_sink;
use super::{fresh_plain_vertex, ExtensionError, SinkExtension};
use crate::graph::Graph;
use crate::ids::VertexId;
use crate::vector::VertexVector;

/// The simple extension with exactly `ws[i](w)` edges from `w` to sink `i`.
/// Sinks are `v1, v2, …`; edges `<w>-<sink>:<k>`.
pub fn canonical_simple(g: &Graph, ws: &[VertexVector]) -> Result<SinkExtension, ExtensionError> {
    let mut graph = g.clone();
    let mut sinks = Vec::with_capacity(ws.len());
    for (index, w) in ws.iter().enumerate() {
        if w.is_zero() {
            return Err(ExtensionError::ZeroVector { index });
        }
        for v in w.support() {
            if !g.contains_vertex(v.as_str()) {
                return Err(ExtensionError::NotBaseVertex(v));
            }
        }
        let sink = fresh_plain_vertex(&graph, &format!("v{}", index + 1));
        graph.add_vertex(sink.clone())?;
        attach_sink(&mut graph, &sink, w)?;
        sinks.push(sink);
    }
    SinkExtension::new(graph, g.vertices().clone(), g.edges().map(|(e, _)| e.clone()).collect(), sinks)
}

/// Structural type of an added vertex: its sink position, if any, and the
/// multiset of child types.
type Signature = (Option<usize>, Vec<usize>);

/// Interned signatures of every added vertex, computed children first.
fn signatures(ext: &SinkExtension, order: &[VertexId]) -> BTreeMap<VertexId, usize> {
    let mut table: BTreeMap<Signature, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    let g = ext.graph();
    for x in order {
        let mut children: Vec<usize> = g.out_edges(x).map(|e| out[g.range(e).expect("edge")]).collect();
        children.sort_unstable();
        let sig = (ext.sinks().iter().position(|s| s == x), children);
        let next = table.len();
        let id = *table.entry(sig).or_insert(next);
        out.insert(x.clone(), id);
    }
    out
}

/// Added vertices ordered so every vertex follows all of its successors.
fn children_first(ext: &SinkExtension) -> Vec<VertexId> {
    let g = ext.graph();
    let mut done = BTreeSet::new();
    let mut order = Vec::new();
    for root in ext.added_vertices() {
        let mut stack = vec![(root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                if done.insert(x.clone()) {
                    order.push(x);
                }
                continue;
            }
            if done.contains(&x) {
                continue;
            }
            stack.push((x.clone(), true));
            for e in g.out_edges(&x) {
                let y = g.range(e).expect("edge");
                if !done.contains(y) {
                    stack.push((y.clone(), false));
                }
            }
        }
    }
    order
}

fn multiplicities(g: &Graph, x: &VertexId) -> BTreeMap<VertexId, usize> {
    let mut out = BTreeMap::new();
    for e in g.out_edges(x) {
        *out.entry(g.range(e).expect("edge").clone()).or_insert(0) += 1;
    }
    out
}

/// Isomorphism of extensions fixing the base graph pointwise and the sinks
/// by position; added vertices and edge names are free.
pub fn canonically_equal(a: &SinkExtension, b: &SinkExtension) -> bool {
    if a.base_graph() != b.base_graph()
        || a.sink_count() != b.sink_count()
        || a.graph().vertex_count() != b.graph().vertex_count()
        || a.graph().edge_count() != b.graph().edge_count()
    {
        return false;
    }
    let order_a = children_first(a);
    let order_b = children_first(b);
    let sig_a = signatures(a, &order_a);
    let sig_b = signatures_compatible(a, b, &order_a, &order_b, &sig_a);
    let Some(sig_b) = sig_b else {
        return false;
    };
    // Incoming multiplicities from each base vertex, per added vertex.
    let from_base = |ext: &SinkExtension| -> BTreeMap<VertexId, BTreeMap<VertexId, usize>> {
        let mut out: BTreeMap<VertexId, BTreeMap<VertexId, usize>> = BTreeMap::new();
        for w in ext.base_vertices() {
            for (y, k) in multiplicities(ext.graph(), w) {
                if !ext.is_base_vertex(&y) {
                    out.entry(y).or_default().insert(w.clone(), k);
                }
            }
        }
        out
    };
    let base_a = from_base(a);
    let base_b = from_base(b);
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    search(a, b, &order_a, 0, &sig_a, &sig_b, &base_a, &base_b, &mut map, &mut used)
}

/// Signatures of `b` expressed in `a`'s interning table; `None` when some
/// signature of `b` has no counterpart or the class sizes differ.
fn signatures_compatible(
    a: &SinkExtension,
    b: &SinkExtension,
    order_a: &[VertexId],
    order_b: &[VertexId],
    sig_a: &BTreeMap<VertexId, usize>,
) -> Option<BTreeMap<VertexId, usize>> {
    // Rebuild a shared table by replaying a's construction first.
    let mut table: BTreeMap<Signature, usize> = BTreeMap::new();
    let ga = a.graph();
    for x in order_a {
        let mut children: Vec<usize> = ga.out_edges(x).map(|e| sig_a[ga.range(e).expect("edge")]).collect();
        children.sort_unstable();
        let sig = (a.sinks().iter().position(|s| s == x), children);
        table.entry(sig).or_insert(sig_a[x]);
    }
    let gb = b.graph();
    let mut out = BTreeMap::new();
    for x in order_b {
        let mut children: Vec<usize> = gb.out_edges(x).map(|e| out[gb.range(e).expect("edge")]).collect();
        children.sort_unstable();
        let sig = (b.sinks().iter().position(|s| s == x), children);
        out.insert(x.clone(), *table.get(&sig)?);
    }
    let mut count_a: BTreeMap<usize, usize> = BTreeMap::new();
    let mut count_b: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sig_a.values() {
        *count_a.entry(*s).or_default() += 1;
    }
    for s in out.values() {
        *count_b.entry(*s).or_default() += 1;
    }
    (count_a == count_b).then_some(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &SinkExtension,
    b: &SinkExtension,
    order: &[VertexId],
    pos: usize,
    sig_a: &BTreeMap<VertexId, usize>,
    sig_b: &BTreeMap<VertexId, usize>,
    base_a: &BTreeMap<VertexId, BTreeMap<VertexId, usize>>,
    base_b: &BTreeMap<VertexId, BTreeMap<VertexId, usize>>,
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeSet<VertexId>,
) -> bool {
    let Some(x) = order.get(pos) else {
        return true;
    };
    let out_x: BTreeMap<VertexId, usize> =
        multiplicities(a.graph(), x).into_iter().map(|(y, k)| (map[&y].clone(), k)).collect();
    let empty = BTreeMap::new();
    let in_x = base_a.get(x).unwrap_or(&empty);
    let sink_pos = a.sinks().iter().position(|s| s == x);
    let candidates: Vec<VertexId> =
        sig_b.iter().filter(|(y, s)| **s == sig_a[x] && !used.contains(*y)).map(|(y, _)| y.clone()).collect();
    for y in candidates {
        if b.sinks().iter().position(|s| *s == y) != sink_pos
            || multiplicities(b.graph(), &y) != out_x
            || base_b.get(&y).unwrap_or(&empty) != in_x
        {
            continue;
        }
        map.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if search(a, b, order, pos + 1, sig_a, sig_b, base_a, base_b, map, used) {
            return true;
        }
        map.remove(x);
        used.remove(&y);
    }
    false
}
