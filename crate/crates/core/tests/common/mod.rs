#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinkext_core::classify::apply_a_minus_i;
use sinkext_core::extension::{
    boundary_edges_at, canonical_simple, outsplit, outsplit_along_path, simplify, SinkExtension,
};
use sinkext_core::graph::Graph;
use sinkext_core::ids::{e, v, EdgeId, VertexId};
use sinkext_core::vector::VertexVector;

/// Base seed for the randomised suites; `SINKEXT_SEED` overrides it.
pub fn seed() -> u64 {
    std::env::var("SINKEXT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_917)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn base_names(n: usize) -> Vec<VertexId> {
    (1..=n).map(|i| v(&format!("w{i}"))).collect()
}

/// Random multigraph on `w1..wn` with multiplicities up to `max_mult`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, max_mult: usize) -> Graph {
    let names = base_names(n);
    let mut g = Graph::new();
    for w in &names {
        g.add_vertex(w.clone()).unwrap();
    }
    let mut next = 0;
    for a in &names {
        for b in &names {
            if rng.gen_bool(density) {
                for _ in 0..rng.gen_range(1..=max_mult) {
                    next += 1;
                    g.add_edge(e(&format!("g{next}")), a.clone(), b.clone()).unwrap();
                }
            }
        }
    }
    g
}

/// Random base with at least one non-sink vertex.
pub fn random_base(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(rng, n, 0.3, 3);
        if g.sinks().len() < n {
            return g;
        }
    }
}

/// Random strongly connected base: a Hamiltonian cycle plus extra edges.
pub fn strongly_connected_base(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut g = random_graph(rng, n, 0.2, 2);
    let names = base_names(n);
    for i in 0..n {
        g.add_edge(e(&format!("c{}", i + 1)), names[i].clone(), names[(i + 1) % n].clone()).unwrap();
    }
    g
}

/// Random extension of `g` with `sinks` sinks. With `tree`, every added
/// non-sink vertex has exactly one out-edge, so the result is a forest
/// extension.
pub fn random_extension(rng: &mut ChaCha8Rng, g: &Graph, sinks: usize, tree: bool) -> SinkExtension {
    let emitters: Vec<VertexId> = g.vertices().iter().filter(|w| g.out_degree(w) > 0).cloned().collect();
    assert!(!emitters.is_empty(), "base needs a vertex that is not a sink");
    let internal = rng.gen_range(0..=4);
    let xs: Vec<VertexId> = (1..=internal).map(|i| v(&format!("x{i}"))).collect();
    let vs: Vec<VertexId> = (1..=sinks).map(|i| v(&format!("v{i}"))).collect();
    let mut graph = g.clone();
    for x in xs.iter().chain(&vs) {
        graph.add_vertex(x.clone()).unwrap();
    }
    let mut next = 0;
    let mut fresh = |graph: &mut Graph, a: &VertexId, b: &VertexId| {
        next += 1;
        graph.add_edge(e(&format!("h{next}")), a.clone(), b.clone()).unwrap();
    };
    for (i, x) in xs.iter().enumerate() {
        let later: Vec<&VertexId> = xs[i + 1..].iter().chain(&vs).collect();
        let outs = if tree { 1 } else { rng.gen_range(1..=2) };
        for _ in 0..outs {
            let y = (*later.choose(rng).unwrap()).clone();
            fresh(&mut graph, x, &y);
        }
    }
    let hs: Vec<VertexId> = xs.iter().chain(&vs).cloned().collect();
    for h in &hs {
        if graph.in_degree(h) == 0 {
            let w = emitters.choose(rng).unwrap().clone();
            fresh(&mut graph, &w, h);
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let w = emitters.choose(rng).unwrap().clone();
        let h = hs.choose(rng).unwrap().clone();
        fresh(&mut graph, &w, &h);
    }
    SinkExtension::new(graph, g.vertices().clone(), g.edges().map(|(e, _)| e.clone()).collect(), vs)
        .expect("generated extensions are valid")
}

/// Boundary edges whose source is not a source of the base.
pub fn admissible_edges(ext: &SinkExtension) -> Vec<EdgeId> {
    let g = ext.graph();
    ext.base_vertices()
        .iter()
        .filter(|w| g.in_edges(w).any(|f| ext.is_base_edge(f)))
        .flat_map(|w| boundary_edges_at(ext, w))
        .collect()
}

/// Random base path of length `1..=max_len` ending at `target`, if any
/// base edge enters it.
pub fn random_path_into(
    rng: &mut ChaCha8Rng,
    ext: &SinkExtension,
    target: &VertexId,
    max_len: usize,
) -> Option<Vec<EdgeId>> {
    let g = ext.graph();
    let len = rng.gen_range(1..=max_len);
    let mut edges = Vec::new();
    let mut at = target.clone();
    for _ in 0..len {
        let ins: Vec<&EdgeId> = g.in_edges(&at).filter(|f| ext.is_base_edge(f)).collect();
        let Some(f) = ins.choose(rng) else { break };
        edges.push((*f).clone());
        at = g.source(f).unwrap().clone();
    }
    edges.reverse();
    (!edges.is_empty()).then_some(edges)
}

/// Applies up to `steps` random admissible outsplittings or simplifications.
pub fn random_moves(rng: &mut ChaCha8Rng, ext: &SinkExtension, steps: usize) -> SinkExtension {
    let mut current = ext.clone();
    for _ in 0..steps {
        match rng.gen_range(0..5) {
            0 => current = simplify(&current),
            1 => {
                let edges = admissible_edges(&current);
                let Some(edge) = edges.choose(rng) else { continue };
                let s = current.graph().source(edge).unwrap().clone();
                if let Some(alpha) = random_path_into(rng, &current, &s, 3) {
                    current = outsplit_along_path(&current, edge, &alpha).unwrap().0;
                }
            }
            _ => {
                let edges = admissible_edges(&current);
                let Some(edge) = edges.choose(rng) else { continue };
                current = outsplit(&current, edge).unwrap().0;
            }
        }
    }
    current
}

/// Random nonnegative nonzero vector on the base vertices.
pub fn random_weights(rng: &mut ChaCha8Rng, g: &Graph, max: i64) -> VertexVector {
    let emitters: Vec<&VertexId> = g.vertices().iter().filter(|w| g.out_degree(w) > 0).collect();
    let mut w = VertexVector::new();
    for x in g.vertices() {
        if g.out_degree(x) > 0 && rng.gen_bool(0.6) {
            w.set(x.clone(), BigInt::from(rng.gen_range(0..=max)));
        }
    }
    if w.is_zero() {
        w.set((*emitters.choose(rng).unwrap()).clone(), BigInt::from(1));
    }
    w
}

/// `w + (A−I)n` for a random small `n`, retried until nonnegative and nonzero.
pub fn shifted_weights(rng: &mut ChaCha8Rng, g: &Graph, w: &VertexVector) -> VertexVector {
    for _ in 0..64 {
        let mut n = VertexVector::new();
        for x in g.vertices() {
            n.set(x.clone(), BigInt::from(rng.gen_range(-1..=1)));
        }
        let out = w + &apply_a_minus_i(g, &n);
        let sinks = g.sinks();
        if out.is_nonnegative() && !out.is_zero() && out.support().is_disjoint(&sinks) {
            return out;
        }
    }
    w.clone()
}

/// The simple extension with the given Wojciech vectors.
pub fn simple(g: &Graph, ws: &[VertexVector]) -> SinkExtension {
    canonical_simple(g, ws).unwrap()
}
