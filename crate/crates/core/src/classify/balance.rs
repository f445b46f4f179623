use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{apply_a_minus_i, fmt_set, ClassifyError};
use crate::extension::{is_forest_extension, outsplit, outsplit_along_path, wojciech_vector, Move, SinkExtension};
use crate::graph::{find_path, Graph, Path, VertexSet};
use crate::ids::{EdgeId, VertexId};
use crate::vector::VertexVector;

/// Result of [`balance_loop`]: both extensions after the emitted moves.
#[derive(Debug, Clone)]
pub struct BalanceOutcome {
    pub first: SinkExtension,
    pub second: SinkExtension,
    pub moves_first: Vec<Move>,
    pub moves_second: Vec<Move>,
}

/// Boundary edges at `w` leading to sink `k`, sorted.
pub(crate) fn focus_edges_at(ext: &SinkExtension, k: usize, w: &VertexId) -> Vec<EdgeId> {
    let g = ext.graph();
    let feeds = g.ancestors([&ext.sinks()[k]]);
    g.out_edges(w)
        .filter(|e| {
            let r = g.range(e).expect("edge");
            !ext.is_base_vertex(r) && feeds.contains(r)
        })
        .cloned()
        .collect()
}

/// Base vertices with a boundary edge leading to sink `k`.
pub(crate) fn focus_boundary(ext: &SinkExtension, k: usize) -> VertexSet {
    ext.base_vertices().iter().filter(|w| !focus_edges_at(ext, k, w).is_empty()).cloned().collect()
}

/// `Σⱼ (A−I)δ_{r(γⱼ)}`.
pub(crate) fn path_change(g: &Graph, p: &Path) -> VertexVector {
    let mut visits = VertexVector::new();
    for e in p.edges() {
        visits.add_to(g.range(e).expect("edge"), &BigInt::from(1));
    }
    apply_a_minus_i(g, &visits)
}

struct Side {
    ext: SinkExtension,
    moves: Vec<Move>,
}

impl Side {
    fn along(&mut self, k: usize, alpha: &Path) -> Result<(), ClassifyError> {
        let e = self.edge_at(k, alpha.range())?;
        let (next, _) = outsplit_along_path(&self.ext, &e, alpha.edges())?;
        self.ext = next;
        self.moves.push(Move::OutsplitAlongPath(e, alpha.edges().to_vec()));
        Ok(())
    }

    fn outsplit_at(&mut self, k: usize, w: &VertexId) -> Result<(), ClassifyError> {
        let e = self.edge_at(k, w)?;
        let (next, _) = outsplit(&self.ext, &e)?;
        self.ext = next;
        self.moves.push(Move::Outsplit(e));
        Ok(())
    }

    fn edge_at(&self, k: usize, w: &VertexId) -> Result<EdgeId, ClassifyError> {
        focus_edges_at(&self.ext, k, w)
            .into_iter()
            .next()
            .ok_or_else(|| ClassifyError::Internal(format!("no boundary edge at {w}")))
    }
}

/// What a gap shift is measured along: `(A−I)δ_w` for a vertex, or
/// `Σⱼ (A−I)δ_{r(γⱼ)}` for a cycle.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Target<'a> {
    Vertex(&'a VertexId),
    Cycle(&'a Path),
}

impl Target<'_> {
    fn anchor(&self, g: &Graph) -> VertexSet {
        match self {
            Target::Vertex(w) => VertexSet::from([(*w).clone()]),
            Target::Cycle(p) => p.vertices(g).into_iter().collect(),
        }
    }

    fn change(&self, g: &Graph) -> VertexVector {
        match self {
            Target::Vertex(w) => super::delta_image(g, w),
            Target::Cycle(p) => path_change(g, p),
        }
    }
}

/// `γ` rotated to start and end at `t`.
fn rotate_to(g: &Graph, gamma: &Path, t: &VertexId) -> Path {
    let k = gamma.edges().iter().position(|e| g.source(e).expect("edge") == t).expect("vertex lies on the cycle");
    gamma.rotate(g, k)
}

/// Shortest path from some vertex of `from` into `into`; ties go to the
/// least starting vertex.
fn path_from_set(g: &Graph, from: &VertexSet, into: &VertexSet) -> Option<Path> {
    let mut best: Option<Path> = None;
    for t in from {
        if let Some(p) = find_path(g, t, into).expect("known vertex") {
            if best.as_ref().is_none_or(|b| p.len() < b.len()) {
                best = Some(p);
            }
        }
    }
    best
}

fn check_reaches(g: &Graph, from: &VertexSet, into: &VertexSet, what: &str) -> Result<(), ClassifyError> {
    let reach = g.ancestors(into);
    match from.iter().find(|v| !reach.contains(*v)) {
        None => Ok(()),
        Some(v) => Err(ClassifyError::BalancePrecondition(format!("{what}: {v} does not reach {}", fmt_set(into)))),
    }
}

/// Boundary outsplittings on both 1-sink tree extensions after which the
/// Wojciech gap has moved by `a·Σⱼ (A−I)δ_{r(γⱼ)}`.
pub fn balance_loop(
    first: &SinkExtension,
    second: &SinkExtension,
    gamma: &Path,
    a: i64,
) -> Result<BalanceOutcome, ClassifyError> {
    for ext in [first, second] {
        if ext.sink_count() != 1 {
            return Err(ClassifyError::NotOneSink(ext.sink_count()));
        }
    }
    let g = super::same_base(first, second)?;
    if gamma.is_empty() || gamma.source() != gamma.range() || gamma.edges().iter().any(|e| !first.is_base_edge(e)) {
        return Err(ClassifyError::BalancePrecondition(format!("{gamma} is not a cycle in the base graph")));
    }
    let cycle: VertexSet = gamma.vertices(&g).into_iter().collect();
    let b1 = focus_boundary(first, 0);
    let b2 = focus_boundary(second, 0);
    check_reaches(&g, &cycle, &b1, "cycle ≥ B1")?;
    check_reaches(&g, &b1, &b2, "B1 ≥ B2")?;
    check_reaches(&g, &b2, &b1, "B2 ≥ B1")?;
    shift_gap(first, second, 0, Target::Cycle(gamma), a)
}

/// Outsplittings at boundary edges toward sink `k` of two forest extensions
/// moving `W(first; k) − W(second; k)` by `a` times the change of `target`.
/// The Wojciech vectors of the other sinks are untouched.
pub(crate) fn shift_gap(
    first: &SinkExtension,
    second: &SinkExtension,
    k: usize,
    target: Target<'_>,
    a: i64,
) -> Result<BalanceOutcome, ClassifyError> {
    let g = super::same_base(first, second)?;
    for ext in [first, second] {
        if !is_forest_extension(ext) {
            return Err(ClassifyError::BalancePrecondition("not a tree extension".into()));
        }
    }
    let gap_before = &wojciech_vector(first, k)? - &wojciech_vector(second, k)?;
    let mut s1 = Side { ext: first.clone(), moves: Vec::new() };
    let mut s2 = Side { ext: second.clone(), moves: Vec::new() };
    if a != 0 {
        let (side_a, side_b) = if a > 0 { (&mut s1, &mut s2) } else { (&mut s2, &mut s1) };
        let times = a.unsigned_abs() as usize;
        match target {
            Target::Vertex(_) => {
                for _ in 0..times {
                    shift_once(&g, k, side_a, side_b, target, 1)?;
                }
            }
            Target::Cycle(_) => shift_once(&g, k, side_a, side_b, target, times)?,
        }
    }
    let gap_after = &wojciech_vector(&s1.ext, k)? - &wojciech_vector(&s2.ext, k)?;
    let expected = &gap_before + &target.change(&g).scale(&BigInt::from(a));
    if gap_after != expected {
        return Err(ClassifyError::Internal(format!("outsplitting moved the gap to {gap_after}, expected {expected}")));
    }
    Ok(BalanceOutcome { first: s1.ext, second: s2.ext, moves_first: s1.moves, moves_second: s2.moves })
}

fn shift_once(
    g: &Graph,
    k: usize,
    side_a: &mut Side,
    side_b: &mut Side,
    target: Target<'_>,
    times: usize,
) -> Result<(), ClassifyError> {
    let anchor = target.anchor(g);
    let limit = 2 * g.vertex_count() + 2;
    for _ in 0..=limit {
        let ba = focus_boundary(&side_a.ext, k);
        let bb = focus_boundary(&side_b.ext, k);
        if let Some(t) = anchor.intersection(&ba).next() {
            return match target {
                Target::Vertex(w) => side_a.outsplit_at(k, w),
                Target::Cycle(p) => side_a.along(k, &rotate_to(g, p, t).power(times)),
            };
        }
        let common: VertexSet = ba.intersection(&bb).cloned().collect();
        if let Some(rho) = path_from_set(g, &anchor, &common) {
            return match target {
                Target::Vertex(w) => {
                    side_a.along(k, &rho)?;
                    side_b.along(k, &rho)?;
                    side_a.outsplit_at(k, w)
                }
                Target::Cycle(p) => {
                    let lead = rotate_to(g, p, rho.source()).power(times);
                    side_a.along(k, &lead.concat(&rho))?;
                    side_b.along(k, &rho)
                }
            };
        }
        let mu = closed_walk(g, &anchor, &ba, &bb)?;
        let on_mu: VertexSet = mu.vertices(g).into_iter().collect();
        let xa = on_mu.intersection(&ba).next().expect("walk visits both boundaries").clone();
        let xb = on_mu.intersection(&bb).next().expect("walk visits both boundaries").clone();
        side_a.along(k, &rotate_to(g, &mu, &xa))?;
        side_b.along(k, &rotate_to(g, &mu, &xb))?;
    }
    Err(ClassifyError::Internal("boundary outsplitting did not settle".into()))
}

/// Alternate shortest hops `B_A → B_B → B_A → …` starting from the first
/// `B_A` vertex reached from `anchor`, until a vertex repeats; returns
/// the closed walk between the two visits.
fn closed_walk(g: &Graph, anchor: &VertexSet, ba: &VertexSet, bb: &VertexSet) -> Result<Path, ClassifyError> {
    let lead = path_from_set(g, anchor, ba)
        .ok_or_else(|| ClassifyError::BalancePrecondition("no path to the boundary".into()))?;
    let mut current = lead.range().clone();
    let mut stops: Vec<VertexId> = vec![current.clone()];
    let mut legs: Vec<Path> = Vec::new();
    let mut seen: BTreeSet<VertexId> = BTreeSet::from([current.clone()]);
    for step in 0.. {
        let target = if step % 2 == 0 { bb } else { ba };
        let leg = find_path(g, &current, target)?.ok_or_else(|| {
            ClassifyError::BalancePrecondition(format!("{current} does not reach {}", fmt_set(target)))
        })?;
        if leg.is_empty() {
            return Err(ClassifyError::Internal(format!("{current} lies on both boundaries")));
        }
        current = leg.range().clone();
        legs.push(leg);
        if !seen.insert(current.clone()) {
            let start = stops.iter().position(|v| *v == current).expect("seen vertex was a stop");
            let mut walk = legs[start].clone();
            for leg in &legs[start + 1..] {
                walk = walk.concat(leg);
            }
            return Ok(walk);
        }
        stops.push(current.clone());
    }
    unreachable!("the walk visits finitely many vertices")
}
