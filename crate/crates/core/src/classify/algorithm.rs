use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::balance::{shift_gap, Target};
use super::{closure_of_sink, non_reaching, same_base, same_closure, wojciech_gap, ClassifyError, Mode, Verdict};
use crate::certificate::{base_hash, Certificate};
use crate::extension::{canonical_simple, simplify, wojciech_vector, Move, MoveTrace, SinkExtension};
use crate::graph::{Graph, VertexSet};
use crate::vector::VertexVector;

fn require_essential(exts: [&SinkExtension; 2]) -> Result<(), ClassifyError> {
    for (i, ext) in exts.into_iter().enumerate() {
        for k in 0..ext.sink_count() {
            if let Some(vertex) = non_reaching(ext, k) {
                return Err(ClassifyError::NotEssential { which: i + 1, sink: ext.sinks()[k].clone(), vertex });
            }
        }
    }
    Ok(())
}

fn require_no_sources(g: &Graph) -> Result<(), ClassifyError> {
    match g.sources().into_iter().next() {
        Some(v) => Err(ClassifyError::SourceInBase(v)),
        None => Ok(()),
    }
}

fn require_acyclic(g: &Graph) -> Result<(), ClassifyError> {
    match g.vertices().iter().find(|v| g.on_cycle(v)) {
        Some(v) => Err(ClassifyError::NotAcyclic(v.clone())),
        None => Ok(()),
    }
}

/// Mode actually run and the support constraint on the candidate.
fn choose_mode(
    g: &Graph,
    first: &SinkExtension,
    second: &SinkExtension,
    mode: Mode,
) -> Result<(Mode, Option<VertexSet>), ClassifyError> {
    let essential = || require_essential([first, second]).and_then(|_| require_no_sources(g));
    let closure = || -> Result<VertexSet, ClassifyError> {
        if same_closure(first, second)? {
            Ok(closure_of_sink(first, 0)?)
        } else {
            Err(ClassifyError::ClosureMismatch {
                first: closure_of_sink(first, 0)?,
                second: closure_of_sink(second, 0)?,
            })
        }
    };
    match mode {
        Mode::Essential => essential().map(|_| (Mode::Essential, None)),
        Mode::Af => require_acyclic(g).map(|_| (Mode::Af, None)),
        Mode::Closure => closure().map(|c| (Mode::Closure, Some(c))),
        Mode::NSink => require_essential([first, second]).map(|_| (Mode::Essential, None)),
        Mode::Auto => {
            if require_acyclic(g).is_ok() {
                return Ok((Mode::Af, None));
            }
            let why_not_essential = match essential() {
                Ok(()) => return Ok((Mode::Essential, None)),
                Err(e) => e,
            };
            match closure() {
                Ok(c) => Ok((Mode::Closure, Some(c))),
                Err(e) => Err(ClassifyError::NoModeApplies(format!("{why_not_essential}; {e}"))),
            }
        }
    }
}

/// Two 1-sink extensions of the same base graph, reduced to a common simple
/// extension by outsplittings and simplification.
pub fn classify_1sink(first: &SinkExtension, second: &SinkExtension, mode: Mode) -> Result<Certificate, ClassifyError> {
    let g = same_base(first, second)?;
    for ext in [first, second] {
        if ext.sink_count() != 1 {
            return Err(ClassifyError::NotOneSink(ext.sink_count()));
        }
    }
    let (applied, support) = choose_mode(&g, first, second, mode)?;
    let mut e1 = simplify(first);
    let mut e2 = simplify(second);
    let mut t1 = MoveTrace::from_iter([Move::Simplify]);
    let mut t2 = MoveTrace::from_iter([Move::Simplify]);
    equalise(&g, 0, support.as_ref(), &mut e1, &mut e2, &mut t1, &mut t2)?;
    finish(&g, applied, e1, e2, t1, t2)
}

/// Extensions with the same number of sinks, equalised one sink at a time.
pub fn classify_nsink(first: &SinkExtension, second: &SinkExtension) -> Result<Certificate, ClassifyError> {
    let g = same_base(first, second)?;
    if first.sink_count() != second.sink_count() {
        return Err(ClassifyError::SinkCountMismatch { first: first.sink_count(), second: second.sink_count() });
    }
    if first.sink_count() == 1 {
        return classify_1sink(first, second, Mode::Essential);
    }
    require_essential([first, second])?;
    let mut e1 = simplify(first);
    let mut e2 = simplify(second);
    let mut t1 = MoveTrace::from_iter([Move::Simplify]);
    let mut t2 = MoveTrace::from_iter([Move::Simplify]);
    for k in 0..first.sink_count() {
        equalise(&g, k, None, &mut e1, &mut e2, &mut t1, &mut t2)
            .map_err(|err| ClassifyError::AtSink { index: k, source: Box::new(err) })?;
    }
    finish(&g, Mode::NSink, e1, e2, t1, t2)
}

fn finish(
    g: &Graph,
    mode: Mode,
    e1: SinkExtension,
    e2: SinkExtension,
    mut t1: MoveTrace,
    mut t2: MoveTrace,
) -> Result<Certificate, ClassifyError> {
    let s1 = simplify(&e1);
    let s2 = simplify(&e2);
    let ws: Vec<VertexVector> = (0..s1.sink_count()).map(|k| wojciech_vector(&s1, k)).collect::<Result<_, _>>()?;
    for (k, w) in ws.iter().enumerate() {
        if *w != wojciech_vector(&s2, k)? {
            return Err(ClassifyError::Internal(format!("Wojciech vectors of sink {k} still differ")));
        }
    }
    t1.push(Move::Simplify);
    t2.push(Move::Simplify);
    let target = canonical_simple(g, &ws)?;
    Ok(Certificate { mode, base_hash: base_hash(g), trace1: t1, trace2: t2, target })
}

/// Outsplittings toward sink `k` until both Wojciech vectors of that sink agree.
fn equalise(
    g: &Graph,
    k: usize,
    support: Option<&VertexSet>,
    e1: &mut SinkExtension,
    e2: &mut SinkExtension,
    t1: &mut MoveTrace,
    t2: &mut MoveTrace,
) -> Result<(), ClassifyError> {
    let order: Vec<_> = g.vertices().iter().collect();
    let mut n = match wojciech_gap(e1, e2, k, support)? {
        Verdict::CandidateFound(n) => VertexVector::from_dense(order.iter().copied(), &n),
        Verdict::Obstructed(reason) | Verdict::Inconclusive(reason) => return Err(ClassifyError::NoCandidate(reason)),
    };
    while !n.is_zero() {
        let supp = n.support();
        let d = g.induced(&supp);
        let (target_vertex, cycle, a) = match d.sinks().into_iter().next() {
            Some(w) => {
                if g.in_degree(&w) == 0 {
                    return Err(ClassifyError::SourceInBase(w));
                }
                let a = n.get(&w);
                (w, None, a)
            }
            None => {
                let gamma = d
                    .shortest_cycle_within(&supp)
                    .ok_or_else(|| ClassifyError::Internal("sinkless support without a cycle".into()))?;
                let w = gamma.source().clone();
                let a = n.get(&w);
                (w, Some(gamma), a)
            }
        };
        let steps = (-&a).to_i64().ok_or_else(|| ClassifyError::Internal(format!("coefficient {a} too large")))?;
        let outcome = match &cycle {
            None => shift_gap(e1, e2, k, Target::Vertex(&target_vertex), steps)?,
            Some(gamma) => shift_gap(e1, e2, k, Target::Cycle(gamma), steps)?,
        };
        *e1 = outcome.first;
        *e2 = outcome.second;
        outcome.moves_first.into_iter().for_each(|m| t1.push(m));
        outcome.moves_second.into_iter().for_each(|m| t2.push(m));
        match &cycle {
            None => n.set(target_vertex, BigInt::zero()),
            Some(gamma) => {
                for e in gamma.edges() {
                    n.add_to(g.range(e)?, &-&a);
                }
            }
        }
        if !n.support().is_subset(&supp) || n.support().len() >= supp.len() {
            return Err(ClassifyError::Internal("candidate support did not shrink".into()));
        }
    }
    Ok(())
}
