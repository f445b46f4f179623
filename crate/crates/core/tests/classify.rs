mod common;

use num_bigint::BigInt;
use rand::Rng;
use sinkext_core::certificate::{parse_certificate, verify_certificate, Rejection};
use sinkext_core::classify::{
    a_minus_i, apply_a_minus_i, balance_loop, classify_1sink, classify_nsink, closure_of_sink, embedding_obstruction,
    is_essential, k0_presentation, prim_skeleton, same_closure, wojciech_gap, ClassifyError, Mode, Verdict,
};
use sinkext_core::extension::{apply_move, wojciech_vector, MoveTrace, SinkExtension};
use sinkext_core::fixtures::load;
use sinkext_core::graph::{Graph, Path, VertexSet};
use sinkext_core::ids::{e, v};
use sinkext_core::lattice::IntVector;
use sinkext_core::vector::VertexVector;

fn fixture(name: &str) -> SinkExtension {
    load(name).unwrap()
}

fn intro_cycle(g: &Graph) -> Path {
    Path::new(g, None, vec![e("c"), e("d")]).unwrap()
}

fn gap(a: &SinkExtension, b: &SinkExtension) -> VertexVector {
    &wojciech_vector(a, 0).unwrap() - &wojciech_vector(b, 0).unwrap()
}

/// `w + (A−I)n` with `n` drawn from `[-r, r]`, nonnegative, nonzero and off the sinks.
fn far_shift(rng: &mut impl Rng, g: &Graph, w: &VertexVector, r: i64) -> Option<VertexVector> {
    for _ in 0..200 {
        let mut n = VertexVector::new();
        for x in g.vertices() {
            n.set(x.clone(), BigInt::from(rng.gen_range(-r..=r)));
        }
        let out = w + &apply_a_minus_i(g, &n);
        if out.is_nonnegative() && !out.is_zero() && out.support().is_disjoint(&g.sinks()) {
            return Some(out);
        }
    }
    None
}

#[test]
fn balance_with_zero_coefficient_is_identity() {
    let e1 = fixture("E1_intro");
    let e2 = fixture("E2_intro");
    let out = balance_loop(&e1, &e2, &intro_cycle(&e1.base_graph()), 0).unwrap();
    assert_eq!(out.first, e1);
    assert_eq!(out.second, e2);
    assert!(out.moves_first.is_empty() && out.moves_second.is_empty());
}

#[test]
fn balance_on_intro_cycle_moves_the_gap_and_replays() {
    let e1 = fixture("E1_intro");
    let e2 = fixture("E2_intro");
    let g = e1.base_graph();
    for a in [1, -1, 2, -3] {
        let out = balance_loop(&e1, &e2, &intro_cycle(&g), a).unwrap();
        let mut n = VertexVector::new();
        n.set(v("w2"), BigInt::from(a));
        n.set(v("w3"), BigInt::from(a));
        assert_eq!(gap(&out.first, &out.second), &gap(&e1, &e2) + &apply_a_minus_i(&g, &n), "a = {a}");
        let replay = |start: &SinkExtension, moves: &[_]| {
            let trace: MoveTrace = moves.iter().cloned().collect();
            sinkext_core::extension::apply_trace(start, &trace).unwrap()
        };
        assert_eq!(replay(&e1, &out.moves_first), out.first);
        assert_eq!(replay(&e2, &out.moves_second), out.second);
    }
}

#[test]
fn balance_reports_reachability_witnesses() {
    let e1 = fixture("E1_ex26");
    let e2 = fixture("E2_ex26");
    let g = e1.base_graph();
    let loop_at_w1 = Path::new(&g, None, vec![e("a1")]).unwrap();
    let err = balance_loop(&e1, &e2, &loop_at_w1, 1).unwrap_err();
    assert_eq!(err.to_string(), "loop balancing precondition failed: B2 ≥ B1: w2 does not reach {w1}");
    let edgeless = SinkExtension::from_base(&g);
    assert!(matches!(balance_loop(&e1, &edgeless, &loop_at_w1, 1), Err(ClassifyError::NotOneSink(0))));
    let open = Path::new(&g, None, vec![e("b")]).unwrap();
    assert!(matches!(balance_loop(&e1, &e2, &open, 1), Err(ClassifyError::BalancePrecondition(_))));
}

#[test]
fn gap_examples() {
    assert_eq!(
        wojciech_gap(&fixture("E1_ex26"), &fixture("E2_ex26"), 0, None).unwrap(),
        Verdict::CandidateFound(IntVector::from_i64s(&[2, -1]))
    );
    let v = wojciech_gap(&fixture("o3_w1"), &fixture("o3_w2"), 0, None).unwrap();
    assert!(matches!(v, Verdict::Obstructed(_)));
    assert!(matches!(
        wojciech_gap(&fixture("E1_intro"), &fixture("E1_ex26"), 0, None),
        Err(ClassifyError::BaseMismatch)
    ));
}

#[test]
fn obstruction_reports() {
    let ex26 = embedding_obstruction(&fixture("E1_ex26"), &fixture("E2_ex26")).unwrap();
    assert_eq!(ex26.verdict, Verdict::CandidateFound(IntVector::from_i64s(&[2, -1])));
    let intro = embedding_obstruction(&fixture("E1_intro"), &fixture("E2_intro")).unwrap();
    assert_eq!(intro.verdict, Verdict::CandidateFound(IntVector::from_i64s(&[0, 0, 1])));
    assert!(!intro.hypothesis_holds);
    assert_eq!(intro.kernel, vec![IntVector::from_i64s(&[0, 1, 1])]);
}

#[test]
fn k0_examples() {
    assert_eq!(k0_presentation(&fixture("E2_ex26")).unwrap().to_string(), "Z");
    assert_eq!(k0_presentation(&fixture("o3_w1")).unwrap().to_string(), "Z");
    assert!(matches!(
        k0_presentation(&SinkExtension::from_base(&fixture("G_o3").base_graph())),
        Err(ClassifyError::NotOneSink(0))
    ));
}

#[test]
fn prim_skeleton_of_ex26() {
    let p = prim_skeleton(&fixture("E2_ex26"));
    let s = |names: &[&str]| names.iter().map(|n| v(n)).collect::<VertexSet>();
    assert_eq!(p.tails, vec![s(&["w1"]), s(&["w1", "w2"])]);
    assert_eq!(p.sink_tails[&v("v2")], s(&["v2", "w1", "w2"]));
    assert_eq!(prim_skeleton(&fixture("E1_ex26")).sink_tails[&v("v1")], s(&["v1", "w1"]));
}

#[test]
fn auto_mode_reports_what_applied() {
    let cert = classify_1sink(&fixture("E1_intro"), &fixture("E2_intro"), Mode::Auto).unwrap();
    assert_eq!(cert.mode, Mode::Essential);
    let err = classify_1sink(&fixture("E1_ex26"), &fixture("E2_ex26"), Mode::Auto).unwrap_err();
    assert!(matches!(err, ClassifyError::NoModeApplies(_)));
    let err = classify_1sink(&fixture("E1_ex26"), &fixture("E2_ex26"), Mode::Af).unwrap_err();
    assert!(matches!(err, ClassifyError::NotAcyclic(_)));
}

#[test]
fn certificate_tampering_is_detected() {
    let e1 = fixture("E1_intro");
    let e2 = fixture("E2_intro");
    let cert = classify_1sink(&e1, &e2, Mode::Essential).unwrap();
    assert!(matches!(verify_certificate(&e2, &e1, &cert), Err(Rejection::WojciechMismatch { .. })));
    let mut short = cert.clone();
    short.trace2.truncate(1);
    assert!(verify_certificate(&e1, &e2, &short).is_err());
    let mut rehashed = cert.clone();
    rehashed.base_hash = "0".repeat(64);
    assert!(matches!(verify_certificate(&e1, &e2, &rehashed), Err(Rejection::BaseHash { .. })));
    let mut bad = cert.clone();
    bad.trace1 = [sinkext_core::extension::Move::Outsplit(e("nope"))].into_iter().collect();
    assert!(matches!(verify_certificate(&e1, &e2, &bad), Err(Rejection::Replay { .. })));
    assert_eq!(parse_certificate(&cert.serialize()).unwrap(), cert);
}

#[test]
fn random_essential_pairs_classify() {
    let mut rng = common::rng(101);
    let mut done = 0;
    while done < 60 {
        let g = common::strongly_connected_base(&mut rng, 5);
        let w = common::random_weights(&mut rng, &g, 3);
        let Some(w2) = far_shift(&mut rng, &g, &w, 3) else { continue };
        let e1 = common::random_moves(&mut rng, &common::simple(&g, &[w]), 5);
        let e2 = common::random_moves(&mut rng, &common::simple(&g, &[w2]), 5);
        assert!(is_essential(&e1) && is_essential(&e2));
        let cert = classify_1sink(&e1, &e2, Mode::Essential).unwrap_or_else(|err| panic!("case {done}: {err}"));
        verify_certificate(&e1, &e2, &cert).unwrap_or_else(|err| panic!("case {done}: {err}"));
        for (start, trace) in [(&e1, &cert.trace1), (&e2, &cert.trace2)] {
            let mut current = start.clone();
            for m in trace.moves() {
                current = apply_move(&current, m).unwrap();
                assert_eq!(k0_presentation(&current).unwrap(), k0_presentation(&cert.target).unwrap());
            }
        }
        done += 1;
    }
}

#[test]
fn random_acyclic_pairs_classify() {
    let mut rng = common::rng(102);
    let mut done = 0;
    while done < 60 {
        let n = rng.gen_range(2..=6);
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(v(&format!("w{i}"))).unwrap();
        }
        let mut next = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(0.5) {
                    for _ in 0..rng.gen_range(1..=2) {
                        next += 1;
                        g.add_edge(e(&format!("g{next}")), v(&format!("w{i}")), v(&format!("w{j}"))).unwrap();
                    }
                }
            }
        }
        if g.sinks().len() == n {
            continue;
        }
        let w = common::random_weights(&mut rng, &g, 3);
        let Some(w2) = far_shift(&mut rng, &g, &w, 2) else { continue };
        let e1 = common::random_moves(&mut rng, &common::simple(&g, &[w]), 4);
        let e2 = common::random_moves(&mut rng, &common::simple(&g, &[w2]), 4);
        match classify_1sink(&e1, &e2, Mode::Auto) {
            Ok(cert) => {
                assert_eq!(cert.mode, Mode::Af);
                verify_certificate(&e1, &e2, &cert).unwrap_or_else(|err| panic!("case {done}: {err}"));
                done += 1;
            }
            Err(ClassifyError::SourceInBase(_)) => {}
            Err(err) => panic!("case {done}: {err}"),
        }
    }
}

#[test]
fn random_closure_pairs_classify() {
    let mut rng = common::rng(103);
    let mut done = 0;
    let mut attempts = 0;
    while done < 30 && attempts < 5000 {
        attempts += 1;
        let g = common::random_base(&mut rng, 5);
        let e1 = common::random_extension(&mut rng, &g, 1, false);
        let e2 = common::random_extension(&mut rng, &g, 1, false);
        if !same_closure(&e1, &e2).unwrap() || closure_of_sink(&e1, 0).unwrap().is_empty() {
            continue;
        }
        let support = closure_of_sink(&e1, 0).unwrap();
        if !matches!(wojciech_gap(&e1, &e2, 0, Some(&support)).unwrap(), Verdict::CandidateFound(_)) {
            continue;
        }
        match classify_1sink(&e1, &e2, Mode::Closure) {
            Ok(cert) => {
                verify_certificate(&e1, &e2, &cert).unwrap_or_else(|err| panic!("case {done}: {err}"));
                done += 1;
            }
            Err(ClassifyError::SourceInBase(_)) => {}
            Err(err) => panic!("case {done}: {err}"),
        }
    }
    assert!(done >= 10, "only {done} closure cases generated");
}

#[test]
fn random_nsink_pairs_classify() {
    let mut rng = common::rng(104);
    for case in 0..40 {
        let g = common::strongly_connected_base(&mut rng, 4);
        let sinks = rng.gen_range(2..=3);
        let ws: Vec<VertexVector> = (0..sinks).map(|_| common::random_weights(&mut rng, &g, 3)).collect();
        let shifted: Vec<VertexVector> =
            ws.iter().map(|w| far_shift(&mut rng, &g, w, 2).unwrap_or_else(|| w.clone())).collect();
        let e1 = common::random_moves(&mut rng, &common::simple(&g, &ws), 5);
        let e2 = common::random_moves(&mut rng, &common::simple(&g, &shifted), 5);
        let cert = classify_nsink(&e1, &e2).unwrap_or_else(|err| panic!("case {case}: {err}"));
        verify_certificate(&e1, &e2, &cert).unwrap_or_else(|err| panic!("case {case}: {err}"));
    }
}

#[test]
fn nsink_spec_pair_over_intro_base() {
    let g = fixture("G_intro").base_graph();
    let w = |xs: [i64; 3]| -> VertexVector {
        ["w1", "w2", "w3"].iter().zip(xs).map(|(n, x)| (v(n), BigInt::from(x))).collect()
    };
    let first = common::simple(&g, &[w([1, 1, 2]), w([1, 0, 3])]);
    let second = common::simple(&g, &[w([1, 1, 2]), w([2, 0, 3])]);
    let cert = classify_nsink(&first, &second).unwrap();
    verify_certificate(&first, &second, &cert).unwrap();
    assert_eq!(cert.mode, Mode::NSink);
    let m = a_minus_i(&g);
    assert_eq!(m.to_i64_rows().unwrap(), vec![vec![0, 1, 0], vec![0, -1, 1], vec![0, 1, -1]]);
}

#[test]
fn nsink_reports_the_offending_sink() {
    let g = fixture("G_o3").base_graph();
    let one = |x: i64| -> VertexVector { [(v("w"), BigInt::from(x))].into_iter().collect() };
    let first = common::simple(&g, &[one(1), one(1)]);
    let second = common::simple(&g, &[one(1), one(2)]);
    match classify_nsink(&first, &second) {
        Err(ClassifyError::AtSink { index: 1, source }) => assert!(matches!(*source, ClassifyError::NoCandidate(_))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn balance_through_disjoint_boundaries() {
    let text = |b: &str| {
        format!(
            "v w1 base\nv w2 base\nv w3 base\nv w4 base\nv v1 ext\n\
             e l w1 w1 base\ne p w1 w2 base\ne q w2 w3 base\ne r w3 w4 base\ne s w4 w1 base\n\
             e {b}-v1:1 {b} v1 ext\nsink v1\n"
        )
    };
    let e1 = sinkext_core::extension::parse_extension(&text("w2")).unwrap();
    let e2 = sinkext_core::extension::parse_extension(&text("w3")).unwrap();
    let g = e1.base_graph();
    let gamma = Path::new(&g, None, vec![e("l")]).unwrap();
    for a in [1, -1, 2] {
        let out = balance_loop(&e1, &e2, &gamma, a).unwrap();
        let mut n = VertexVector::new();
        n.set(v("w1"), BigInt::from(a));
        assert_eq!(gap(&out.first, &out.second), &gap(&e1, &e2) + &apply_a_minus_i(&g, &n), "a = {a}");
        assert!(out.moves_first.len() + out.moves_second.len() > 2, "a = {a}");
    }
}
