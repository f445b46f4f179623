mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use sinkext_core::classify::{a_minus_i, apply_a_minus_i};
use sinkext_core::extension::{
    apply_move, apply_trace, boundary, canonical_simple, canonically_equal, is_forest_extension, is_tree_extension,
    outsplit, outsplit_along_path, parse_extension, saturation, serialize_extension, simplify, star, strip_sink,
    wojciech_vector, wojciech_vectors, z_paths, ExtensionError, Move, MoveTrace, SinkExtension,
};
use sinkext_core::fixtures::{self, E1_INTRO};
use sinkext_core::graph::VertexSet;
use sinkext_core::ids::{e, v};
use sinkext_core::lattice::image_membership;
use sinkext_core::vector::{parse_vector, VertexVector};

fn load(name: &str) -> SinkExtension {
    fixtures::load(name).unwrap()
}

fn set(names: &[&str]) -> VertexSet {
    names.iter().map(|n| v(n)).collect()
}

fn dense(ext: &SinkExtension, i: usize) -> Vec<i64> {
    wojciech_vector(ext, i).unwrap().to_dense(ext.base_vertices()).to_i64s().unwrap()
}

fn vector(text: &str) -> VertexVector {
    parse_vector(text).unwrap()
}

#[test]
fn example_extensions_validate() {
    let e1 = load("E1_ex26");
    assert_eq!(e1.sinks(), &[v("v1")]);
    let intro = load("E1_intro");
    assert_eq!(intro.added_vertices(), set(&["v1"]));
    assert!(intro.is_simple());
}

#[test]
fn edge_from_h_into_the_base_violates_clause_3() {
    let text = format!("{E1_INTRO}v x ext\ne up x w1 ext\ne in w1 x ext\n");
    let Err(ExtensionError::Invalid(vs)) = parse_extension(&text) else { panic!("accepted") };
    assert!(vs.iter().any(|x| x.clause == 3), "{vs:?}");
    assert!(vs.iter().all(|x| x.to_string().starts_with("CLAUSE(")));
}

#[test]
fn saturations() {
    assert_eq!(saturation(&load("E1_intro"), &set(&["v1"])).unwrap(), set(&["v1"]));
    assert_eq!(saturation(&load("Z_fig_split"), &set(&["v"])).unwrap(), set(&["v", "z'1"]));
    assert!(saturation(&load("Z_fig"), &set(&[])).unwrap().is_empty());
}

#[test]
fn boundaries() {
    let b = boundary(&load("E2_ex26"));
    assert_eq!(b.vertices, set(&["w2"]));
    assert_eq!(b.edges.len(), 1);
    assert_eq!(boundary(&load("E1_intro")).vertices, set(&["w1", "w2", "w3"]));
    assert_eq!(boundary(&load("Z_fig")).vertices, set(&["z"]));
}

#[test]
fn z_path_enumeration() {
    let intro = load("E1_intro");
    let paths = z_paths(&intro, &v("w3"), 0).unwrap();
    assert_eq!(paths.len(), 2);
    assert!(paths.iter().all(|p| p.len() == 1));

    let split = load("Z_fig_split");
    let paths = z_paths(&split, &v("w"), 0).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].edges(), &[e("g'"), e("e'")]);

    assert!(z_paths(&load("E2_intro"), &v("w2"), 0).unwrap().is_empty());
}

#[test]
fn wojciech_vectors_of_the_examples() {
    assert_eq!(dense(&load("E1_ex26"), 0), vec![1, 0]);
    assert_eq!(dense(&load("E2_ex26"), 0), vec![0, 1]);
    assert_eq!(dense(&load("E1_intro"), 0), vec![1, 1, 2]);
    assert_eq!(dense(&load("E2_intro"), 0), vec![1, 0, 3]);
    assert_eq!(dense(&load("F_intro"), 0), vec![2, 0, 3]);
    assert_eq!(dense(&load("Z_fig"), 0), vec![0, 1]);
    assert_eq!(dense(&load("Z_fig_split"), 0), vec![1, 1]);
    assert!(wojciech_vector(&load("E1_ex26"), 1).is_err());
}

#[test]
fn tree_extensions() {
    assert!(is_tree_extension(&load("E1_intro")).unwrap());
    assert!(is_tree_extension(&load("Z_fig_split")).unwrap());
    let text = "v w base\nv x ext\nv s ext\ne l w w base\ne a w x ext\ne p x s ext\ne q x s ext\nsink s\n";
    let ext = parse_extension(text).unwrap();
    assert!(!is_tree_extension(&ext).unwrap());
    assert!(!is_forest_extension(&ext));
    assert!(is_tree_extension(&load("G_ex26")).is_err());
}

#[test]
fn simplification() {
    let s = simplify(&load("Z_fig_split"));
    assert!(s.is_simple());
    assert_eq!(dense(&s, 0), vec![1, 1]);
    assert!(canonically_equal(&simplify(&s), &s));
    let intro = load("E1_intro");
    assert_eq!(serialize_extension(&simplify(&intro)), serialize_extension(&intro));
}

#[test]
fn outsplitting_the_figure() {
    let (split, record) = outsplit(&load("Z_fig"), &e("e")).unwrap();
    assert_eq!(serialize_extension(&split), serialize_extension(&load("Z_fig_split")));
    assert_eq!(record.new_vertex, v("z'1"));
    assert_eq!(record.split_edge, e("e'"));
    assert_eq!(record.copies.len(), 2);
    assert!(matches!(outsplit(&load("Z_fig"), &e("h")), Err(ExtensionError::NotBoundaryEdge(_))));

    let mut trace = MoveTrace::new();
    assert_eq!(apply_trace(&load("Z_fig"), &trace).unwrap(), load("Z_fig"));
    trace.push(Move::Outsplit(e("e")));
    assert_eq!(apply_trace(&load("Z_fig"), &trace).unwrap(), split);
}

#[test]
fn outsplitting_along_paths() {
    let z = load("Z_fig");
    let (same, records) = outsplit_along_path(&z, &e("e"), &[]).unwrap();
    assert_eq!(same, z);
    assert!(records.is_empty());

    let (out, records) = outsplit_along_path(&z, &e("e"), &[e("f"), e("g")]).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(dense(&out, 0), vec![0, 2]);
    let g = z.base_graph();
    let expected = &wojciech_vector(&z, 0).unwrap() + &apply_a_minus_i(&g, &vector("w:1 z:1"));
    assert_eq!(wojciech_vector(&out, 0).unwrap(), expected);

    let intro = load("E2_intro");
    assert!(!boundary(&intro).vertices.contains(&v("w2")));
    let (out, _) = outsplit_along_path(&intro, &e("w3-v2:1"), &[e("c")]).unwrap();
    assert!(boundary(&out).vertices.contains(&v("w2")));
}

#[test]
fn star_and_strip() {
    let g = load("G_ex26");
    let e1 = star(&g, &vector("w1:1")).unwrap();
    assert!(canonically_equal(&e1, &load("E1_ex26")));
    assert!(star(&g, &VertexVector::new()).is_err());

    let two = star(&load("E1_ex26"), &vector("w2:1")).unwrap();
    assert_eq!(two.sink_count(), 2);
    assert_eq!(dense(&two, 0), vec![1, 0]);
    assert_eq!(dense(&two, 1), vec![0, 1]);
    assert!(canonically_equal(&star(&strip_sink(&two).unwrap(), &vector("w2:1")).unwrap(), &two));

    let stripped = strip_sink(&load("E1_ex26")).unwrap();
    assert_eq!(stripped.sink_count(), 0);
    assert_eq!(stripped.base_graph(), g.base_graph());
    assert!(strip_sink(&load("Z_fig_split")).is_err());
}

#[test]
fn canonical_simple_extensions() {
    let g = load("G_ex26").base_graph();
    assert!(canonically_equal(&canonical_simple(&g, &[vector("w1:1")]).unwrap(), &load("E1_ex26")));
    let intro = load("G_intro").base_graph();
    assert!(canonically_equal(&canonical_simple(&intro, &[vector("w1:2 w3:3")]).unwrap(), &load("F_intro")));
    assert!(canonical_simple(&g, &[VertexVector::new()]).is_err());
}

#[test]
fn apply_move_dispatches() {
    let z = load("Z_fig");
    assert_eq!(apply_move(&z, &Move::Simplify).unwrap(), simplify(&z));
    assert_eq!(apply_move(&z, &Move::Outsplit(e("e"))).unwrap(), outsplit(&z, &e("e")).unwrap().0);
    let m = Move::Star(vector("w:1"));
    assert_eq!(apply_move(&z, &m).unwrap().sink_count(), 2);
}

#[test]
fn random_moves_keep_the_wojciech_class() {
    let mut rng = common::rng(0x6578);
    for _ in 0..80 {
        let g = common::random_base(&mut rng, 4);
        let sinks = rng.gen_range(1..=2);
        let tree = rng.gen_bool(0.5);
        let ext = common::random_extension(&mut rng, &g, sinks, tree);
        let moved = common::random_moves(&mut rng, &ext, 6);
        assert_eq!(moved.base_graph(), g);
        for (before, after) in wojciech_vectors(&ext).iter().zip(wojciech_vectors(&moved)) {
            let diff = &after - before;
            let x = image_membership(&a_minus_i(&g), &diff.to_dense(g.vertices())).unwrap();
            assert!(x.is_some(), "{diff} left the class of {before}");
        }
        let simple = simplify(&moved);
        assert!(simple.is_simple());
        assert_eq!(wojciech_vectors(&simple), wojciech_vectors(&moved));
    }
}

proptest! {
    #[test]
    fn canonical_simple_reproduces_its_vectors(ws in proptest::collection::vec(0i64..4, 3)) {
        prop_assume!(ws.iter().any(|&x| x > 0));
        let g = load("G_intro").base_graph();
        let mut w = VertexVector::new();
        for (name, x) in ["w1", "w2", "w3"].iter().zip(&ws) {
            w.set(v(name), BigInt::from(*x));
        }
        let ext = canonical_simple(&g, &[w.clone()]).unwrap();
        prop_assert_eq!(wojciech_vector(&ext, 0).unwrap(), w);
        let text = serialize_extension(&ext);
        prop_assert_eq!(parse_extension(&text).unwrap(), ext);
    }
}
