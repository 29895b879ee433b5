mod rows;

use std::sync::Arc;

use nichols_core::neighborhoods::{all_witnesses, good_a3, good_b3, good_c3, Kind, WitnessData};
use nichols_core::weyl::{verify_cartan_graph_axioms, GroupoidOrder};
use nichols_core::{
    find_good_point, real_roots, reflect, weyl_groupoid_order, CartanGraph, DynkinData, Generator, Limits, NeighborhoodError, ScalarContext,
};

fn chain(c: &Arc<ScalarContext>, labels: [&str; 5]) -> DynkinData {
    let [a, b, d, e, f] = labels.map(|s| c.parse(s).unwrap());
    DynkinData::chain(a, b, d, e, f).unwrap()
}

fn graph(d: &DynkinData) -> CartanGraph {
    CartanGraph::build(d, &Limits::default()).unwrap()
}

#[test]
fn type_a_point_has_the_all_a3_witness() {
    let c = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let g = graph(&chain(&c, ["q", "q^-1", "q", "q^-1", "q"]));
    let w = good_a3(&g, 0).unwrap().unwrap();
    assert_eq!(w.permutation, [0, 1, 2]);
    assert_eq!(w.data, WitnessData::A3 { a: 1, b: 0, c: 0, d: 1 });
    assert!(good_b3(&g, 0).unwrap().is_none());
    assert!(good_c3(&g, 0).unwrap().is_none());
}

#[test]
fn type_b_point_has_a_b3_witness() {
    let c = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let g = graph(&chain(&c, ["q^2", "q^-2", "q^2", "q^-2", "q"]));
    assert!(good_a3(&g, 0).unwrap().is_none());
    let w = good_b3(&g, 0).unwrap().unwrap();
    assert_eq!(w.data, WitnessData::Single { a: 1 });
    assert!(good_c3(&g, 0).unwrap().is_none());
}

#[test]
fn type_c_point_has_a_c3_witness() {
    let c = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let g = graph(&chain(&c, ["q", "q^-1", "q", "q^-2", "q^2"]));
    let w = good_c3(&g, 0).unwrap().unwrap();
    assert_eq!((w.permutation, w.data), ([0, 1, 2], WitnessData::Single { a: 1 }));
    assert!(good_b3(&g, 0).unwrap().is_none());
}

#[test]
fn row_thirteen_first_diagram_is_c3_shaped() {
    for inst in rows::instances(7, "13") {
        let g = graph(&inst.base);
        assert!(all_witnesses(&g, 0).unwrap().iter().any(|w| w.kind == Kind::C3), "{}", inst.base);
    }
}

#[test]
fn rows_two_and_three_have_one_kind_each() {
    for (id, kind) in [("2", Kind::B3), ("3", Kind::C3)] {
        for inst in rows::instances(7, id) {
            let g = graph(&inst.base);
            let (_, w) = find_good_point(&g).unwrap().unwrap();
            assert_eq!(w.kind, kind);
            let kinds: Vec<Kind> = (0..g.len()).flat_map(|x| all_witnesses(&g, x).unwrap()).map(|w| w.kind).collect();
            assert!(kinds.iter().all(|k| *k == kind), "row {id}: {kinds:?}");
        }
    }
}

#[test]
fn every_row_has_a_good_point() {
    for p in [2, 3, 7] {
        for inst in rows::all_instances(p) {
            let g = graph(&inst.base);
            assert!(find_good_point(&g).unwrap().is_some(), "p = {p}, row {}", inst.row);
        }
    }
}

#[test]
fn cube_root_chain_fails_the_b3_side_condition() {
    // q = -zeta with zeta of order 3: the point looks like B3 nearby but the
    // second-step entry is -3
    let c = ScalarContext::new(7, &[Generator::of_order("z", 3)], &[] as &[&str]).unwrap();
    let x = chain(&c, ["-1", "-z^-1", "-z", "-z^-1", "z"]);
    let b3 = nichols_core::CartanMatrix(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
    assert_eq!(x.cartan_matrix().unwrap(), b3);
    let r3 = reflect(&x, 2).unwrap();
    assert_eq!(r3.cartan_matrix().unwrap(), b3);
    let r1r3 = reflect(&r3, 0).unwrap();
    assert_eq!(r1r3.cartan_entry(1, 2), Some(-3));
    let limits = Limits::default();
    match CartanGraph::build(&x, &limits) {
        Ok(g) => {
            assert!(good_b3(&g, 0).unwrap().is_none());
            assert!(!real_roots(&g, &limits).is_finite());
        }
        Err(e) => assert!(matches!(e, nichols_core::WeylError::PointLimitExceeded(_)), "{e}"),
    }
}

#[test]
fn decomposable_graph_is_reported() {
    let c = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let g = graph(&chain(&c, ["q", "q^-1", "q", "1", "q"]));
    assert_eq!(find_good_point(&g), Err(NeighborhoodError::Decomposable));
}

#[test]
fn rank_two_is_rejected() {
    let c = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let [a, b] = ["q", "q^-1"].map(|s| c.parse(s).unwrap());
    let d = DynkinData::from_edges(vec![a.clone(), a], &[(0, 1, b)]).unwrap();
    assert_eq!(good_a3(&graph(&d), 0), Err(NeighborhoodError::RankMismatch(2)));
}

#[test]
fn truncated_orbit_breaks_the_axioms() {
    let inst = rows::instances(5, "4").remove(0);
    let full = graph(&inst.base);
    assert_eq!(full.len(), 4);
    let limits = Limits::default();
    let cut = full.truncated(2);
    let roots = real_roots(&cut, &limits);
    let report = verify_cartan_graph_axioms(&cut, &roots);
    assert!(report.violations.iter().any(|v| v.axiom == 2), "{report:?}");
    assert!(verify_cartan_graph_axioms(&full, &real_roots(&full, &limits)).is_ok());
    // four points, each with the 24 morphisms of type A3 coming in
    assert_eq!(weyl_groupoid_order(&full, 10_000), GroupoidOrder::Finite(96));
}
