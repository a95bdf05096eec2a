use slata::duality::{
    dual_space, functor_p, functor_q, multirel_of_monotone, relation_of_operator,
};
use slata::fixtures::{boolean_example, chain3_slata, BOOLEAN_F_LOWER};
use slata::multirel::{is_normal, meet_from_normal, multirel_from_meet};
use slata::relations::{BinaryRelation, RelSpace};
use slata::semilattice::{check_hom, slata_hom_criterion, FiniteSemilattice, HomKind};
use slata::workbench::goldens;
use slata::BitSet;

fn set(xs: &[usize]) -> BitSet {
    xs.iter().copied().collect()
}

#[test]
fn chain3_bundle() {
    let d = dual_space(&FiniteSemilattice::chain(3));
    assert_eq!(d.filters, vec![set(&[2]), set(&[1, 2])]);
    assert_eq!(d.beta, vec![set(&[]), set(&[1]), set(&[0, 1])]);
    assert_eq!(
        d.space.subbasic_closed(),
        &[set(&[]), set(&[1]), set(&[0, 1])]
    );
}

#[test]
fn powerset_dual_is_two_points() {
    let d = dual_space(&FiniteSemilattice::powerset(2));
    assert_eq!(d.points(), 2);
    assert!(d.space.dual_specialization().unwrap().covers().is_empty());
}

#[test]
fn boolean_counterexample_exact() {
    let ex = boolean_example();
    let s = &ex.slata;
    assert_eq!(s.i, BOOLEAN_F_LOWER);
    assert!(
        check_hom(&ex.hom, HomKind::Modal, &[&s.d], &[&s.d])
            .unwrap()
            .holds
    );
    let full = check_hom(&ex.hom, HomKind::Slata, &[&s.i, &s.d], &[&s.i, &s.d]).unwrap();
    assert!(!full.holds);
    let w = full
        .operator_failures
        .iter()
        .find(|w| w.args == [2])
        .expect("witness at {1}");
    assert_eq!((w.lhs, w.rhs), (3, 0));
    assert!(!slata_hom_criterion(&ex.hom, s, s).unwrap());
}

#[test]
fn chain3_slata_dualizes() {
    let s = chain3_slata();
    let d = dual_space(&s.algebra);
    let nd = relation_of_operator(&d, &s.d).unwrap();
    assert!(RelSpace::new(nd).is_ok());
}

/// M3 = {0, a, b, c, 1}: a verified dual space where (P_a] is not in 𝒵.
#[test]
fn m3_down_set_gap() {
    let m3 = FiniteSemilattice::from_family(&[
        set(&[]),
        set(&[0]),
        set(&[1]),
        set(&[2]),
        set(&[0, 1, 2]),
    ])
    .unwrap();
    let d = dual_space(&m3);
    assert_eq!(d.points(), 3);
    assert!(d.space.is_verified() && d.beta_report().passed());
    assert!(d.space.unsaturated_down_set().is_some());
    assert!(!d.space.down_sets_saturated());

    // id is modal, yet R_id is not normal under the literal (N1).
    let id: Vec<usize> = (0..m3.size()).collect();
    let r = multirel_of_monotone(&d, &id).unwrap();
    assert!(!is_normal(&r).unwrap().passed());

    // ⊒ is a RelS-space here, but T_{R_T} loses it.
    let sq = BinaryRelation::specialization(d.space.clone()).unwrap();
    let back = meet_from_normal(&multirel_from_meet(&sq).unwrap());
    assert!(back.map_or(true, |t| t != sq));
    let rs = RelSpace::new(sq).unwrap();
    assert!(functor_p(&rs)
        .and_then(|p| functor_q(&p))
        .map_or(true, |q| q != rs));
}

#[test]
fn workbench_goldens() {
    let g = goldens();
    assert!(g.passed(), "{}", g.failure_summary());
}
