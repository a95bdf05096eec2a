use std::collections::BTreeSet;

use proptest::prelude::*;
use slata::duality::{
    dual_space, functor_m, functor_p, functor_q, multirel_of_monotone, relation_of_hom_between,
};
use slata::generate::{
    instance_rng, random_hom, random_monotone, random_relspace, random_semilattice, random_slata,
};
use slata::multirel::{is_normal, meet_from_normal, multirel_from_meet};
use slata::relations::{star_compose, star_compose_literal, BinaryRelation};
use slata::semilattice::{
    filters_by_definition, is_modal_operator, FiniteSemilattice, SemilatticeHom,
};
use slata::sspace::FiniteSpace;
use slata::BitSet;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

fn semilattice(seed: u64, n: usize) -> FiniteSemilattice {
    random_semilattice(&mut instance_rng(seed, 0), n)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn bitset_agrees_with_btreeset(a in prop::collection::vec(0usize..64, 0..20), b in prop::collection::vec(0usize..64, 0..20)) {
        let (sa, sb): (BitSet, BitSet) = (a.iter().copied().collect(), b.iter().copied().collect());
        let (ta, tb): (BTreeSet<usize>, BTreeSet<usize>) = (a.into_iter().collect(), b.into_iter().collect());
        prop_assert_eq!(sa.to_vec(), ta.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!((sa & sb).to_vec(), ta.intersection(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!((sa | sb).to_vec(), ta.union(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.is_subset(sb), ta.is_subset(&tb));
        prop_assert_eq!(sa.len(), ta.len());
    }

    #[test]
    fn semilattice_json_roundtrips(seed in any::<u64>(), n in 1usize..=7) {
        let a = semilattice(seed, n);
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = FiniteSemilattice::new(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn filters_match_definition(seed in any::<u64>(), n in 1usize..=7) {
        let a = semilattice(seed, n);
        prop_assert_eq!(a.enumerate_filters(false), filters_by_definition(&a, false));
        prop_assert_eq!(a.enumerate_filters(true), filters_by_definition(&a, true));
    }

    #[test]
    fn dual_space_is_verified_and_beta_iso(seed in any::<u64>(), n in 1usize..=7) {
        let d = dual_space(&semilattice(seed, n));
        prop_assert!(d.space.is_verified());
        let report = d.beta_report();
        prop_assert!(report.passed(), "{}", report.failure_summary());
        let json = d.space.to_json();
        prop_assert_eq!(FiniteSpace::from_json(&json).unwrap(), (*d.space).clone());
    }

    #[test]
    fn star_is_associative_with_units(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = instance_rng(seed, 1);
        let a = random_semilattice(&mut rng, n);
        let d = dual_space(&a);
        let sq = BinaryRelation::specialization(d.space.clone()).unwrap();
        let rels: Vec<BinaryRelation> = (0..3)
            .filter_map(|_| random_hom(&mut rng, &a, &a, &[]))
            .map(|m| relation_of_hom_between(&SemilatticeHom::new(a.clone(), a.clone(), m).unwrap(), &d, &d).unwrap())
            .collect();
        prop_assume!(rels.len() == 3);
        let (r, s, t) = (&rels[0], &rels[1], &rels[2]);
        prop_assert_eq!(&star_compose(r, &sq).unwrap(), r);
        prop_assert_eq!(&star_compose(&sq, r).unwrap(), r);
        prop_assert_eq!(star_compose(s, r).unwrap(), star_compose_literal(s, r));
        prop_assert_eq!(
            star_compose(t, &star_compose(s, r).unwrap()).unwrap(),
            star_compose(&star_compose(t, s).unwrap(), r).unwrap()
        );
    }

    #[test]
    fn slata_adjunction_holds(seed in any::<u64>(), n in 1usize..=7) {
        let s = random_slata(&mut instance_rng(seed, 2), n);
        let a = &s.algebra;
        for p in 0..a.size() {
            for q in 0..a.size() {
                prop_assert_eq!(a.leq(s.i[p], q), a.leq(p, s.d[q]));
            }
        }
    }

    #[test]
    fn normal_iff_modal_when_down_sets_saturated(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = instance_rng(seed, 3);
        let a = random_semilattice(&mut rng, n);
        let d = dual_space(&a);
        prop_assume!(d.space.down_sets_saturated());
        let m = random_monotone(&mut rng, &a);
        let r = multirel_of_monotone(&d, &m).unwrap();
        prop_assert_eq!(is_normal(&r).unwrap().passed(), is_modal_operator(&a, &m));
    }

    #[test]
    fn conversions_and_functors_roundtrip(seed in any::<u64>(), n in 1usize..=7) {
        let rs = random_relspace(&mut instance_rng(seed, 4), n).unwrap();
        prop_assume!(rs.space().down_sets_saturated());
        let t = rs.relation();
        prop_assert_eq!(&meet_from_normal(&multirel_from_meet(t).unwrap()).unwrap(), t);
        let p = functor_p(&rs).unwrap();
        let q = functor_q(&p).unwrap();
        prop_assert_eq!(&q, &rs);
        prop_assert_eq!(functor_p(&q).unwrap(), p);
    }

    #[test]
    fn functor_m_image_is_a_relspace(seed in any::<u64>(), n in 1usize..=6) {
        let s = random_slata(&mut instance_rng(seed, 5), n);
        let image = functor_m(&s).unwrap();
        let t = image.relspace.relation();
        prop_assert!(t.is_a_relation().unwrap() && t.is_meet_relation().unwrap());
    }
}
