mod common;

use std::collections::BTreeMap;
use std::sync::LazyLock;

use cmbkf::bkf::{build_module, crystalline_realization, etale_realization, hodge_tate, hom_cm, Invariants};
use cmbkf::cmtype::{reflex, special_like, type_dual, type_sum, type_tensor, CMType};
use cmbkf::localfield::GaloisOptions;
use cmbkf::torus::{character_multiset, hom_dimension};
use common::{levels, Level};
use num_rational::Rational64;
use proptest::prelude::*;

static LEVELS: LazyLock<Vec<Level>> = LazyLock::new(|| levels(40));

fn opts() -> GaloisOptions {
    GaloisOptions::default()
}

/// A corpus level and a type on it.
fn typed() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..LEVELS.len()).prop_flat_map(|i| {
        let n = LEVELS[i].field.degree();
        (Just(i), prop::collection::vec(-3i64..=3, n))
    })
}

fn typed_pair() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0..LEVELS.len()).prop_flat_map(|i| {
        let n = LEVELS[i].field.degree();
        (Just(i), prop::collection::vec(-2i64..=2, n), prop::collection::vec(-2i64..=2, n))
    })
}

fn ty(i: usize, phi: Vec<i64>) -> CMType {
    LEVELS[i].zero.with_phi(phi).unwrap()
}

fn sorted_subgroup(mut h: Vec<usize>) -> Vec<usize> {
    h.sort();
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizer_conjugates_under_action((i, phi) in typed()) {
        let t = ty(i, phi);
        let r = reflex(&t);
        let g = t.group();
        prop_assert_eq!(g.order() % r.degree, 0);
        for x in g.elements() {
            let moved = reflex(&t.with_phi(t.act(x)).unwrap());
            prop_assert_eq!(moved.degree, r.degree);
            let conj = sorted_subgroup(g.conjugate_subgroup(&r.subgroup, x));
            prop_assert_eq!(sorted_subgroup(moved.subgroup), conj);
        }
    }

    #[test]
    fn dual_is_involution((i, phi) in typed()) {
        let t = ty(i, phi.clone());
        prop_assert_eq!(type_dual(&type_dual(&t)).phi, phi);
    }

    #[test]
    fn tensor_associates_and_commutes((i, a, b) in typed_pair(), c in prop::collection::vec(-2i64..=2, 1..=1)) {
        let (ta, tb) = (ty(i, a.clone()), ty(i, b.clone()));
        let tc = CMType::base(c[0]);
        let left = type_tensor(&type_tensor(&ta, &tb, &opts()).unwrap(), &tc, &opts()).unwrap();
        let right = type_tensor(&ta, &type_tensor(&tb, &tc, &opts()).unwrap(), &opts()).unwrap();
        prop_assert_eq!(&left.phi, &right.phi);
        let ab = type_tensor(&ta, &tb, &opts()).unwrap();
        let ba = type_tensor(&tb, &ta, &opts()).unwrap();
        let n = a.len();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(ab.phi[x * n + y], ba.phi[y * n + x]);
            }
        }
    }

    #[test]
    fn sum_reflex_is_compositum((i, a, b) in typed_pair()) {
        let (ta, tb) = (ty(i, a), ty(i, b));
        let s = type_sum(&ta, &tb, &opts()).unwrap();
        let (ha, hb) = (ta.stabilizer(), tb.stabilizer());
        let meet = ha.iter().filter(|x| hb.contains(x)).count();
        prop_assert_eq!(reflex(&s).degree, ta.group().order() / meet);
    }

    #[test]
    fn multiset_is_stable_and_sized((i, phi) in typed()) {
        let m = character_multiset(&ty(i, phi.clone()));
        prop_assert!(m.is_stable());
        prop_assert_eq!(m.len(), phi.len());
    }

    #[test]
    fn hom_dimension_symmetric_and_additive((i, a, b) in typed_pair(), c in 0usize..4) {
        let (ta, tb) = (ty(i, a.clone()), ty(i, b));
        let (ma, mb) = (character_multiset(&ta), character_multiset(&tb));
        prop_assert_eq!(hom_dimension(&ma, &mb).unwrap(), hom_dimension(&mb, &ma).unwrap());
        prop_assert_eq!(hom_dimension(&ma, &ma).unwrap() >= a.len(), true);
        let n = a.len();
        let third = character_multiset(&special_like(&ta, c % n).unwrap());
        let u = mb.union(&third).unwrap();
        prop_assert_eq!(
            hom_dimension(&ma, &u).unwrap(),
            hom_dimension(&ma, &mb).unwrap() + hom_dimension(&ma, &third).unwrap()
        );
    }

    #[test]
    fn dual_negates_weights_and_slopes((i, phi) in typed()) {
        let m = build_module(&ty(i, phi.clone()));
        let d = build_module(&type_dual(&ty(i, phi)));
        let ht = hodge_tate(&m);
        let dual_ht: BTreeMap<i64, usize> = ht.iter().map(|(&k, &v)| (-k, v)).collect();
        prop_assert_eq!(hodge_tate(&d), dual_ht);
        let mut s: Vec<_> = crystalline_realization(&m).newton_slopes.iter().map(|&(x, k)| (-x, k)).collect();
        s.sort();
        prop_assert_eq!(crystalline_realization(&d).newton_slopes, s);
        prop_assert_eq!(etale_realization(&d).dimension, etale_realization(&m).dimension);
    }

    #[test]
    fn twist_by_rank_one_shifts_slopes((i, phi) in typed(), d in -3i64..=3) {
        let t = ty(i, phi);
        let tw = type_tensor(&t, &CMType::base(d), &opts()).unwrap();
        let expect: Vec<_> = crystalline_realization(&build_module(&t))
            .newton_slopes
            .iter()
            .map(|&(s, k)| (s + Rational64::from(d), k))
            .collect();
        prop_assert_eq!(crystalline_realization(&build_module(&tw)).newton_slopes, expect);
    }

    #[test]
    fn lattice_divisors_are_negated_type((i, phi) in typed()) {
        let m = build_module(&ty(i, phi.clone()));
        let mut expect: Vec<i64> = phi.iter().map(|x| -x).collect();
        expect.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(&m.lattice.divisors, &expect);
        prop_assert_eq!(m.lattice.dimension, phi.len());
        prop_assert_eq!(&m.frobenius.exponents, &phi);
    }
}

#[test]
fn special_types_hom_counts_stabilizer_match() {
    for l in LEVELS.iter() {
        let n = l.field.degree();
        for a in 0..n {
            for b in 0..n {
                let ta = special_like(&l.zero, a).unwrap();
                let tb = special_like(&l.zero, b).unwrap();
                let h = hom_cm(&build_module(&ta), &build_module(&tb), &opts()).unwrap();
                let same = sorted_subgroup(ta.stabilizer()) == sorted_subgroup(tb.stabilizer());
                assert_eq!(h, if same { n } else { 0 }, "{} ({a},{b})", l.entry.name);
            }
        }
    }
}

#[test]
fn invariants_of_rank_one() {
    for d in -3..=3 {
        let inv = cmbkf::bkf::invariants(&build_module(&CMType::base(d)));
        assert_eq!(inv, Invariants { etale_rank: 1, hodge_tate: vec![(d, 1)], newton_slopes: vec![(d, 1, 1)] });
    }
}
