mod common;

use proptest::prelude::*;
use qlsmodcat::cohomology::{cocycle_classes, TwoCocycle};
use qlsmodcat::group::AbelianGroup;
use qlsmodcat::modcat::{free_parameters, ModCatDatum};

use common::*;

const GROUPS: &[&[u32]] = &[&[2], &[3], &[4], &[2, 2], &[2, 4], &[3, 3], &[2, 2, 2]];

/// A class representative on `Γ` times a random coboundary.
fn twisted() -> impl Strategy<Value = (TwoCocycle, TwoCocycle)> {
    (proptest::sample::select(GROUPS), any::<u64>(), proptest::collection::vec(0u32..12, 8))
        .prop_map(|(orders, pick, mu)| {
            let f = AbelianGroup::new(orders.to_vec()).unwrap().whole();
            let classes = cocycle_classes(&f);
            let psi = classes[(pick % classes.len() as u64) as usize].clone();
            let mut mu: Vec<u32> = mu.into_iter().cycle().take(f.order()).collect();
            mu[0] = 0;
            let twisted = psi.times_coboundary(12, &mu).unwrap();
            (psi, twisted)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundary_twists_stay_cocycles((psi, tw) in twisted()) {
        prop_assert!(psi.satisfies_cocycle_identity());
        prop_assert!(tw.satisfies_cocycle_identity());
        prop_assert_eq!(psi.class_tag(), tw.class_tag());
    }

    #[test]
    fn psi_g_ignores_coboundaries((psi, tw) in twisted()) {
        let m = psi.subgroup().member_indices();
        for &g in m {
            for &h in m {
                prop_assert_eq!(psi.psi_g_value_idx(g, h), tw.psi_g_value_idx(g, h));
            }
        }
    }
}

#[test]
fn class_counts_match_brute_force() {
    // |H²(Z_n)| = 1, |H²(Z_2×Z_2)| = 2, |H²(Z_2×Z_4)| = 2, |H²(Z_3×Z_3)| = 3, |H²(Z_2^3)| = 8
    for (orders, expected) in [(&[2u32][..], 1), (&[4], 1), (&[2, 2], 2), (&[2, 4], 2), (&[3, 3], 3), (&[2, 2, 2], 8)] {
        let f = AbelianGroup::new(orders.to_vec()).unwrap().whole();
        let classes = cocycle_classes(&f);
        assert_eq!(classes.len(), expected, "{orders:?}");
        for c in &classes {
            assert!(c.satisfies_cocycle_identity() && c.is_normalized());
        }
        let mut tags: Vec<&str> = classes.iter().map(|c| c.class_tag()).collect();
        tags.dedup();
        assert_eq!(tags.len(), expected);
    }
}

#[test]
fn subgroups_are_closed_and_deterministic() {
    for orders in GROUPS {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        let subs = g.enumerate_subgroups(64).unwrap();
        assert_eq!(subs, g.enumerate_subgroups(64).unwrap());
        for s in &subs {
            for &a in s.member_indices() {
                for &b in s.member_indices() {
                    assert!(s.contains_idx(g.mul_idx(a, b)));
                }
            }
        }
    }
    // Z_2 × Z_2 has five subgroups, Z_4 three
    assert_eq!(AbelianGroup::new(vec![2, 2]).unwrap().enumerate_subgroups(64).unwrap().len(), 5);
    assert_eq!(AbelianGroup::new(vec![4]).unwrap().enumerate_subgroups(64).unwrap().len(), 3);
}

#[test]
fn free_positions_depend_only_on_the_class() {
    let d = klein();
    let f = d.group().whole();
    for psi in cocycle_classes(&f) {
        for mu in [[0u32, 1, 2, 3], [0, 3, 3, 1], [0, 1, 1, 0]] {
            let other = psi.times_coboundary(4, &mu).unwrap();
            assert_ne!(other.exponent_table(), psi.exponent_table(), "pick a visible coboundary");
            for w in [&[0usize][..], &[1], &[0, 1]] {
                let a = ModCatDatum::coordinate(w, psi.clone());
                let b = ModCatDatum::coordinate(w, other.clone());
                assert_eq!(free_parameters(&d, &a).unwrap(), free_parameters(&d, &b).unwrap());
            }
        }
    }
}
