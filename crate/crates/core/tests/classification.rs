mod common;

use qlsmodcat::classification::{classification_report, dedupe, enumerate_modcat_data, ClassificationReport, SweepOptions};
use qlsmodcat::cohomology::{cocycle_classes, TwoCocycle};
use qlsmodcat::comodule::coinvariants;
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::modcat::{build_a, free_parameters, validate_modcat_datum, ModCatDatum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// Dimension of the `F`-invariant symmetric bilinear forms on the coordinate
/// span `W`, with `F` acting on `x_k` through `χ_k`.
fn invariant_forms(d: &QlsDatum, w: &[usize], f: &qlsmodcat::group::Subgroup) -> usize {
    let group = d.group();
    let mut count = 0;
    for (a, &k) in w.iter().enumerate() {
        for &l in &w[a..] {
            let chi = group.char_mul(d.chi(k), d.chi(l));
            if f.elements().iter().all(|x| group.evaluate_character(&chi, x).unwrap().is_one()) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn sweedler_rows() {
    let d = sweedler();
    let r = classification_report(&d, &SweepOptions::default()).unwrap();
    assert_eq!((r.total_rows, r.total_representatives), (4, 6));
    let free: Vec<usize> = r.rows.iter().map(|row| row.free_parameters()).collect();
    assert_eq!(free, vec![0, 1, 0, 1]);
    for row in &r.rows {
        assert_eq!(row.discrete, 2usize.pow(row.free_parameters() as u32));
        for rep in &row.representatives {
            assert_eq!(rep.coinvariants_dim, Some(1));
        }
    }
    let back: ClassificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn clifford_free_counts_are_invariant_forms() {
    let d = clifford();
    for f in d.group().enumerate_subgroups(64).unwrap() {
        for w in [&[0usize][..], &[1], &[0, 1]] {
            let m = ModCatDatum::coordinate(w, TwoCocycle::trivial(&f));
            assert!(validate_modcat_datum(&d, &m).valid);
            let (fx, fa) = free_parameters(&d, &m).unwrap();
            assert_eq!(fx.len() + fa.len(), invariant_forms(&d, w, &f), "F = {}, W = {w:?}", f.label());
        }
    }
    let r = classification_report(&d, &SweepOptions::default()).unwrap();
    let full: Vec<usize> = r.rows.iter().filter(|row| row.w == "<x1,x2>").map(|row| row.free_parameters()).collect();
    assert_eq!(full, vec![3, 3]);
}

#[test]
fn every_representative_has_trivial_coinvariants() {
    for d in [clifford(), z4()] {
        for m in enumerate_modcat_data(&d, &SweepOptions::default()).unwrap() {
            assert_eq!(coinvariants(&build_a(&d, &m).unwrap()).dim(), 1);
        }
    }
}

#[test]
fn dedupe_counts_ignore_input_order() {
    let d = klein();
    let mut data = enumerate_modcat_data(&d, &SweepOptions::default()).unwrap();
    // add cohomologous copies of every cocycle
    let copies: Vec<ModCatDatum> = data
        .iter()
        .filter(|m| m.subgroup().order() == 4)
        .map(|m| m.clone().with_cocycle(m.psi().times_coboundary(4, &[0, 1, 3, 2]).unwrap()))
        .collect();
    assert!(!copies.is_empty());
    let base = dedupe(&data, false).len();
    assert_eq!(base, data.len());
    data.extend(copies.iter().cloned());
    assert_eq!(dedupe(&data, false).len(), base);
    assert_eq!(dedupe(&data, true).len(), base + copies.len());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        data.shuffle(&mut rng);
        assert_eq!(dedupe(&data, false).len(), base);
    }
}

#[test]
fn distinct_xi_never_merge() {
    let d = sweedler();
    let m0 = ModCatDatum::coordinate(&[0], trivial_psi(&d));
    let data = vec![m0.clone(), m0.clone().with_xi(0, int(1)), m0.clone().with_xi(0, int(2)), m0];
    assert_eq!(dedupe(&data, false).len(), 3);
}

#[test]
fn classes_of_klein_group_give_separate_rows() {
    let d = QlsDatum::from_exps(&[2, 2], &[&[1, 0]], &[&[1, 0]]).unwrap();
    let classes = cocycle_classes(&d.group().whole());
    let r = classification_report(&d, &SweepOptions::default()).unwrap();
    let whole_rows: Vec<&str> = r
        .rows
        .iter()
        .filter(|row| row.subgroup.matches('(').count() == 2)
        .map(|row| row.psi_class.as_str())
        .collect();
    for c in &classes {
        assert!(whole_rows.contains(&c.class_tag()), "{}", c.class_tag());
    }
}
