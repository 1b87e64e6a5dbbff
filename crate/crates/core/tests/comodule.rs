mod common;

use qlsmodcat::comodule::{
    associated_graded, coinvariants, galois_map, generator_matching_iso, loewy_filtration, monomial_filtration,
    verify_comodule_algebra, ComoduleAlgebraRep,
};
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::modcat::{build_a, build_k, ModCatDatum};
use qlsmodcat::simplicity::{check_simplicity, SimplicityVerdict, DEFAULT_SEED};

use common::*;

fn check_datum(d: &QlsDatum, m: &ModCatDatum) {
    let a = build_a(d, m).unwrap();
    let report = verify_comodule_algebra(&a);
    assert!(report.passed(), "{}", report.summary());

    let heights: usize = m
        .coordinates()
        .unwrap()
        .iter()
        .map(|&i| d.q(i, i).root_order().unwrap() as usize)
        .product();
    assert_eq!(a.dim(), m.subgroup().order() * heights);
    assert_eq!(coinvariants(&a).dim(), 1);

    let loewy = loewy_filtration(&a);
    assert!(loewy.same_as(&monomial_filtration(&a).unwrap()));
    let gr = associated_graded(&a, &loewy).unwrap();
    let k = build_k(d, m.w(), m.psi()).unwrap();
    generator_matching_iso(&gr.algebra, &k).unwrap();

    let full = m.s() == d.theta() && m.subgroup().order() == d.group().order();
    if full {
        let (_, g) = galois_map(&a);
        assert!(g.bijective);
        assert_eq!(check_simplicity(&a, DEFAULT_SEED), SimplicityVerdict::SplitSimple);
    }
}

#[test]
fn sweedler_data() {
    let d = sweedler();
    let all = swept(&d);
    assert_eq!(all.len(), 6);
    all.iter().for_each(|m| check_datum(&d, m));
}

#[test]
fn clifford_data() {
    let d = clifford();
    swept(&d).iter().for_each(|m| check_datum(&d, m));
}

#[test]
fn z4_data() {
    let d = z4();
    swept(&d).iter().for_each(|m| check_datum(&d, m));
}

#[test]
fn klein_data() {
    let d = klein();
    swept(&d).iter().for_each(|m| check_datum(&d, m));
}

#[test]
fn dimension_ignores_xi_and_alpha() {
    let d = clifford();
    let psi = trivial_psi(&d);
    let dims: Vec<usize> = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 0, 5), (2, 3, 7)]
        .iter()
        .map(|&(x1, x2, a)| {
            let m = ModCatDatum::coordinate(&[0, 1], psi.clone())
                .with_xi(0, int(x1))
                .with_xi(1, int(x2))
                .with_alpha(0, 1, int(a));
            build_a(&d, &m).unwrap().dim()
        })
        .collect();
    assert_eq!(dims, vec![8; 5]);
}

#[test]
fn trivial_coaction_is_not_simple() {
    let d = sweedler();
    let a = build_a(&d, &ModCatDatum::coordinate(&[0], trivial_psi(&d)).with_xi(0, int(1))).unwrap();
    let flat = ComoduleAlgebraRep::trivial(a.algebra().clone(), a.labels().to_vec(), a.hopf().clone()).unwrap();
    assert!(verify_comodule_algebra(&flat).passed());
    assert!(coinvariants(&flat).dim() > 1);
    match check_simplicity(&flat, DEFAULT_SEED) {
        SimplicityVerdict::Reducible { witness_dim, .. } => assert!(witness_dim > 0 && witness_dim < flat.dim()),
        other => panic!("{other:?}"),
    }
}
