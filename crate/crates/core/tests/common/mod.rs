#![allow(dead_code)]

use qlsmodcat::classification::{enumerate_modcat_data, SweepOptions};
use qlsmodcat::cohomology::TwoCocycle;
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::lifting::LiftingDatum;
use qlsmodcat::modcat::ModCatDatum;
use qlsmodcat::scalar::CycloNumber;

pub fn int(v: i64) -> CycloNumber {
    CycloNumber::from_int(1, v)
}

pub fn group_algebra(orders: &[u32]) -> QlsDatum {
    QlsDatum::from_exps(orders, &[], &[]).unwrap()
}

/// Γ = Z2, one generator with q = -1.
pub fn sweedler() -> QlsDatum {
    QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap()
}

/// Γ = Z2, two anticommuting generators with g_1 = g_2 of order two.
pub fn clifford() -> QlsDatum {
    QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]]).unwrap()
}

/// Γ = Z4, g of order four, χ(g) = -1.
pub fn z4() -> QlsDatum {
    QlsDatum::from_exps(&[4], &[&[1]], &[&[2]]).unwrap()
}

/// Γ = Z2 × Z2 with χ_1 = χ_2 and χ_1χ_2 trivial.
pub fn klein() -> QlsDatum {
    QlsDatum::from_exps(&[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]]).unwrap()
}

/// Γ = Z3 with q a primitive cube root of unity.
pub fn z3() -> QlsDatum {
    QlsDatum::from_exps(&[3], &[&[1]], &[&[1]]).unwrap()
}

pub fn z4_mu() -> LiftingDatum {
    LiftingDatum::trivial(1).with_mu(0, int(1))
}

pub fn klein_lambda() -> LiftingDatum {
    LiftingDatum::trivial(2).with_lambda(0, 1, int(1))
}

pub fn trivial_psi(d: &QlsDatum) -> TwoCocycle {
    TwoCocycle::trivial(&d.group().whole())
}

/// All valid data of `d` with free parameters drawn from `{0, 1}`.
pub fn swept(d: &QlsDatum) -> Vec<ModCatDatum> {
    enumerate_modcat_data(d, &SweepOptions::default()).unwrap()
}
