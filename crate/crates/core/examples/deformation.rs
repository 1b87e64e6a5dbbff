//! Cocycle deformation: H^σ and the deformed comodule algebra A_σ.

use std::sync::Arc;

use qlsmodcat::cohomology::{cocycle_classes, TwoCocycle};
use qlsmodcat::comodule::verify_comodule_algebra;
use qlsmodcat::hopf::{build_bosonization, verify_hopf_axioms, QlsDatum};
use qlsmodcat::modcat::{build_a_over, ModCatDatum};
use qlsmodcat::scalar::CycloNumber;
use qlsmodcat::twist::{deform_comodule_algebra_over, deform_hopf, validate_hopf_cocycle, HopfCocycle};

fn main() -> qlsmodcat::Result<()> {
    let d = QlsDatum::from_exps(&[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]])?.with_conductor(4);
    let u = Arc::new(build_bosonization(&d)?);
    let m = ModCatDatum::coordinate(&[0, 1], TwoCocycle::trivial(&d.group().whole()))
        .with_alpha(0, 1, CycloNumber::from_int(1, 1));
    let a = build_a_over(u.clone(), &d, &m)?;
    for psi in cocycle_classes(&d.group().whole()) {
        let sigma = HopfCocycle::from_group_cocycle(&u, &psi)?;
        println!("class {}: {}", psi.class_tag(), validate_hopf_cocycle(&u, &sigma).summary());
        let hs = Arc::new(deform_hopf(&u, &sigma)?);
        println!("  H^sigma: {}", verify_hopf_axioms(&hs).summary());
        let a_sigma = deform_comodule_algebra_over(&a, &sigma, hs)?;
        println!("  A_sigma (dim {}): {}", a_sigma.dim(), verify_comodule_algebra(&a_sigma).summary());
    }
    Ok(())
}
