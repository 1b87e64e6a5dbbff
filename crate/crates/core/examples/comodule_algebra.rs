//! The left U-comodule algebras 𝒜(W, F, ψ, ξ, α) and their structure.

use qlsmodcat::cohomology::TwoCocycle;
use qlsmodcat::comodule::{
    associated_graded, coinvariants, galois_map, generator_matching_iso, loewy_filtration, verify_comodule_algebra,
};
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::modcat::{build_a, build_k, validate_modcat_datum, ModCatDatum};
use qlsmodcat::scalar::CycloNumber;
use qlsmodcat::simplicity::{check_simplicity, simple_modules, DEFAULT_SEED};

fn main() -> qlsmodcat::Result<()> {
    let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]])?;
    let psi = TwoCocycle::trivial(&d.group().whole());
    let m = ModCatDatum::coordinate(&[0], psi).with_xi(0, CycloNumber::from_int(1, 3));
    println!("{}", validate_modcat_datum(&d, &m).summary());

    let a = build_a(&d, &m)?;
    println!("dim A = {}", a.dim());
    println!("{}", verify_comodule_algebra(&a).summary());

    let loewy = loewy_filtration(&a);
    println!("Loewy filtration dims {:?}", loewy.dims());
    let gr = associated_graded(&a, &loewy)?;
    let k = build_k(&d, m.w(), m.psi())?;
    println!("gr A ~ K: {}", generator_matching_iso(&gr.algebra, &k).is_ok());
    println!("coinvariants: dim {}", coinvariants(&a).dim());
    let (_, g) = galois_map(&a);
    println!("Galois map rank {} of {}", g.rank, g.rows);
    println!("simplicity: {}", check_simplicity(&a, DEFAULT_SEED).label());
    println!("simple modules: {:?}", simple_modules(a.algebra(), DEFAULT_SEED).simple_dims());
    Ok(())
}
