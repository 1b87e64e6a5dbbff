//! Liftings u(𝒟, μ, λ): same coalgebra as U, deformed product.

use qlsmodcat::hopf::{build_bosonization, verify_hopf_axioms, HopfAlgebraRep, QlsDatum};
use qlsmodcat::lifting::{build_lifting, validate_lifting, LiftingDatum};
use qlsmodcat::linalg::SparseVec;
use qlsmodcat::scalar::CycloNumber;

fn show(h: &HopfAlgebraRep, v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v.iter().map(|(i, c)| format!("({c}) {}", h.labels()[i])).collect();
    terms.join(" + ")
}

fn main() -> qlsmodcat::Result<()> {
    let z4 = QlsDatum::from_exps(&[4], &[&[1]], &[&[2]])?;
    let mu = LiftingDatum::trivial(1).with_mu(0, CycloNumber::from_int(1, 1));
    let h = build_lifting(&z4, &mu)?;
    let u = build_bosonization(&z4)?;
    println!("Z4 mu-lifting: dim {}, same coproduct as U: {}", h.dim(), h.comult_table() == u.comult_table());
    let x = u.layout().expect("layout").generator(0);
    println!("x*x in U = {}", show(&u, &u.multiply(&u.basis(x), &u.basis(x))?));
    println!("x*x in H = {}", show(&h, &h.multiply(&h.basis(x), &h.basis(x))?));
    println!("{}", verify_hopf_axioms(&h).summary());

    let klein = QlsDatum::from_exps(&[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]])?;
    let lam = LiftingDatum::trivial(2).with_lambda(0, 1, CycloNumber::from_int(1, 1));
    let h = build_lifting(&klein, &lam)?;
    println!("Z2xZ2 lambda-lifting: dim {}, axioms pass: {}", h.dim(), verify_hopf_axioms(&h).passed());

    // μ must vanish unless g^N is nontrivial and χ^N trivial
    let bad = LiftingDatum::trivial(2).with_mu(0, CycloNumber::from_int(1, 1));
    println!("rejected: {:?}", validate_lifting(&klein, &bad).violations);
    Ok(())
}
