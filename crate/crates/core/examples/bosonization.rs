//! Builds U = 𝔅(V) # kΓ for a quantum linear space and checks every Hopf axiom.

use qlsmodcat::hopf::{bosonization_system, build_bosonization, verify_hopf_axioms, QlsDatum};

fn main() -> qlsmodcat::Result<()> {
    // Z4 with one generator g = 1 and χ(g) = -1, so x^2 = 0
    let d = QlsDatum::from_exps(&[4], &[&[1]], &[&[2]])?;
    println!("{}", d.validate().summary());
    let q: Vec<Vec<String>> = d.q_matrix().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect();
    println!("q = {q:?}");

    let sys = bosonization_system(&d)?;
    println!("rewriting system: {} monomials, confluent {}", sys.monomial_count(), sys.check_confluence(&[0]).is_ok());

    let u = build_bosonization(&d)?;
    println!("dim U = {}", u.dim());
    for (i, label) in u.labels().iter().enumerate() {
        println!("  {i:>2} {label} (degree {})", u.degrees()[i]);
    }
    println!("{}", verify_hopf_axioms(&u).summary());
    Ok(())
}
