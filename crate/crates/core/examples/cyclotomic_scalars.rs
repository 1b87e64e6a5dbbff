//! Exact arithmetic in Q(ζ_L).

use qlsmodcat::scalar::{cyclotomic_polynomial, field_arith, CycloNumber, FieldOp};

fn main() -> qlsmodcat::Result<()> {
    let z = CycloNumber::root_of_unity(12, 1);
    println!("Phi_12 coefficients: {:?}", cyclotomic_polynomial(12));
    println!("zeta_12^12 = {}", z.pow(12));
    println!("zeta_12^3 = {} has order {:?}", z.pow(3), z.pow(3).root_order());

    // a cube root of unity lives at conductor 3; mixing with i meets at 12
    let w = CycloNumber::root_of_unity(3, 1);
    let i = CycloNumber::root_of_unity(4, 1);
    let p = field_arith(&w, &i, FieldOp::Mul)?;
    println!("omega * i = {} (conductor {})", p, p.conductor());

    let inv = (&CycloNumber::one(12) + &z).inverse()?;
    println!("1/(1 + zeta_12) = {inv}");
    println!("json: {}", inv.to_json());
    assert_eq!(CycloNumber::from_json(&inv.to_json())?, inv);
    Ok(())
}
