//! Checks that a flag of right coideal subalgebras is generated in degree one.

use qlsmodcat::generation::{check_degree_one_generation, nichols_flag};
use qlsmodcat::hopf::{build_bosonization, QlsDatum};
use qlsmodcat::linalg::SparseVec;
use qlsmodcat::scalar::CycloNumber;

fn main() -> qlsmodcat::Result<()> {
    let d = QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]])?;
    let u = build_bosonization(&d)?;
    let one = CycloNumber::from_int(1, 1);
    let ws = [
        ("<x1>", vec![SparseVec::unit(0, 1)]),
        ("<x1,x2>", vec![SparseVec::unit(0, 1), SparseVec::unit(1, 1)]),
        ("<x1+x2>", vec![SparseVec::from_dense(&[one.clone(), one])]),
    ];
    for (name, w) in ws {
        let v = check_degree_one_generation(&d, &u, &nichols_flag(&u, &w))?;
        println!("W = {name}: flag {:?}, generated {:?}, passed {}", v.flag_dims, v.generated_dims, v.passed);
    }

    // x1 and x1x2 without x2 is closed under products but not a coideal
    let lay = u.layout().expect("bosonization layout");
    let fake = vec![
        vec![u.algebra().unit().clone()],
        vec![SparseVec::unit(lay.generator(0), 2)],
        vec![SparseVec::unit(lay.index(&[1, 1], 0), 2)],
    ];
    match check_degree_one_generation(&d, &u, &fake) {
        Err(e) => println!("fabricated flag rejected: {e}"),
        Ok(v) => println!("fabricated flag accepted: {v:?}"),
    }
    Ok(())
}
