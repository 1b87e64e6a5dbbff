//! Exterior-algebra data: A is the Clifford algebra of a symmetric form, smashed with kF.

use qlsmodcat::clifford::exterior_clifford_check;
use qlsmodcat::cohomology::TwoCocycle;
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::modcat::{build_a, ModCatDatum};
use qlsmodcat::scalar::CycloNumber;
use qlsmodcat::simplicity::{simple_modules, DEFAULT_SEED};

fn main() -> qlsmodcat::Result<()> {
    let d = QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]])?;
    let f = d.group().subgroup_generated_by(&[])?;
    let int = |v| CycloNumber::from_int(1, v);
    for (x1, x2, a12) in [(1, 1, 0), (1, -1, 0), (0, 0, 2), (0, 0, 0)] {
        let m = ModCatDatum::coordinate(&[0, 1], TwoCocycle::trivial(&f))
            .with_xi(0, int(x1))
            .with_xi(1, int(x2))
            .with_alpha(0, 1, int(a12));
        let v = exterior_clifford_check(&d, &m)?;
        let beta: Vec<Vec<String>> = v.beta.iter().map(|r| r.iter().map(|b| b.to_string()).collect()).collect();
        let blocks = simple_modules(build_a(&d, &m)?.algebra(), DEFAULT_SEED);
        println!(
            "xi=({x1},{x2}) alpha12={a12}: beta {beta:?}, nondegenerate {}, iso {}, simples {:?}, radical {}",
            v.nondegenerate,
            v.iso,
            blocks.simple_dims(),
            blocks.radical_dim
        );
    }
    Ok(())
}
