//! Transports module categories from U to a lifting through the cotensor with
//! a biGalois object, and compares the two sides.

use qlsmodcat::bigalois::{build_bigalois, transport, verify_bigalois};
use qlsmodcat::classification::{enumerate_modcat_data, w_label, SweepOptions};
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::lifting::LiftingDatum;
use qlsmodcat::scalar::CycloNumber;
use qlsmodcat::simplicity::DEFAULT_SEED;

fn main() -> qlsmodcat::Result<()> {
    let d = QlsDatum::from_exps(&[4], &[&[1]], &[&[2]])?;
    let l = LiftingDatum::trivial(1).with_mu(0, CycloNumber::from_int(1, 1));
    let b = build_bigalois(&d, &l)?;
    println!("B: dim {}, {}", b.dim(), verify_bigalois(&b).summary());

    for m in enumerate_modcat_data(&d, &SweepOptions::default())? {
        let t = transport(&d, &l, &m, DEFAULT_SEED)?;
        let r = &t.report;
        let xi: Vec<String> = m.xi().iter().map(|x| x.to_string()).collect();
        println!(
            "F={} W={} xi=[{}]: dim {} -> {}, {} -> {}, simples {:?} -> {:?}, structure {}, blocks {}",
            m.subgroup().label(),
            w_label(m.w()),
            xi.join(","),
            r.dim_before,
            r.dim_after,
            r.simplicity_before,
            r.simplicity_after,
            r.blocks_before.simple_dims(),
            r.blocks_after.simple_dims(),
            r.structure_preserved(),
            r.blocks_preserved()
        );
    }
    Ok(())
}
