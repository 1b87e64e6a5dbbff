//! Sweeps every module-category datum over a small sample of scalars.
//! Pass `--json` for the machine-readable report.

use qlsmodcat::classification::{classification_report, SweepOptions};
use qlsmodcat::hopf::QlsDatum;

fn main() -> qlsmodcat::Result<()> {
    let json = std::env::args().any(|a| a == "--json");
    for d in [
        QlsDatum::from_exps(&[2], &[&[1]], &[&[1]])?,
        QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]])?,
    ] {
        let r = classification_report(&d, &SweepOptions::default())?;
        println!("{}", if json { r.to_json() } else { r.to_text() });
    }
    Ok(())
}
