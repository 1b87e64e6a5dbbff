//! Writes an input file, drives the command line in-process, and reloads the dumps.

use qlsmodcat::cli::run_command;
use qlsmodcat::dump::Dump;
use qlsmodcat::hopf::QlsDatum;
use qlsmodcat::input::DatumInput;
use qlsmodcat::lifting::LiftingDatum;
use qlsmodcat::scalar::CycloNumber;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("qlsmodcat-example");
    std::fs::create_dir_all(&dir)?;
    let d = QlsDatum::from_exps(&[4], &[&[1]], &[&[2]])?;
    let input = DatumInput::from_datum(&d).with_lifting(&LiftingDatum::trivial(1).with_mu(0, CycloNumber::from_int(1, 1)));
    let path = dir.join("z4.json");
    std::fs::write(&path, input.to_json())?;
    println!("{}", input.to_json());

    for cmd in ["validate", "build-hopf", "build-lifting"] {
        let out = dir.join(format!("{cmd}.json"));
        let mut argv = vec!["qlsmodcat".to_string(), "--no-cache".into(), cmd.into(), path.display().to_string()];
        if cmd != "validate" {
            argv.extend(["-o".into(), out.display().to_string()]);
        }
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let code = run_command(argv, &mut stdout, &mut stderr);
        print!("$ qlsmodcat {cmd}: exit {code}\n{}{}", String::from_utf8_lossy(&stdout), String::from_utf8_lossy(&stderr));
        if cmd != "validate" {
            let dump = Dump::from_json(&std::fs::read_to_string(&out)?)?;
            println!("reloaded {} dump of dim {}: verified {}", dump.kind(), dump.dim(), dump.verify()?.passed());
        }
    }
    Ok(())
}
