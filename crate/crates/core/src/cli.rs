//! Command-line front end. `run_command` is the whole program; the binary
//! only forwards `argv` and the exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bigalois::transport;
use crate::cache::{cache_key, Cache, CacheStatus};
use crate::checks::VerificationReport;
use crate::classification::{classification_report, SweepOptions, DEFAULT_MAX_GROUP_ORDER};
use crate::comodule::verify_comodule_algebra;
use crate::dump::{dump_comodule, dump_hopf, load_hopf, Dump};
use crate::error::Error;
use crate::hopf::{build_bosonization, verify_hopf_axioms, QlsDatum};
use crate::input::{DatumInput, Problem};
use crate::lifting::{build_lifting, validate_lifting, LiftingDatum};
use crate::modcat::{build_a, validate_modcat_datum, ModCatDatum};
use crate::scalar::{parse_rational, CycloNumber};
use crate::simplicity::{check_simplicity, simple_modules, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qlsmodcat", version, about = "Quantum linear spaces, their liftings, and exact module categories")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Comma separated scalar sample for the free parameters, e.g. `0,1,-1/2`.
    #[arg(long, global = true, default_value = "0,1")]
    sample: String,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    max_group_order: usize,
    /// Enlarge the working cyclotomic conductor to a multiple of this value.
    #[arg(long, global = true)]
    conductor: Option<u32>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Treat cohomologous but unequal cocycles as distinct.
    #[arg(long, global = true)]
    strict_cocycle: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the datum and, when present, its lifting and module-category data.
    Validate { input: PathBuf },
    /// Build the bosonization U and write its structure constants.
    BuildHopf(BuildArgs),
    /// Build the lifting named in the input file.
    BuildLifting(BuildArgs),
    /// Build the comodule algebra of the input's module-category datum.
    BuildAlgebra(BuildArgs),
    /// Enumerate module-category data over the sample and group them.
    Classify(BuildArgs),
    /// Move the input's module-category datum across to its lifting.
    Transport(BuildArgs),
    /// Reload a dump and rerun its axiom sweep.
    Verify { dump: PathBuf },
}

#[derive(Debug, Args)]
struct BuildArgs {
    input: PathBuf,
    /// Artifact path; nothing is written when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

/// A failed run: exit code and diagnostic.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::ValidationFailed(_)
            | Error::SizeBound { .. }
            | Error::ParentMismatch
            | Error::NotInSubgroup(_)
            | Error::OutOfRange(_)
            | Error::DimensionMismatch { .. }
            | Error::NotExteriorDatum(_)
            | Error::Io(_) => EXIT_INVALID,
            _ => EXIT_VERIFICATION,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Session<'a> {
    opts: GlobalOpts,
    cache: Cache,
    out: &'a mut dyn Write,
}

pub fn parse_sample(text: &str) -> crate::Result<Vec<CycloNumber>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).map(|r| CycloNumber::from_rational(1, r)))
        .collect()
}

/// Runs one invocation and returns its exit code. Summaries go to `out`,
/// diagnostics to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let cache = if cli.global.no_cache { Cache::disabled() } else { Cache::from_env() };
    let mut session = Session {
        opts: cli.global,
        cache,
        out,
    };
    match session.dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn write_artifact(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_input(path: &Path) -> std::result::Result<(DatumInput, Problem), Failure> {
    let text = read_file(path)?;
    let input = DatumInput::from_json(&text).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    let problem = input.resolve().map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    Ok((input, problem))
}

fn require<T>(what: &str, v: Option<T>) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure(EXIT_INVALID, format!("input has no `{what}` section")))
}

fn verification_code(report: &VerificationReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

impl Session<'_> {
    fn emit(&mut self, text: &str, value: serde_json::Value) -> std::result::Result<(), Failure> {
        let res = match self.opts.format {
            Format::Text => writeln!(self.out, "{}", text.trim_end()),
            Format::Json => writeln!(self.out, "{}", serde_json::to_string_pretty(&value).expect("json")),
        };
        res.map_err(|e| Failure(EXIT_INVALID, e.to_string()))
    }

    fn datum(&self, p: &Problem) -> std::result::Result<QlsDatum, Failure> {
        p.datum.group().check_bound(self.opts.max_group_order)?;
        let report = p.datum.validate();
        if !report.valid {
            return Err(Failure(EXIT_INVALID, report.summary()));
        }
        Ok(match self.opts.conductor {
            Some(l) => p.datum.clone().with_conductor(l),
            None => p.datum.clone(),
        })
    }

    fn dispatch(&mut self, cmd: Command) -> Outcome {
        match cmd {
            Command::Validate { input } => self.validate(&input),
            Command::BuildHopf(a) => self.build_hopf(&a),
            Command::BuildLifting(a) => self.build_lifting(&a),
            Command::BuildAlgebra(a) => self.build_algebra(&a),
            Command::Classify(a) => self.classify(&a),
            Command::Transport(a) => self.transport(&a),
            Command::Verify { dump } => self.verify(&dump),
        }
    }

    fn validate(&mut self, path: &Path) -> Outcome {
        let (_, p) = load_input(path)?;
        p.datum.group().check_bound(self.opts.max_group_order)?;
        let datum = p.datum.validate();
        let mut lines = vec![datum.summary()];
        let mut valid = datum.valid;
        let mut value = json!({ "datum": datum });
        if let Some(l) = &p.lifting {
            let r = validate_lifting(&p.datum, l);
            lines.push(format!("lifting: {}", if r.valid { "valid".to_string() } else { format!("invalid {:?}", r.violations) }));
            valid &= r.valid;
            value["lifting"] = json!(r);
        }
        if let Some(m) = &p.modcat {
            let r = validate_modcat_datum(&p.datum, m);
            lines.push(format!("modcat: {}", r.summary()));
            valid &= r.valid;
            value["modcat"] = json!(r);
        }
        self.emit(&lines.join("\n"), value)?;
        Ok(if valid { EXIT_OK } else { EXIT_INVALID })
    }

    fn cached(&self, op: &str, input: &DatumInput, d: &QlsDatum, build: impl FnOnce() -> crate::Result<Dump>) -> std::result::Result<(Dump, CacheStatus), Failure> {
        let key = cache_key(op, d.conductor(), &input.canonical_bytes());
        Ok(self.cache.get_or_build(&key, build)?)
    }

    fn hopf_outcome(&mut self, name: &str, args: &BuildArgs, dump: Dump, status: CacheStatus) -> Outcome {
        let Dump::Hopf(hd) = &dump else {
            return Err(Failure(EXIT_VERIFICATION, "cached entry has the wrong kind".into()));
        };
        let h = load_hopf(hd)?;
        let report = verify_hopf_axioms(&h);
        let text = dump.to_json();
        write_artifact(args.out.as_deref(), &text)?;
        let summary = format!(
            "{name}: dim {}, conductor {}, filtration {:?}, cache {}\naxioms: {}",
            h.dim(),
            h.conductor(),
            h.filtration_dims(),
            status.label(),
            report.summary()
        );
        let value = json!({
            "name": name,
            "dim": h.dim(),
            "conductor": h.conductor(),
            "filtration": h.filtration_dims(),
            "cache": status.label(),
            "report": report,
        });
        self.emit(&summary, value)?;
        Ok(verification_code(&report))
    }

    fn build_hopf(&mut self, args: &BuildArgs) -> Outcome {
        let (_, p) = load_input(&args.input)?;
        let d = self.datum(&p)?;
        let key_input = DatumInput::from_datum(&p.datum);
        let (dump, status) = self.cached("build-hopf", &key_input, &d, || Ok(Dump::Hopf(dump_hopf(&build_bosonization(&d)?))))?;
        self.hopf_outcome("U", args, dump, status)
    }

    fn build_lifting(&mut self, args: &BuildArgs) -> Outcome {
        let (_, p) = load_input(&args.input)?;
        let d = self.datum(&p)?;
        let l: LiftingDatum = require("lifting", p.lifting.clone())?;
        let report = validate_lifting(&p.datum, &l);
        if !report.valid {
            return Err(Failure(EXIT_INVALID, format!("invalid lifting: {:?}", report.violations)));
        }
        let d = d.with_conductor(l.conductor());
        let key_input = DatumInput::from_datum(&p.datum).with_lifting(&l);
        let (dump, status) = self.cached("build-lifting", &key_input, &d, || Ok(Dump::Hopf(dump_hopf(&build_lifting(&d, &l)?))))?;
        self.hopf_outcome("H", args, dump, status)
    }

    fn build_algebra(&mut self, args: &BuildArgs) -> Outcome {
        let (_, p) = load_input(&args.input)?;
        let d = self.datum(&p)?;
        let m: ModCatDatum = require("modcat", p.modcat.clone())?;
        let a = build_a(&d, &m)?;
        let axioms = verify_comodule_algebra(&a);
        let verdict = check_simplicity(&a, self.opts.seed);
        let blocks = simple_modules(a.algebra(), self.opts.seed);
        let text = Dump::ComoduleAlgebra(dump_comodule(&a)).to_json();
        write_artifact(args.out.as_deref(), &text)?;
        let summary = format!(
            "A: dim {} over U of dim {}, F = {}, psi {}\naxioms: {}\nsimplicity: {}\nradical {}, blocks {:?}",
            a.dim(),
            a.hopf().dim(),
            m.subgroup().label(),
            m.psi().class_tag(),
            axioms.summary(),
            verdict.label(),
            blocks.radical_dim,
            blocks.blocks.iter().map(|b| (b.simple_dim, b.multiplicity)).collect::<Vec<_>>()
        );
        let value = json!({
            "dim": a.dim(),
            "hopf_dim": a.hopf().dim(),
            "report": axioms,
            "simplicity": verdict,
            "blocks": blocks,
        });
        self.emit(&summary, value)?;
        Ok(verification_code(&axioms))
    }

    fn classify(&mut self, args: &BuildArgs) -> Outcome {
        let (_, p) = load_input(&args.input)?;
        let d = self.datum(&p)?;
        let opts = SweepOptions {
            sample: parse_sample(&self.opts.sample)?,
            max_group_order: self.opts.max_group_order,
            strict_cocycle: self.opts.strict_cocycle,
            seed: self.opts.seed,
            ..SweepOptions::default()
        };
        let report = classification_report(&d, &opts)?;
        let mut json_text = report.to_json();
        json_text.push('\n');
        write_artifact(args.out.as_deref(), &json_text)?;
        let value: serde_json::Value = serde_json::from_str(&json_text).expect("report json");
        self.emit(&report.to_text(), value)?;
        Ok(EXIT_OK)
    }

    fn transport(&mut self, args: &BuildArgs) -> Outcome {
        let (_, p) = load_input(&args.input)?;
        let d = self.datum(&p)?;
        let l = require("lifting", p.lifting.clone())?;
        let m = require("modcat", p.modcat.clone())?;
        let t = transport(&d, &l, &m, self.opts.seed)?;
        let text = Dump::ComoduleAlgebra(dump_comodule(&t.cotensor.algebra)).to_json();
        write_artifact(args.out.as_deref(), &text)?;
        let r = &t.report;
        let pairs = |b: &crate::simplicity::SimpleModulesReport| b.blocks.iter().map(|x| (x.simple_dim, x.multiplicity)).collect::<Vec<_>>();
        let summary = format!(
            "transport: dim {} -> {}, simplicity {} -> {}, coinvariants {}\n\
             blocks: radical {} {:?} -> radical {} {:?} ({})\n\
             comodule axioms: {}\nbigalois: {}",
            r.dim_before,
            r.dim_after,
            r.simplicity_before,
            r.simplicity_after,
            r.coinvariants_dim,
            r.blocks_before.radical_dim,
            pairs(&r.blocks_before),
            r.blocks_after.radical_dim,
            pairs(&r.blocks_after),
            if r.blocks_preserved() { "preserved" } else { "changed" },
            r.axioms.summary(),
            r.bigalois.summary()
        );
        let value = json!({
            "report": r,
            "structure_preserved": r.structure_preserved(),
            "blocks_preserved": r.blocks_preserved(),
        });
        self.emit(&summary, value)?;
        Ok(if r.structure_preserved() { EXIT_OK } else { EXIT_VERIFICATION })
    }

    fn verify(&mut self, path: &Path) -> Outcome {
        let text = read_file(path)?;
        let dump = Dump::from_json(&text).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
        let report = dump.verify()?;
        let mut lines = vec![format!("{} of dim {}: {}", dump.kind(), dump.dim(), report.summary())];
        for f in report.failures() {
            lines.push(format!("  {}: {}", f.axiom, f.witness.as_deref().unwrap_or("-")));
        }
        self.emit(&lines.join("\n"), json!({ "kind": dump.kind(), "report": report }))?;
        Ok(verification_code(&report))
    }
}
