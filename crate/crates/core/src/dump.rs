//! JSON dumps of structure constants. Every table is sparse: a product
//! `b_i b_j = Σ c b_k` becomes rows `(i, j, k, c)`, a coproduct
//! `Δ b_i = Σ c b_j ⊗ b_k` becomes rows `(i, j, k, c)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{tensor_index, tensor_split, Algebra};
use crate::bigalois::{verify_bigalois, BiGaloisRep};
use crate::checks::VerificationReport;
use crate::comodule::{verify_comodule_algebra, ComoduleAlgebraRep};
use crate::error::{Error, Result};
use crate::hopf::{verify_hopf_axioms, HopfAlgebraRep};
use crate::linalg::SparseVec;
use crate::scalar::CycloNumber;

pub type Entry3 = (usize, usize, usize, CycloNumber);
pub type Entry2 = (usize, usize, CycloNumber);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfDump {
    pub conductor: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    pub unit: Vec<(usize, CycloNumber)>,
    pub mult: Vec<Entry3>,
    pub comult: Vec<Entry3>,
    pub counit: Vec<CycloNumber>,
    pub antipode: Vec<Entry2>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleDump {
    pub conductor: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<(usize, CycloNumber)>,
    pub mult: Vec<Entry3>,
    /// `(i, hIdx, jIdx, c)`: `λ(a_i) ∋ c h ⊗ a_j`.
    pub coaction: Vec<Entry3>,
    pub hopf: HopfDump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiGaloisDump {
    pub left: ComoduleDump,
    /// `(i, jIdx, hIdx, c)`: `ρ(b_i) ∋ c b_j ⊗ h`.
    pub right_coaction: Vec<Entry3>,
    pub right_hopf: HopfDump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dump {
    Hopf(HopfDump),
    ComoduleAlgebra(ComoduleDump),
    Bigalois(BiGaloisDump),
}

fn unit_entries(v: &SparseVec) -> Vec<(usize, CycloNumber)> {
    v.iter().map(|(i, c)| (i, c.clone())).collect()
}

fn table3(rows: &[SparseVec], right_dim: usize) -> Vec<Entry3> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (t, c) in row.iter() {
            let (j, k) = tensor_split(t, right_dim);
            out.push((i, j, k, c.clone()));
        }
    }
    out
}

fn table2(rows: &[SparseVec]) -> Vec<Entry2> {
    rows.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().map(move |(j, c)| (i, j, c.clone())))
        .collect()
}

fn check_index(what: &str, idx: usize, bound: usize) -> Result<()> {
    if idx >= bound {
        return Err(Error::Parse(format!("{what}: index {idx} out of range 0..{bound}")));
    }
    Ok(())
}

fn rows3(what: &str, entries: &[Entry3], rows: usize, left: usize, right: usize, c: u32) -> Result<Vec<SparseVec>> {
    let mut out = vec![SparseVec::new(); rows];
    for (i, j, k, coef) in entries {
        check_index(what, *i, rows)?;
        check_index(what, *j, left)?;
        check_index(what, *k, right)?;
        out[*i].add_term(tensor_index(*j, *k, right), &coef.rebase(c)?);
    }
    Ok(out)
}

fn mult_table(n: usize, entries: &[Entry3], c: u32) -> Result<Vec<SparseVec>> {
    let mut table = vec![SparseVec::new(); n * n];
    for (i, j, k, coef) in entries {
        check_index("mult", *i, n)?;
        check_index("mult", *j, n)?;
        check_index("mult", *k, n)?;
        table[i * n + j].add_term(*k, &coef.rebase(c)?);
    }
    Ok(table)
}

fn unit_vec(n: usize, entries: &[(usize, CycloNumber)], c: u32) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (i, coef) in entries {
        check_index("unit", *i, n)?;
        v.add_term(*i, &coef.rebase(c)?);
    }
    Ok(v)
}

fn mult_entries(alg: &Algebra) -> Vec<Entry3> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.basis_product(i, j).iter() {
                out.push((i, j, k, c.clone()));
            }
        }
    }
    out
}

fn check_len(what: &str, got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::Parse(format!("{what} has length {got}, expected {expected}")));
    }
    Ok(())
}

pub fn dump_hopf(h: &HopfAlgebraRep) -> HopfDump {
    let n = h.dim();
    HopfDump {
        conductor: h.conductor(),
        dim: n,
        labels: h.labels().to_vec(),
        degrees: h.degrees().to_vec(),
        unit: unit_entries(h.algebra().unit()),
        mult: mult_entries(h.algebra()),
        comult: table3(h.comult_table(), n),
        counit: h.counit_row().to_dense(n, h.conductor()),
        antipode: table2(h.antipode_table()),
    }
}

pub fn load_hopf(d: &HopfDump) -> Result<HopfAlgebraRep> {
    let (n, c) = (d.dim, d.conductor);
    check_len("labels", d.labels.len(), n)?;
    check_len("degrees", d.degrees.len(), n)?;
    check_len("counit", d.counit.len(), n)?;
    let algebra = Algebra::new(n, c, mult_table(n, &d.mult, c)?, unit_vec(n, &d.unit, c)?)?;
    let comult = rows3("comult", &d.comult, n, n, n, c)?;
    let counit = SparseVec::from_dense(&d.counit.iter().map(|x| x.rebase(c)).collect::<Result<Vec<_>>>()?);
    let mut antipode = vec![SparseVec::new(); n];
    for (i, j, coef) in &d.antipode {
        check_index("antipode", *i, n)?;
        check_index("antipode", *j, n)?;
        antipode[*i].add_term(*j, &coef.rebase(c)?);
    }
    HopfAlgebraRep::from_parts(d.labels.clone(), algebra, comult, counit, antipode, d.degrees.clone())
}

pub fn dump_comodule(a: &ComoduleAlgebraRep) -> ComoduleDump {
    ComoduleDump {
        conductor: a.conductor(),
        dim: a.dim(),
        labels: a.labels().to_vec(),
        unit: unit_entries(a.algebra().unit()),
        mult: mult_entries(a.algebra()),
        coaction: table3(a.coaction_table(), a.dim()),
        hopf: dump_hopf(a.hopf()),
    }
}

pub fn load_comodule(d: &ComoduleDump) -> Result<ComoduleAlgebraRep> {
    let hopf = Arc::new(load_hopf(&d.hopf)?);
    let (n, c) = (d.dim, d.conductor);
    if hopf.conductor() != c {
        return Err(Error::IncompatibleConductor { from: hopf.conductor(), to: c });
    }
    check_len("labels", d.labels.len(), n)?;
    let algebra = Algebra::new(n, c, mult_table(n, &d.mult, c)?, unit_vec(n, &d.unit, c)?)?;
    let coaction = rows3("coaction", &d.coaction, n, hopf.dim(), n, c)?;
    ComoduleAlgebraRep::from_parts(d.labels.clone(), algebra, coaction, hopf)
}

pub fn dump_bigalois(b: &BiGaloisRep) -> BiGaloisDump {
    BiGaloisDump {
        left: dump_comodule(b.algebra()),
        right_coaction: table3(b.rho_table(), b.right_hopf().dim()),
        right_hopf: dump_hopf(b.right_hopf()),
    }
}

pub fn load_bigalois(d: &BiGaloisDump) -> Result<BiGaloisRep> {
    let algebra = load_comodule(&d.left)?;
    let right = Arc::new(load_hopf(&d.right_hopf)?);
    let rho = rows3("right_coaction", &d.right_coaction, d.left.dim, d.left.dim, right.dim(), d.left.conductor)?;
    BiGaloisRep::from_parts(algebra, right, rho)
}

/// Typed deserialization that names the failing field path.
pub fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| Error::Parse(format!("at `{}`: {}", e.path(), e.inner())))
}

impl Dump {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dumps serialize");
        s.push('\n');
        s
    }

    /// Parses a dump. Syntax errors carry line and column, shape errors the
    /// path of the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let kind = value
            .as_object_mut()
            .and_then(|o| o.remove("kind"))
            .ok_or_else(|| Error::Parse("at `kind`: missing dump kind".into()))?;
        Ok(match kind.as_str() {
            Some("hopf") => Dump::Hopf(from_value(value)?),
            Some("comodule_algebra") => Dump::ComoduleAlgebra(from_value(value)?),
            Some("bigalois") => Dump::Bigalois(from_value(value)?),
            _ => return Err(Error::Parse(format!("at `kind`: unknown dump kind {kind}"))),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Dump::Hopf(_) => "hopf",
            Dump::ComoduleAlgebra(_) => "comodule_algebra",
            Dump::Bigalois(_) => "bigalois",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Dump::Hopf(h) => h.dim,
            Dump::ComoduleAlgebra(a) => a.dim,
            Dump::Bigalois(b) => b.left.dim,
        }
    }

    /// Rebuilds the structure and runs the matching axiom sweep.
    pub fn verify(&self) -> Result<VerificationReport> {
        Ok(match self {
            Dump::Hopf(h) => verify_hopf_axioms(&load_hopf(h)?),
            Dump::ComoduleAlgebra(a) => {
                let a = load_comodule(a)?;
                let mut report = VerificationReport::new();
                report.merge("hopf: ", verify_hopf_axioms(a.hopf()));
                report.merge("", verify_comodule_algebra(&a));
                report
            }
            Dump::Bigalois(b) => {
                let b = load_bigalois(b)?;
                let mut report = VerificationReport::new();
                report.merge("left hopf: ", verify_hopf_axioms(b.left_hopf()));
                report.merge("right hopf: ", verify_hopf_axioms(b.right_hopf()));
                report.merge("", verify_bigalois(&b));
                report
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_bosonization, QlsDatum};
    use crate::modcat::{build_a, ModCatDatum};
    use crate::cohomology::TwoCocycle;

    fn sweedler() -> QlsDatum {
        QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap()
    }

    #[test]
    fn hopf_round_trip() {
        let h = build_bosonization(&sweedler()).unwrap();
        let dump = Dump::Hopf(dump_hopf(&h));
        let text = dump.to_json();
        let back = Dump::from_json(&text).unwrap();
        assert_eq!(back, dump);
        assert_eq!(back.to_json(), text);
        let Dump::Hopf(hd) = &back else { unreachable!() };
        let h2 = load_hopf(hd).unwrap();
        assert_eq!(h2.algebra(), h.algebra());
        assert_eq!(h2.comult_table(), h.comult_table());
        assert!(back.verify().unwrap().passed());
    }

    #[test]
    fn comodule_round_trip() {
        let d = sweedler();
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&d.group().whole())).with_xi(0, CycloNumber::one(1));
        let a = build_a(&d, &m).unwrap();
        let dump = Dump::ComoduleAlgebra(dump_comodule(&a));
        let back = Dump::from_json(&dump.to_json()).unwrap();
        assert_eq!(back, dump);
        assert!(back.verify().unwrap().passed());
    }

    #[test]
    fn corrupted_product_fails_verification() {
        let h = build_bosonization(&sweedler()).unwrap();
        let mut hd = dump_hopf(&h);
        let row = hd.mult.iter().position(|e| e.0 == 1 && e.1 == 1).unwrap();
        hd.mult[row].3 = CycloNumber::from_int(1, 2);
        let report = Dump::Hopf(hd).verify().unwrap();
        assert!(!report.passed());
        assert!(report.failures().all(|f| f.witness.is_some()));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = Dump::from_json(r#"{"kind":"hopf","conductor":2,"dim":"x"}"#).unwrap_err();
        assert!(err.to_string().contains("dim"), "{err}");
        let err = Dump::from_json(r#"{"kind":"hopf","bogus":1}"#).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
    }
}
