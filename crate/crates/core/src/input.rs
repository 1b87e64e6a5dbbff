//! Declarative input files: a quantum linear space datum with an optional
//! lifting and an optional module-category datum.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cohomology::TwoCocycle;
use crate::dump::from_value;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::hopf::QlsDatum;
use crate::lifting::LiftingDatum;
use crate::linalg::SparseVec;
use crate::modcat::ModCatDatum;
use crate::scalar::CycloNumber;

/// The JSON schema shipped with the crate, describing [`DatumInput`].
pub const DATUM_SCHEMA: &str = include_str!("../../../schema/datum.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftingInput {
    pub mu: Vec<CycloNumber>,
    pub lambda: Vec<Vec<CycloNumber>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleInput {
    /// `ψ(f_p, f_q)` at `p·|F| + q`, members of `F` in ascending index order.
    pub table: Vec<CycloNumber>,
    #[serde(rename = "classTag", default, skip_serializing_if = "Option::is_none")]
    pub class_tag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModCatInput {
    /// Generators of `F`.
    pub subgroup: Vec<GroupElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<CocycleInput>,
    /// Basis of `W`, one row of length `θ` per vector.
    pub w: Vec<Vec<CycloNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<CycloNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<CycloNumber>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumInput {
    pub group: GroupInput,
    pub g: Vec<Vec<i64>>,
    pub chi: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lifting: Option<LiftingInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modcat: Option<ModCatInput>,
}

/// A parsed and type-checked input file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub datum: QlsDatum,
    pub lifting: Option<LiftingDatum>,
    pub modcat: Option<ModCatDatum>,
}

impl DatumInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        from_value(value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inputs serialize")
    }

    /// Canonical bytes used as the cache key.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("inputs serialize")
    }

    pub fn from_datum(d: &QlsDatum) -> Self {
        DatumInput {
            group: GroupInput {
                orders: d.group().orders().to_vec(),
            },
            g: d.g_all().iter().map(|g| g.exps.iter().map(|&e| e as i64).collect()).collect(),
            chi: d.chi_all().iter().map(|c| c.exps.iter().map(|&e| e as i64).collect()).collect(),
            lifting: None,
            modcat: None,
        }
    }

    pub fn with_lifting(mut self, l: &LiftingDatum) -> Self {
        self.lifting = Some(LiftingInput {
            mu: l.mu.clone(),
            lambda: l.lam.clone(),
        });
        self
    }

    pub fn with_modcat(mut self, d: &QlsDatum, m: &ModCatDatum) -> Self {
        let theta = d.theta();
        self.modcat = Some(ModCatInput {
            subgroup: m.subgroup().generators(),
            psi: Some(cocycle_input(m.psi())),
            w: m.w().iter().map(|v| v.to_dense(theta, 1)).collect(),
            xi: Some(m.xi().to_vec()),
            alpha: Some(m.alpha_matrix().to_vec()),
        });
        self
    }

    pub fn resolve(&self) -> Result<Problem> {
        let group = AbelianGroup::new(self.group.orders.clone())?;
        let g = self
            .g
            .iter()
            .enumerate()
            .map(|(i, e)| group.element(e).map_err(|err| Error::Parse(format!("at `g[{i}]`: {err}"))))
            .collect::<Result<Vec<_>>>()?;
        let chi = self
            .chi
            .iter()
            .enumerate()
            .map(|(i, e)| group.character(e).map_err(|err| Error::Parse(format!("at `chi[{i}]`: {err}"))))
            .collect::<Result<Vec<_>>>()?;
        let datum = QlsDatum::new(group, g, chi)?;
        let theta = datum.theta();
        let lifting = self
            .lifting
            .as_ref()
            .map(|l| LiftingDatum {
                mu: l.mu.clone(),
                lam: l.lambda.clone(),
            });
        if let Some(l) = &lifting {
            if l.mu.len() != theta || l.lam.len() != theta || l.lam.iter().any(|r| r.len() != theta) {
                return Err(Error::Parse(format!("at `lifting`: expected {theta} values of mu and a {theta}x{theta} lambda")));
            }
        }
        let modcat = self.modcat.as_ref().map(|m| resolve_modcat(&datum, m)).transpose()?;
        Ok(Problem { datum, lifting, modcat })
    }
}

pub fn cocycle_input(psi: &TwoCocycle) -> CocycleInput {
    let f = psi.subgroup().member_indices();
    let table = f
        .iter()
        .flat_map(|&a| f.iter().map(move |&b| psi.eval_idx(a, b)))
        .collect();
    CocycleInput {
        table,
        class_tag: Some(psi.class_tag().to_string()),
    }
}

/// Reads a dense table of roots of unity back into exponent form.
pub fn resolve_cocycle(f: &crate::group::Subgroup, input: &CocycleInput) -> Result<TwoCocycle> {
    let c = input.table.iter().fold(1u32, |l, v| l.lcm(&v.conductor()));
    let exps = input
        .table
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let v = v.rebase(c)?;
            (0..c)
                .find(|&k| CycloNumber::root_of_unity(c, k as i64) == v)
                .ok_or_else(|| Error::Parse(format!("at `psi.table[{i}]`: {v} is not a root of unity")))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = TwoCocycle::from_exponents(f, c, exps).map_err(|e| Error::Parse(format!("at `psi.table`: {e}")))?;
    if let Some(tag) = &input.class_tag {
        if tag != psi.class_tag() {
            return Err(Error::Parse(format!(
                "at `psi.classTag`: table has class {}, file says {tag}",
                psi.class_tag()
            )));
        }
    }
    Ok(psi)
}

fn resolve_modcat(d: &QlsDatum, m: &ModCatInput) -> Result<ModCatDatum> {
    let group = d.group();
    let f = group
        .subgroup_generated_by(&m.subgroup)
        .map_err(|e| Error::Parse(format!("at `modcat.subgroup`: {e}")))?;
    let psi = match &m.psi {
        Some(p) => resolve_cocycle(&f, p)?,
        None => TwoCocycle::trivial(&f),
    };
    let theta = d.theta();
    let w = m
        .w
        .iter()
        .enumerate()
        .map(|(k, row)| {
            if row.len() != theta {
                return Err(Error::Parse(format!("at `modcat.w[{k}]`: expected {theta} coordinates")));
            }
            Ok(SparseVec::from_dense(row))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = w.len();
    let xi = m.xi.clone().unwrap_or_else(|| vec![CycloNumber::zero(1); s]);
    let alpha = m.alpha.clone().unwrap_or_else(|| vec![vec![CycloNumber::zero(1); s]; s]);
    ModCatDatum::new(w, psi, xi, alpha).map_err(|e| Error::Parse(format!("at `modcat`: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::validate_modcat_datum;

    const SWEEDLER: &str = r#"{"group":{"orders":[2]},"g":[[1]],"chi":[[1]],
        "modcat":{"subgroup":[{"exps":[1]}],"w":[[{"L":1,"c":["1"]}]],"xi":[{"L":1,"c":["3/2"]}]}}"#;

    #[test]
    fn sweedler_file_resolves() {
        let p = DatumInput::from_json(SWEEDLER).unwrap().resolve().unwrap();
        assert_eq!(p.datum.n_all(), vec![2]);
        let m = p.modcat.unwrap();
        assert_eq!(m.subgroup().order(), 2);
        assert!(validate_modcat_datum(&p.datum, &m).valid);
    }

    #[test]
    fn round_trip_through_input() {
        let p = DatumInput::from_json(SWEEDLER).unwrap().resolve().unwrap();
        let m = p.modcat.unwrap();
        let again = DatumInput::from_datum(&p.datum).with_modcat(&p.datum, &m);
        let q = DatumInput::from_json(&again.to_json()).unwrap().resolve().unwrap();
        assert_eq!(q.modcat.unwrap(), m);
    }

    #[test]
    fn klein_cocycle_table_is_read_back() {
        let d = QlsDatum::from_exps(&[2, 2], &[&[1, 0]], &[&[1, 0]]).unwrap();
        let classes = crate::cohomology::cocycle_classes(&d.group().whole());
        let nontrivial = classes.iter().find(|c| !c.is_cohomologically_trivial()).unwrap();
        let back = resolve_cocycle(&d.group().whole(), &cocycle_input(nontrivial)).unwrap();
        assert_eq!(&back, nontrivial);
    }

    #[test]
    fn diagnostics_point_at_the_field() {
        let err = DatumInput::from_json(r#"{"group":{"orders":[2]},"g":[[1]],"chi":[["x"]]}"#).unwrap_err();
        assert!(err.to_string().contains("chi[0][0]"), "{err}");
        let err = DatumInput::from_json("{\"group\":\n{\"orders\":[2]},").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = DatumInput::from_json(r#"{"group":{"orders":[2]},"g":[[1]],"chi":[[1]],"extra":0}"#).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn schema_lists_the_accepted_fields() {
        let schema: serde_json::Value = serde_json::from_str(DATUM_SCHEMA).unwrap();
        let props: Vec<&str> = schema["properties"].as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let sample = serde_json::to_value(DatumInput::from_json(SWEEDLER).unwrap().with_lifting(&LiftingDatum::trivial(1))).unwrap();
        let mut keys: Vec<&str> = sample.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        let mut props_sorted = props.clone();
        props_sorted.sort_unstable();
        assert_eq!(keys, props_sorted);
        let modcat_props = schema["properties"]["modcat"]["properties"].as_object().unwrap();
        for k in sample["modcat"].as_object().unwrap().keys() {
            assert!(modcat_props.contains_key(k), "{k}");
        }
        assert_eq!(schema["additionalProperties"], serde_json::Value::Bool(false));
    }
}
