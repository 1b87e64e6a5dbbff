//! Enumeration of classification data for a quantum linear space, dedupe of
//! equivalent data, and the grouped report.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{cocycle_classes, TwoCocycle};
use crate::comodule::coinvariants;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::hopf::QlsDatum;
use crate::linalg::SparseVec;
use crate::modcat::{build_a, expected_dim, free_parameters, validate_modcat_datum, ModCatDatum};
use crate::scalar::CycloNumber;
use crate::simplicity::{check_simplicity, simple_modules, Block, DEFAULT_SEED};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub sample: Vec<CycloNumber>,
    pub max_group_order: usize,
    /// Non-coordinate subspaces of `V` to sweep besides the coordinate ones.
    pub extra_w: Vec<Vec<SparseVec>>,
    /// Compare cocycles by raw table rather than by class.
    pub strict_cocycle: bool,
    pub seed: u64,
    /// Build each representative and record dimension, simplicity and blocks.
    pub analyse: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            sample: vec![CycloNumber::zero(1), CycloNumber::one(1)],
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            extra_w: Vec::new(),
            strict_cocycle: false,
            seed: DEFAULT_SEED,
            analyse: true,
        }
    }
}

impl SweepOptions {
    pub fn with_sample(mut self, sample: Vec<CycloNumber>) -> Self {
        self.sample = sample;
        self
    }
}

fn dedup_sample(sample: &[CycloNumber]) -> Vec<CycloNumber> {
    let mut out: Vec<CycloNumber> = Vec::new();
    for c in sample {
        if !out.contains(c) {
            out.push(c.clone());
        }
    }
    out
}

/// One sweep cell: a subgroup, a cocycle class representative and a `W`.
struct Cell {
    psi: TwoCocycle,
    w: Vec<SparseVec>,
}

fn coordinate_subsets(theta: usize) -> Vec<Vec<SparseVec>> {
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << theta)
        .map(|mask| (0..theta).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    subsets
        .into_iter()
        .map(|s| s.into_iter().map(|i| SparseVec::unit(i, 1)).collect())
        .collect()
}

fn cells(d: &QlsDatum, opts: &SweepOptions) -> Result<Vec<Cell>> {
    let group = d.group();
    group.check_bound(opts.max_group_order)?;
    if d.theta() > 16 {
        return Err(Error::SizeBound {
            order: 1 << d.theta(),
            bound: 1 << 16,
        });
    }
    let mut ws = coordinate_subsets(d.theta());
    ws.extend(opts.extra_w.iter().cloned());
    let mut out = Vec::new();
    for f in group.enumerate_subgroups(opts.max_group_order)? {
        for psi in cocycle_classes(&f) {
            for w in &ws {
                if validate_modcat_datum(d, &zero_parameters(w, &psi)?).valid {
                    out.push(Cell { psi: psi.clone(), w: w.clone() });
                }
            }
        }
    }
    Ok(out)
}

fn zero_parameters(w: &[SparseVec], psi: &TwoCocycle) -> Result<ModCatDatum> {
    let s = w.len();
    ModCatDatum::new(
        w.to_vec(),
        psi.clone(),
        vec![CycloNumber::zero(1); s],
        vec![vec![CycloNumber::zero(1); s]; s],
    )
}

/// Every `(ξ, α)` with entries from the sample on the free positions.
fn sweep_cell(d: &QlsDatum, cell: &Cell, sample: &[CycloNumber]) -> Result<Vec<ModCatDatum>> {
    let base = zero_parameters(&cell.w, &cell.psi)?;
    let (fx, fa) = free_parameters(d, &base)?;
    let slots = fx.len() + fa.len();
    let total = sample.len().checked_pow(slots as u32).ok_or(Error::SizeBound {
        order: usize::MAX,
        bound: 1 << 20,
    })?;
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut m = base.clone();
        for &k in &fx {
            m = m.with_xi(k, sample[code % sample.len()].clone());
            code /= sample.len();
        }
        for &(k, l) in &fa {
            m = m.with_alpha(k, l, sample[code % sample.len()].clone());
            code /= sample.len();
        }
        debug_assert!(validate_modcat_datum(d, &m).valid);
        out.push(m);
    }
    Ok(out)
}

pub fn enumerate_modcat_data(d: &QlsDatum, opts: &SweepOptions) -> Result<Vec<ModCatDatum>> {
    let sample = dedup_sample(&opts.sample);
    let cells = cells(d, opts)?;
    let per_cell: Vec<Vec<ModCatDatum>> = cells
        .par_iter()
        .map(|c| sweep_cell(d, c, &sample))
        .collect::<Result<_>>()?;
    Ok(per_cell.into_iter().flatten().collect())
}

fn same_subgroup(a: &Subgroup, b: &Subgroup) -> bool {
    a.member_indices() == b.member_indices()
}

/// Equal data in the sense of the equivalence theorem; cocycles compare by
/// class unless `strict`.
pub fn equivalent_data(a: &ModCatDatum, b: &ModCatDatum, strict: bool) -> bool {
    let psi_eq = if strict {
        a.psi().exponent_table() == b.psi().exponent_table()
    } else {
        a.psi().class_tag() == b.psi().class_tag()
    };
    same_subgroup(a.subgroup(), b.subgroup())
        && psi_eq
        && a.w() == b.w()
        && a.xi() == b.xi()
        && a.alpha_matrix() == b.alpha_matrix()
}

/// First representative of each equivalence class, in input order.
pub fn dedupe(data: &[ModCatDatum], strict: bool) -> Vec<ModCatDatum> {
    let mut reps: Vec<ModCatDatum> = Vec::new();
    for m in data {
        if !reps.iter().any(|r| equivalent_data(r, m, strict)) {
            reps.push(m.clone());
        }
    }
    reps
}

pub fn w_label(w: &[SparseVec]) -> String {
    if w.is_empty() {
        return "0".into();
    }
    let vecs: Vec<String> = w
        .iter()
        .map(|v| {
            let mut s = String::new();
            for (i, c) in v.iter() {
                if !s.is_empty() {
                    s.push('+');
                }
                if !c.is_one() {
                    let _ = write!(s, "({c})");
                }
                let _ = write!(s, "x{}", i + 1);
            }
            s
        })
        .collect();
    format!("<{}>", vecs.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representative {
    pub xi: Vec<String>,
    /// `α_kl` for `k < l`, keyed `"k,l"` with 1-based indices.
    pub alpha: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coinvariants_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub subgroup: String,
    pub psi_class: String,
    pub w: String,
    pub discrete: usize,
    pub free_xi: usize,
    pub free_alpha: usize,
    pub dim: usize,
    /// Set when `W` is not spanned by coordinate vectors. Such rows are
    /// compared on the nose, so two of them may still give equivalent
    /// categories through an `F`-equivariant automorphism of `V`.
    #[serde(default)]
    pub open_equivalence: bool,
    pub representatives: Vec<Representative>,
}

impl ClassificationRow {
    pub fn free_parameters(&self) -> usize {
        self.free_xi + self.free_alpha
    }

    fn verdicts(&self) -> String {
        let mut seen: Vec<&str> = Vec::new();
        for r in &self.representatives {
            if let Some(v) = r.simplicity.as_deref() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        if seen.is_empty() {
            "-".into()
        } else {
            seen.join("/")
        }
    }

    fn block_summary(&self) -> String {
        let mut seen: Vec<String> = Vec::new();
        for r in &self.representatives {
            if let Some(b) = &r.blocks {
                let s = if b.is_empty() {
                    "?".to_string()
                } else {
                    b.iter().map(|(d, m)| format!("{d}x{m}")).collect::<Vec<_>>().join("+")
                };
                if !seen.contains(&s) {
                    seen.push(s);
                }
            }
        }
        if seen.is_empty() {
            "-".into()
        } else {
            seen.join(" | ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub group: Vec<u32>,
    pub sample: Vec<String>,
    pub rows: Vec<ClassificationRow>,
    pub total_rows: usize,
    pub total_representatives: usize,
    #[serde(default)]
    pub notes: Vec<String>,
}

const PSI_NOTE: &str = "psi columns name a cohomology class; the stored table is a bicharacter representative, not canonical data";

fn report_notes(rows: &[ClassificationRow]) -> Vec<String> {
    let mut notes = vec![PSI_NOTE.to_string()];
    let open: Vec<&str> = rows.iter().filter(|r| r.open_equivalence).map(|r| r.w.as_str()).collect();
    if !open.is_empty() {
        notes.push(format!(
            "W = {} not coordinate: equivalence under F-equivariant automorphisms of V is not decided",
            open.join(", ")
        ));
    }
    notes
}

impl ClassificationReport {
    pub fn empty(group: Vec<u32>, sample: Vec<String>) -> Self {
        ClassificationReport {
            group,
            sample,
            rows: Vec::new(),
            total_rows: 0,
            total_representatives: 0,
            notes: vec![PSI_NOTE.to_string()],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned columns, one line per `(F, ψ-class, W)` row, then totals.
    pub fn to_text(&self) -> String {
        let header = ["F", "psi", "W", "count", "free", "dim", "simplicity", "blocks"];
        let cells: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.subgroup.clone(),
                    r.psi_class.clone(),
                    r.w.clone(),
                    r.discrete.to_string(),
                    r.free_parameters().to_string(),
                    r.dim.to_string(),
                    r.verdicts(),
                    r.block_summary(),
                ]
            })
            .collect();
        let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |fields: Vec<&str>| {
            let mut s = String::new();
            for (k, (f, w)) in fields.iter().zip(&width).enumerate() {
                if k > 0 {
                    s.push_str("  ");
                }
                s.push_str(f);
                if k + 1 < fields.len() {
                    s.push_str(&" ".repeat(w - f.chars().count()));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(header.to_vec());
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(
            out,
            "total: {} rows, {} representatives",
            self.total_rows, self.total_representatives
        );
        out
    }
}

fn representative(d: &QlsDatum, m: &ModCatDatum, opts: &SweepOptions) -> Result<(Representative, usize)> {
    let mut alpha = Vec::new();
    for k in 0..m.s() {
        for l in k + 1..m.s() {
            alpha.push((format!("{},{}", k + 1, l + 1), m.alpha(k, l).to_string()));
        }
    }
    let mut rep = Representative {
        xi: m.xi().iter().map(|c| c.to_string()).collect(),
        alpha,
        simplicity: None,
        coinvariants_dim: None,
        radical_dim: None,
        blocks: None,
    };
    let dim = if opts.analyse {
        let a = build_a(d, m)?;
        rep.simplicity = Some(check_simplicity(&a, opts.seed).label().to_string());
        rep.coinvariants_dim = Some(coinvariants(&a).dim());
        let sm = simple_modules(a.algebra(), opts.seed);
        rep.radical_dim = Some(sm.radical_dim);
        rep.blocks = Some(
            sm.blocks
                .iter()
                .map(|&Block { simple_dim, multiplicity }| (simple_dim, multiplicity))
                .collect(),
        );
        a.dim()
    } else {
        expected_dim(d, m)?
    };
    Ok((rep, dim))
}

pub fn classification_report(d: &QlsDatum, opts: &SweepOptions) -> Result<ClassificationReport> {
    let sample = dedup_sample(&opts.sample);
    let sample_labels = sample.iter().map(|c| c.to_string()).collect();
    let cells = cells(d, opts)?;
    let rows: Vec<ClassificationRow> = cells
        .par_iter()
        .map(|cell| -> Result<ClassificationRow> {
            let data = dedupe(&sweep_cell(d, cell, &sample)?, opts.strict_cocycle);
            let base = zero_parameters(&cell.w, &cell.psi)?;
            let (fx, fa) = free_parameters(d, &base)?;
            let mut reps = Vec::with_capacity(data.len());
            let mut dim = expected_dim(d, &base)?;
            for m in &data {
                let (r, dm) = representative(d, m, opts)?;
                dim = dm;
                reps.push(r);
            }
            Ok(ClassificationRow {
                subgroup: cell.psi.subgroup().label(),
                psi_class: cell.psi.class_tag().to_string(),
                w: w_label(&cell.w),
                discrete: reps.len(),
                free_xi: fx.len(),
                free_alpha: fa.len(),
                dim,
                open_equivalence: base.coordinates().is_none(),
                representatives: reps,
            })
        })
        .collect::<Result<_>>()?;
    let total_representatives = rows.iter().map(|r| r.discrete).sum();
    Ok(ClassificationReport {
        group: d.group().orders().to_vec(),
        sample: sample_labels,
        total_rows: rows.len(),
        total_representatives,
        notes: report_notes(&rows),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweedler() -> QlsDatum {
        QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap()
    }

    fn fast() -> SweepOptions {
        SweepOptions { analyse: false, ..SweepOptions::default() }
    }

    #[test]
    fn sweedler_enumeration() {
        let d = sweedler();
        let data = enumerate_modcat_data(&d, &fast()).unwrap();
        assert_eq!(data.len(), 6);
        assert_eq!(dedupe(&data, false).len(), 6);
        let report = classification_report(&d, &fast()).unwrap();
        assert_eq!(report.total_rows, 4);
        assert_eq!(report.total_representatives, 6);
        let free: Vec<usize> = report.rows.iter().map(|r| r.free_parameters()).collect();
        assert_eq!(free, vec![0, 1, 0, 1]);
    }

    #[test]
    fn duplicates_merge_and_xi_stays_apart() {
        let d = sweedler();
        let data = enumerate_modcat_data(&d, &fast()).unwrap();
        let mut doubled = data.clone();
        doubled.extend(data.iter().cloned());
        assert_eq!(dedupe(&doubled, false), data);
        let xi0 = data.iter().find(|m| m.s() == 1 && m.xi()[0].is_zero()).unwrap();
        let xi1 = xi0.clone().with_xi(0, CycloNumber::one(1));
        assert_eq!(dedupe(&[xi0.clone(), xi1], false).len(), 2);
    }

    #[test]
    fn empty_report_has_header_and_zero_totals() {
        let r = ClassificationReport::empty(vec![2], vec!["0".into()]);
        let text = r.to_text();
        assert!(text.starts_with("F  psi  W"));
        assert!(text.ends_with("total: 0 rows, 0 representatives\n"));
        let back: ClassificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_coordinate_rows_are_flagged() {
        let d = QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]]).unwrap();
        let one = CycloNumber::one(1);
        let opts = SweepOptions {
            extra_w: vec![vec![SparseVec::from_dense(&[one.clone(), one])]],
            ..fast()
        };
        let r = classification_report(&d, &opts).unwrap();
        let open: Vec<&str> = r.rows.iter().filter(|row| row.open_equivalence).map(|row| row.w.as_str()).collect();
        assert!(!open.is_empty() && open.iter().all(|w| *w == "<x1+x2>"), "{open:?}");
        assert_eq!(r.notes.len(), 2);
        assert!(r.to_text().contains("note: W = <x1+x2>"));
        let plain = classification_report(&d, &fast()).unwrap();
        assert_eq!(plain.notes.len(), 1);
    }
}
