//! Quantum linear space data, the bosonization `U = 𝔅(V) # kΓ`, and explicit
//! Hopf algebras given by structure constants.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{apply_left, apply_right, tensor_multiply, tensor_split, tensor_vectors, Algebra};
use crate::checks::VerificationReport;
use crate::cohomology::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character, GroupElement};
use crate::linalg::SparseVec;
use crate::pbw::{GroupTerm, PbwSpec, PbwSystem};
use crate::scalar::CycloNumber;

/// `(Γ, g_1…g_θ, χ_1…χ_θ)` together with the working conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QlsDatum {
    group: AbelianGroup,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    conductor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum DatumViolation {
    /// `q_i = χ_i(g_i) = 1`.
    Qls1 { i: usize },
    /// `χ_i(g_j) χ_j(g_i) ≠ 1`.
    Qls2 { i: usize, j: usize, product: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub valid: bool,
    #[serde(rename = "N")]
    pub n: Vec<u32>,
    pub violations: Vec<DatumViolation>,
    pub notes: Vec<String>,
}

impl DatumReport {
    pub fn summary(&self) -> String {
        let ns: Vec<String> = self.n.iter().map(|x| x.to_string()).collect();
        if self.valid {
            format!("valid, N=[{}]", ns.join(","))
        } else {
            let v: Vec<String> = self
                .violations
                .iter()
                .map(|v| match v {
                    DatumViolation::Qls1 { i } => format!("(qls1) at i={}", i + 1),
                    DatumViolation::Qls2 { i, j, product } => {
                        format!("(qls2) at (i,j)=({},{}), product {product}", i + 1, j + 1)
                    }
                })
                .collect();
            format!("invalid: {}", v.join("; "))
        }
    }
}

impl QlsDatum {
    pub fn new(group: AbelianGroup, g: Vec<GroupElement>, chi: Vec<Character>) -> Result<Self> {
        if g.len() != chi.len() {
            return Err(Error::DimensionMismatch {
                expected: g.len(),
                got: chi.len(),
            });
        }
        let in_range = |e: &[u32]| e.len() == group.rank() && e.iter().zip(group.orders()).all(|(x, n)| x < n);
        if !g.iter().all(|x| in_range(&x.exps)) || !chi.iter().all(|c| in_range(&c.exps)) {
            return Err(Error::ParentMismatch);
        }
        let conductor = group.exponent();
        Ok(QlsDatum {
            group,
            g,
            chi,
            conductor,
        })
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exps(orders: &[u32], g: &[&[i64]], chi: &[&[i64]]) -> Result<Self> {
        let group = AbelianGroup::new(orders.to_vec())?;
        let g = g.iter().map(|e| group.element(e)).collect::<Result<Vec<_>>>()?;
        let chi = chi.iter().map(|e| group.character(e)).collect::<Result<Vec<_>>>()?;
        Self::new(group, g, chi)
    }

    /// Enlarges the working conductor to a multiple of `l`.
    pub fn with_conductor(mut self, l: u32) -> Self {
        self.conductor = self.conductor.lcm(&l.max(1));
        self
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn theta(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self, i: usize) -> &GroupElement {
        &self.g[i]
    }

    pub fn g_all(&self) -> &[GroupElement] {
        &self.g
    }

    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i]
    }

    pub fn chi_all(&self) -> &[Character] {
        &self.chi
    }

    pub fn g_idx(&self, i: usize) -> usize {
        self.group.index_of(&self.g[i])
    }

    /// `q_ij = χ_j(g_i)`.
    pub fn q(&self, i: usize, j: usize) -> CycloNumber {
        self.group
            .evaluate_character(&self.chi[j], &self.g[i])
            .expect("validated parents")
            .lift_to(self.conductor)
    }

    pub fn q_matrix(&self) -> Vec<Vec<CycloNumber>> {
        (0..self.theta())
            .map(|i| (0..self.theta()).map(|j| self.q(i, j)).collect())
            .collect()
    }

    /// Multiplicative order of `q_i`.
    pub fn n(&self, i: usize) -> u32 {
        self.group.pairing_order(&self.chi[i], &self.g[i])
    }

    pub fn n_all(&self) -> Vec<u32> {
        (0..self.theta()).map(|i| self.n(i)).collect()
    }

    /// `g_i^{N_i}` as an ambient index.
    pub fn g_power_idx(&self, i: usize) -> usize {
        self.group
            .index_of(&self.group.pow(&self.g[i], self.n(i) as i64))
    }

    /// Isotypic components `V_g`: for each distinct `g_i` (in order of first
    /// appearance), the coordinates `i` with that grading.
    pub fn components(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for i in 0..self.theta() {
            let gi = self.g_idx(i);
            match out.iter_mut().find(|(g, _)| *g == gi) {
                Some((_, v)) => v.push(i),
                None => out.push((gi, vec![i])),
            }
        }
        out
    }

    pub fn validate(&self) -> DatumReport {
        let mut violations = Vec::new();
        let theta = self.theta();
        for i in 0..theta {
            if self.q(i, i).is_one() {
                violations.push(DatumViolation::Qls1 { i });
            }
        }
        for i in 0..theta {
            for j in i + 1..theta {
                let p = &self.q(i, j) * &self.q(j, i);
                if !p.is_one() {
                    violations.push(DatumViolation::Qls2 {
                        i,
                        j,
                        product: p.to_string(),
                    });
                }
            }
        }
        let n = self.n_all();
        let mut notes = Vec::new();
        for (g, idx) in self.components() {
            if idx.len() >= 2 && idx.iter().any(|&i| n[i] != 2) {
                notes.push(format!(
                    "component of degree {:?} has dimension {} with N != 2; only coordinate subspaces of it are supported",
                    self.group.element_at(g).exps,
                    idx.len()
                ));
            }
        }
        DatumReport {
            valid: violations.is_empty(),
            n,
            violations,
            notes,
        }
    }

    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.valid {
            Ok(())
        } else {
            Err(Error::ValidationFailed(r.summary()))
        }
    }

    pub fn element_label(&self, idx: usize) -> String {
        format_element(&self.group.element_at(idx))
    }
}

pub fn format_element(g: &GroupElement) -> String {
    let parts: Vec<String> = g.exps.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(","))
}

/// The Gaussian binomial `(l choose k)_q` via the q-Pascal rule
/// `(l,k) = (l-1,k-1) + q^k (l-1,k)`.
pub fn gaussian_binomial(l: u32, k: u32, q: &CycloNumber) -> Result<CycloNumber> {
    if k > l {
        return Err(Error::OutOfRange(format!("k = {k} exceeds l = {l}")));
    }
    let c = q.conductor();
    let mut row = vec![CycloNumber::one(c)];
    for m in 1..=l as usize {
        let mut next = vec![CycloNumber::one(c); m + 1];
        for j in 1..m {
            next[j] = &row[j - 1] + &(&q.pow(j as u64) * &row[j]);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// Where the PBW labels `(r, g)` of a bosonization or lifting live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwLayout {
    pub group: AbelianGroup,
    pub heights: Vec<u32>,
    /// Ambient index of `g_i`.
    pub g: Vec<usize>,
}

impl PbwLayout {
    pub fn index(&self, r: &[u32], g: usize) -> usize {
        let mut ri = 0usize;
        let mut s = 1usize;
        for (&x, &h) in r.iter().zip(&self.heights) {
            ri += x as usize * s;
            s *= h as usize;
        }
        ri * self.group.order() + g
    }

    pub fn group_like(&self, g: usize) -> usize {
        g
    }

    pub fn generator(&self, i: usize) -> usize {
        let mut r = vec![0u32; self.heights.len()];
        r[i] = 1;
        self.index(&r, 0)
    }
}

/// A finite-dimensional Hopf algebra by structure constants.
#[derive(Clone, Debug)]
pub struct HopfAlgebraRep {
    labels: Vec<String>,
    algebra: Algebra,
    /// `Δ(b_i)` over the basis `b_p ⊗ b_q` at index `p * dim + q`.
    comult: Vec<SparseVec>,
    /// `ε(b_i)` stored at index `i`.
    counit: SparseVec,
    antipode: Vec<SparseVec>,
    /// Filtration degree of each basis element (coradical degree).
    degrees: Vec<usize>,
    layout: Option<PbwLayout>,
}

impl HopfAlgebraRep {
    pub fn from_parts(
        labels: Vec<String>,
        algebra: Algebra,
        comult: Vec<SparseVec>,
        counit: SparseVec,
        antipode: Vec<SparseVec>,
        degrees: Vec<usize>,
    ) -> Result<Self> {
        let n = algebra.dim();
        for (what, len) in [
            ("labels", labels.len()),
            ("comult", comult.len()),
            ("antipode", antipode.len()),
            ("degrees", degrees.len()),
        ] {
            if len != n {
                let _ = what;
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        Ok(HopfAlgebraRep {
            labels,
            algebra,
            comult,
            counit,
            antipode,
            degrees,
            layout: None,
        })
    }

    pub fn with_layout(mut self, layout: PbwLayout) -> Self {
        self.layout = Some(layout);
        self
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn conductor(&self) -> u32 {
        self.algebra.conductor()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn comult_table(&self) -> &[SparseVec] {
        &self.comult
    }

    pub fn counit_row(&self) -> &SparseVec {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[SparseVec] {
        &self.antipode
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn layout(&self) -> Option<&PbwLayout> {
        self.layout.as_ref()
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        self.algebra.basis(i)
    }

    pub fn multiply(&self, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        self.algebra.checked_multiply(a, b)
    }

    pub fn coproduct(&self, a: &SparseVec) -> Result<SparseVec> {
        self.algebra.check_vec(a)?;
        Ok(self.coproduct_unchecked(a))
    }

    pub(crate) fn coproduct_unchecked(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            out.axpy(c, &self.comult[i]);
        }
        out
    }

    pub fn counit(&self, a: &SparseVec) -> CycloNumber {
        let mut acc = CycloNumber::zero(self.conductor());
        for (i, c) in a.iter() {
            if let Some(e) = self.counit.get(i) {
                acc += &(c * e);
            }
        }
        acc
    }

    pub fn apply_antipode(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            out.axpy(c, &self.antipode[i]);
        }
        out
    }

    /// `ε` as the columns of a map into the one-dimensional space.
    pub fn counit_columns(&self) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|i| match self.counit.get(i) {
                Some(e) => SparseVec::single(0, e.clone()),
                None => SparseVec::new(),
            })
            .collect()
    }

    /// Dimensions of `H_0 ⊆ H_1 ⊆ … ⊆ H_m`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        let m = self.degrees.iter().copied().max().unwrap_or(0);
        (0..=m)
            .map(|n| self.degrees.iter().filter(|&&d| d <= n).count())
            .collect()
    }

    /// Basis indices spanning `H_n`.
    pub fn filtration_layer(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] <= n).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis elements whose coproduct is `b ⊗ b`.
    pub fn group_likes(&self) -> Vec<usize> {
        let n = self.dim();
        (0..n)
            .filter(|&i| {
                self.comult[i] == SparseVec::unit(i * n + i, self.conductor())
            })
            .collect()
    }

    /// Replaces the comultiplication table; used to build negative controls.
    pub fn with_comult(mut self, comult: Vec<SparseVec>) -> Self {
        self.comult = comult;
        self
    }

    pub fn with_product(mut self, algebra: Algebra, antipode: Vec<SparseVec>) -> Self {
        self.algebra = algebra;
        self.antipode = antipode;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    /// First basis element whose coproduct leaves `⊕_{i+j≤n} H(i) ⊗ H(j)`
    /// (or `= n` when `graded`).
    pub fn comultiplication_degree_witness(&self, graded: bool) -> Option<usize> {
        let n = self.dim();
        (0..n).find(|&b| {
            self.comult[b].iter().any(|(k, _)| {
                let (p, q) = tensor_split(k, n);
                let s = self.degrees[p] + self.degrees[q];
                if graded {
                    s != self.degrees[b]
                } else {
                    s > self.degrees[b]
                }
            })
        })
    }
}

/// Sweeps every Hopf algebra axiom over the basis.
pub fn verify_hopf_axioms(h: &HopfAlgebraRep) -> VerificationReport {
    let n = h.dim();
    let alg = h.algebra();
    let lbl = |i: usize| h.labels()[i].clone();
    let mut r = VerificationReport::new();
    r.record(
        "associativity",
        alg.associativity_witness()
            .map(|(i, j, k)| format!("({})({})({})", lbl(i), lbl(j), lbl(k))),
    );
    r.record("unit", alg.unit_witness().map(lbl));
    let comult = h.comult_table();
    r.record(
        "coassociativity",
        (0..n).into_par_iter().find_first(|&i| {
            let d = &comult[i];
            apply_left(comult, d, n) != apply_right(comult, d, n, n * n)
        }).map(lbl),
    );
    let eps = h.counit_columns();
    r.record(
        "counit",
        (0..n).into_par_iter().find_first(|&i| {
            let d = &comult[i];
            let b = h.basis(i);
            apply_left(&eps, d, n) != b || apply_right(&eps, d, n, 1) != b
        }).map(lbl),
    );
    let one_one = tensor_vectors(alg.unit(), alg.unit(), n);
    let delta_unit_ok = h.coproduct_unchecked(alg.unit()) == one_one;
    r.record(
        "comultiplication is an algebra map",
        if !delta_unit_ok {
            Some("Δ(1) ≠ 1⊗1".into())
        } else {
            (0..n * n)
                .into_par_iter()
                .find_first(|&k| {
                    let (i, j) = (k / n, k % n);
                    let lhs = h.coproduct_unchecked(alg.basis_product(i, j));
                    let rhs = tensor_multiply(alg, alg, &comult[i], &comult[j]);
                    lhs != rhs
                })
                .map(|k| format!("Δ({}·{})", lbl(k / n), lbl(k % n)))
        },
    );
    let eps_unit = h.counit(alg.unit());
    r.record(
        "counit is an algebra map",
        if !eps_unit.is_one() {
            Some("ε(1) ≠ 1".into())
        } else {
            (0..n * n)
                .into_par_iter()
                .find_first(|&k| {
                    let (i, j) = (k / n, k % n);
                    let lhs = h.counit(alg.basis_product(i, j));
                    let rhs = &h.counit(&h.basis(i)) * &h.counit(&h.basis(j));
                    lhs != rhs
                })
                .map(|k| format!("ε({}·{})", lbl(k / n), lbl(k % n)))
        },
    );
    r.record(
        "antipode",
        (0..n)
            .into_par_iter()
            .find_first(|&i| {
                let expected = alg.unit().scaled(&h.counit(&h.basis(i)));
                let mut left = SparseVec::new();
                let mut right = SparseVec::new();
                for (k, c) in comult[i].iter() {
                    let (p, q) = tensor_split(k, n);
                    left.axpy(c, &alg.multiply(&h.antipode_table()[p], &h.basis(q)));
                    right.axpy(c, &alg.multiply(&h.basis(p), &h.antipode_table()[q]));
                }
                left != expected || right != expected
            })
            .map(lbl),
    );
    r
}

/// Lower-order terms of a PBW presentation indexed like the datum.
#[derive(Clone, Debug, Default)]
pub(crate) struct LowerTerms {
    pub power: Vec<GroupTerm>,
    pub swap: BTreeMap<(usize, usize), GroupTerm>,
}

/// `U = 𝔅(V) # kΓ`.
pub fn build_bosonization(d: &QlsDatum) -> Result<HopfAlgebraRep> {
    let lower = LowerTerms {
        power: vec![Vec::new(); d.theta()],
        swap: BTreeMap::new(),
    };
    build_pbw_hopf(d, &lower, "x")
}

fn pbw_spec(d: &QlsDatum, lower: &LowerTerms) -> PbwSpec {
    PbwSpec {
        conductor: d.conductor(),
        ambient: d.group().clone(),
        cocycle: TwoCocycle::trivial(&d.group().whole()),
        chi: d.chi_all().to_vec(),
        q: d.q_matrix(),
        heights: d.n_all(),
        swap_lower: lower.swap.clone(),
        power_lower: lower.power.clone(),
    }
}

/// The rewriting system presenting `U`, before any confluence check.
pub fn bosonization_system(d: &QlsDatum) -> Result<PbwSystem> {
    d.require_valid()?;
    let lower = LowerTerms {
        power: vec![Vec::new(); d.theta()],
        swap: BTreeMap::new(),
    };
    PbwSystem::new(&pbw_spec(d, &lower))
}

pub(crate) fn build_pbw_hopf(d: &QlsDatum, lower: &LowerTerms, var: &str) -> Result<HopfAlgebraRep> {
    d.require_valid()?;
    let group = d.group().clone();
    let whole = group.whole();
    let sys = PbwSystem::new(&pbw_spec(d, lower))?;
    sys.check_confluence(whole.generator_indices())?;
    let algebra = sys.build_algebra()?;
    let n = algebra.dim();
    let c = d.conductor();
    let layout = PbwLayout {
        group: group.clone(),
        heights: d.n_all(),
        g: (0..d.theta()).map(|i| d.g_idx(i)).collect(),
    };
    let theta = d.theta();
    let y: Vec<usize> = (0..theta).map(|i| layout.generator(i)).collect();
    let delta_y: Vec<SparseVec> = (0..theta)
        .map(|i| {
            let mut v = tensor_vectors(&algebra.basis(y[i]), algebra.unit(), n);
            v.add(&tensor_vectors(&algebra.basis(layout.g[i]), &algebra.basis(y[i]), n));
            v
        })
        .collect();
    let s_y: Vec<SparseVec> = (0..theta)
        .map(|i| {
            let ginv = group.inv_idx(layout.g[i]);
            algebra.multiply(&algebra.basis(ginv), &algebra.basis(y[i])).negated()
        })
        .collect();
    let results: Vec<(SparseVec, SparseVec)> = (0..n)
        .into_par_iter()
        .map(|b| {
            let (r, g) = sys.label(b);
            let mut delta = tensor_vectors(algebra.unit(), algebra.unit(), n);
            for (i, &k) in r.iter().enumerate() {
                for _ in 0..k {
                    delta = tensor_multiply(&algebra, &algebra, &delta, &delta_y[i]);
                }
            }
            let gg = tensor_vectors(&algebra.basis(g), &algebra.basis(g), n);
            delta = tensor_multiply(&algebra, &algebra, &delta, &gg);
            let mut s = algebra.basis(group.inv_idx(g));
            for i in (0..theta).rev() {
                for _ in 0..r[i] {
                    s = algebra.multiply(&s, &s_y[i]);
                }
            }
            (delta, s)
        })
        .collect();
    let (comult, antipode): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let mut counit = SparseVec::new();
    let mut labels = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for b in 0..n {
        let (r, g) = sys.label(b);
        if r.iter().all(|&x| x == 0) {
            counit.add_term(b, &CycloNumber::one(c));
        }
        degrees.push(r.iter().map(|&x| x as usize).sum());
        labels.push(format!("{}#{}", sys.monomial_label(&r, var), d.element_label(g)));
    }
    Ok(HopfAlgebraRep::from_parts(labels, algebra, comult, counit, antipode, degrees)?.with_layout(layout))
}
