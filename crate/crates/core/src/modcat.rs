//! Classification data `(W, F, ψ, ξ, α)` and the comodule algebras
//! `𝒜(W,F,ψ,ξ,α)` and `𝒦(W,ψ,F)` they define.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{tensor_multiply, tensor_vectors};
use crate::cohomology::TwoCocycle;
use crate::comodule::{ComoduleAlgebraRep, PbwShape};
use crate::error::{Error, Result};
use crate::group::{Character, Subgroup};
use crate::hopf::{build_bosonization, format_element, HopfAlgebraRep, QlsDatum};
use crate::linalg::{rank, SparseVec, Subspace};
use crate::pbw::{PbwSpec, PbwSystem};
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModCatDatum {
    /// Basis of `W`, each vector over `x_1 … x_θ`.
    w: Vec<SparseVec>,
    psi: TwoCocycle,
    xi: Vec<CycloNumber>,
    /// `alpha[k][l]` for `k < l`; other entries are ignored and kept zero.
    alpha: Vec<Vec<CycloNumber>>,
}

impl ModCatDatum {
    pub fn new(w: Vec<SparseVec>, psi: TwoCocycle, xi: Vec<CycloNumber>, alpha: Vec<Vec<CycloNumber>>) -> Result<Self> {
        let s = w.len();
        if xi.len() != s {
            return Err(Error::DimensionMismatch { expected: s, got: xi.len() });
        }
        if alpha.len() != s || alpha.iter().any(|row| row.len() != s) {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: alpha.len(),
            });
        }
        for (k, row) in alpha.iter().enumerate() {
            for (l, a) in row.iter().enumerate() {
                if l <= k && !a.is_zero() {
                    return Err(Error::ValidationFailed(format!(
                        "alpha[{}][{}] lies on or below the diagonal",
                        k + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(ModCatDatum { w, psi, xi, alpha })
    }

    /// `W` spanned by the given coordinates, with `ξ = 0` and `α = 0`.
    pub fn coordinate(indices: &[usize], psi: TwoCocycle) -> Self {
        let s = indices.len();
        let w = indices.iter().map(|&i| SparseVec::unit(i, 1)).collect();
        ModCatDatum {
            w,
            psi,
            xi: vec![CycloNumber::zero(1); s],
            alpha: vec![vec![CycloNumber::zero(1); s]; s],
        }
    }

    pub fn with_xi(mut self, k: usize, value: CycloNumber) -> Self {
        self.xi[k] = value;
        self
    }

    pub fn with_alpha(mut self, k: usize, l: usize, value: CycloNumber) -> Self {
        assert!(k < l, "alpha is strictly upper triangular");
        self.alpha[k][l] = value;
        self
    }

    pub fn with_cocycle(mut self, psi: TwoCocycle) -> Self {
        self.psi = psi;
        self
    }

    pub fn w(&self) -> &[SparseVec] {
        &self.w
    }

    pub fn s(&self) -> usize {
        self.w.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.psi.subgroup()
    }

    pub fn psi(&self) -> &TwoCocycle {
        &self.psi
    }

    pub fn xi(&self) -> &[CycloNumber] {
        &self.xi
    }

    pub fn alpha(&self, k: usize, l: usize) -> &CycloNumber {
        &self.alpha[k][l]
    }

    pub fn alpha_matrix(&self) -> &[Vec<CycloNumber>] {
        &self.alpha
    }

    /// The coordinate indices when every basis vector of `W` is some `x_i`.
    pub fn coordinates(&self) -> Option<Vec<usize>> {
        self.w
            .iter()
            .map(|v| match v.leading() {
                Some((i, c)) if v.len() == 1 && c.is_one() => Some(i),
                _ => None,
            })
            .collect()
    }

    /// Smallest conductor holding every scalar of the datum.
    pub fn scalar_conductor(&self) -> u32 {
        let entries = self.w.iter().flat_map(|v| v.iter().map(|(_, c)| c));
        self.xi
            .iter()
            .chain(self.alpha.iter().flatten())
            .chain(entries)
            .filter(|c| !c.is_zero())
            .fold(self.psi.conductor(), |l, c| l.lcm(&c.conductor()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ModCatViolation {
    ForeignSubgroup,
    OutsideV { k: usize },
    Dependent,
    NotHomogeneous { k: usize },
    NotFStable { k: usize, f: String },
    NotEigenvector { k: usize },
    UnsupportedComponent { k: usize },
    Parameters1 { k: usize, reason: String },
    Parameters2 { k: usize, l: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModCatReport {
    pub valid: bool,
    pub violations: Vec<ModCatViolation>,
}

impl ModCatReport {
    pub fn summary(&self) -> String {
        if self.valid {
            return "valid".into();
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                ModCatViolation::ForeignSubgroup => "F is not a subgroup of the datum's group".into(),
                ModCatViolation::OutsideV { k } => format!("w{} has coordinates beyond theta", k + 1),
                ModCatViolation::Dependent => "basis of W is linearly dependent".into(),
                ModCatViolation::NotHomogeneous { k } => format!("w{} is not homogeneous", k + 1),
                ModCatViolation::NotFStable { k, f } => format!("{f}·w{} leaves W", k + 1),
                ModCatViolation::NotEigenvector { k } => format!("w{} is not an F-eigenvector", k + 1),
                ModCatViolation::UnsupportedComponent { k } => {
                    format!("w{} mixes coordinates of a component with N != 2", k + 1)
                }
                ModCatViolation::Parameters1 { k, reason } => format!("(parameters1) xi{}: {reason}", k + 1),
                ModCatViolation::Parameters2 { k, l, reason } => {
                    format!("(parameters2) alpha{}{}: {reason}", k + 1, l + 1)
                }
            })
            .collect();
        format!("invalid: {}", parts.join("; "))
    }
}

/// Per-vector data of a validated `W`.
#[derive(Clone, Debug)]
pub struct WShape {
    /// Ambient index of the degree of each basis vector.
    pub degree: Vec<usize>,
    /// A character agreeing with `χ_i` on `F` for every `x_i` in the support.
    pub chi: Vec<Character>,
    pub heights: Vec<u32>,
    /// `q[k][l]` with `w_k w_l = q[k][l] w_l w_k` in the Nichols algebra.
    pub q: Vec<Vec<CycloNumber>>,
}

fn structural(d: &QlsDatum, m: &ModCatDatum) -> (Vec<ModCatViolation>, Option<WShape>) {
    let theta = d.theta();
    let group = d.group();
    let f = m.subgroup();
    let mut v = Vec::new();
    if f.ambient() != group {
        v.push(ModCatViolation::ForeignSubgroup);
        return (v, None);
    }
    for (k, w) in m.w().iter().enumerate() {
        if w.max_index().is_some_and(|i| i >= theta) || w.is_zero() {
            v.push(ModCatViolation::OutsideV { k });
        }
    }
    if !v.is_empty() {
        return (v, None);
    }
    if rank(m.w()) != m.s() {
        v.push(ModCatViolation::Dependent);
        return (v, None);
    }
    let n = d.n_all();
    let comp_size = |g: usize| (0..theta).filter(|&i| d.g_idx(i) == g).count();
    let mut degree = Vec::new();
    let mut support0 = Vec::new();
    for (k, w) in m.w().iter().enumerate() {
        let support: Vec<usize> = w.keys().collect();
        let g = d.g_idx(support[0]);
        if support.iter().any(|&i| d.g_idx(i) != g) {
            v.push(ModCatViolation::NotHomogeneous { k });
            continue;
        }
        let restricted = |i: usize| -> Vec<CycloNumber> {
            f.member_indices()
                .iter()
                .map(|&a| group.evaluate_character(d.chi(i), &group.element_at(a)).unwrap())
                .collect()
        };
        let r0 = restricted(support[0]);
        if support.iter().any(|&i| restricted(i) != r0) {
            v.push(ModCatViolation::NotEigenvector { k });
        }
        if support.len() > 1 && comp_size(g) >= 2 && support.iter().any(|&i| n[i] != 2) {
            v.push(ModCatViolation::UnsupportedComponent { k });
        }
        degree.push(g);
        support0.push(support[0]);
    }
    if !v.is_empty() {
        return (v, None);
    }
    let span = Subspace::spanned_by(m.w().to_vec());
    for (k, w) in m.w().iter().enumerate() {
        for &a in f.member_indices() {
            let fe = group.element_at(a);
            let mut moved = SparseVec::new();
            for (i, c) in w.iter() {
                moved.add_term(i, &(c * &group.evaluate_character(d.chi(i), &fe).unwrap()));
            }
            if !span.contains(&moved) {
                v.push(ModCatViolation::NotFStable { k, f: format_element(&fe) });
                break;
            }
        }
    }
    if !v.is_empty() {
        return (v, None);
    }
    let s = m.s();
    let c = d.conductor();
    let q = (0..s)
        .map(|k| {
            (0..s)
                .map(|l| {
                    let gk = group.element_at(degree[k]);
                    group.evaluate_character(d.chi(support0[l]), &gk).unwrap().lift_to(c)
                })
                .collect()
        })
        .collect();
    let shape = WShape {
        degree,
        chi: support0.iter().map(|&i| d.chi(i).clone()).collect(),
        heights: support0.iter().map(|&i| n[i]).collect(),
        q,
    };
    (v, Some(shape))
}

/// Why `ξ_k` must vanish, if it must.
fn xi_obstruction(d: &QlsDatum, m: &ModCatDatum, shape: &WShape, k: usize) -> Option<String> {
    let group = d.group();
    let f = m.subgroup();
    let n = shape.heights[k];
    let gn = group.index_of(&group.pow(&group.element_at(shape.degree[k]), n as i64));
    if !f.contains_idx(gn) {
        return Some(format!("g^{n} = {} is not in F", d.element_label(gn)));
    }
    let chi_n = group.char_pow(&shape.chi[k], n as i64);
    character_obstruction(d, m, &chi_n, gn)
}

/// Why `α_kl` must vanish, if it must.
fn alpha_obstruction(d: &QlsDatum, m: &ModCatDatum, shape: &WShape, k: usize, l: usize) -> Option<String> {
    let group = d.group();
    let gg = group.mul_idx(shape.degree[k], shape.degree[l]);
    if !m.subgroup().contains_idx(gg) {
        return Some(format!("g_k g_l = {} is not in F", d.element_label(gg)));
    }
    let prod = group.char_mul(&shape.chi[k], &shape.chi[l]);
    character_obstruction(d, m, &prod, gg)
}

/// Compares `χ|_F` with `ψ_g` pointwise.
fn character_obstruction(d: &QlsDatum, m: &ModCatDatum, chi: &Character, g: usize) -> Option<String> {
    let group = d.group();
    m.subgroup().member_indices().iter().find_map(|&a| {
        let fe = group.element_at(a);
        let lhs = group.evaluate_character(chi, &fe).unwrap();
        let rhs = m.psi().psi_g_value_idx(g, a);
        (lhs != rhs).then(|| format!("character value {lhs} differs from psi_g value {rhs} at f = {}", format_element(&fe)))
    })
}

/// Positions of `ξ` and `α` left free by the compatibility conditions.
pub fn free_parameters(d: &QlsDatum, m: &ModCatDatum) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    let (violations, shape) = structural(d, m);
    let shape = shape.ok_or_else(|| Error::ValidationFailed(format!("{violations:?}")))?;
    let s = m.s();
    let xi = (0..s).filter(|&k| xi_obstruction(d, m, &shape, k).is_none()).collect();
    let mut alpha = Vec::new();
    for k in 0..s {
        for l in k + 1..s {
            if alpha_obstruction(d, m, &shape, k, l).is_none() {
                alpha.push((k, l));
            }
        }
    }
    Ok((xi, alpha))
}

pub fn validate_modcat_datum(d: &QlsDatum, m: &ModCatDatum) -> ModCatReport {
    let (mut violations, shape) = structural(d, m);
    if let Some(shape) = &shape {
        for k in 0..m.s() {
            if !m.xi()[k].is_zero() {
                if let Some(reason) = xi_obstruction(d, m, shape, k) {
                    violations.push(ModCatViolation::Parameters1 { k, reason });
                }
            }
            for l in k + 1..m.s() {
                if !m.alpha(k, l).is_zero() {
                    if let Some(reason) = alpha_obstruction(d, m, shape, k, l) {
                        violations.push(ModCatViolation::Parameters2 { k, l, reason });
                    }
                }
            }
        }
    }
    ModCatReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Conductor needed to build `𝒜` for this pair.
pub fn working_conductor(d: &QlsDatum, m: &ModCatDatum) -> u32 {
    d.conductor().lcm(&m.scalar_conductor())
}

/// `U` at a conductor large enough for `m`.
pub fn bosonization_for(d: &QlsDatum, m: &ModCatDatum) -> Result<Arc<HopfAlgebraRep>> {
    let d2 = d.clone().with_conductor(working_conductor(d, m));
    Ok(Arc::new(build_bosonization(&d2)?))
}

/// `𝒜(W,F,ψ,ξ,α)` over a freshly built `U`.
pub fn build_a(d: &QlsDatum, m: &ModCatDatum) -> Result<ComoduleAlgebraRep> {
    let u = bosonization_for(d, m)?;
    build_a_over(u, d, m)
}

/// `𝒦(W,ψ,F)`, that is `𝒜` with `ξ = 0` and `α = 0`.
pub fn build_k(d: &QlsDatum, w: &[SparseVec], psi: &TwoCocycle) -> Result<ComoduleAlgebraRep> {
    let s = w.len();
    let m = ModCatDatum::new(
        w.to_vec(),
        psi.clone(),
        vec![CycloNumber::zero(1); s],
        vec![vec![CycloNumber::zero(1); s]; s],
    )?;
    build_a(d, &m)
}

/// `𝒜(W,F,ψ,ξ,α)` as a left comodule algebra over the given `U`.
pub fn build_a_over(u: Arc<HopfAlgebraRep>, d: &QlsDatum, m: &ModCatDatum) -> Result<ComoduleAlgebraRep> {
    let report = validate_modcat_datum(d, m);
    if !report.valid {
        return Err(Error::ValidationFailed(report.summary()));
    }
    let (_, shape) = structural(d, m);
    let shape = shape.expect("validated");
    let c = u.conductor();
    let need = working_conductor(d, m);
    if !c.is_multiple_of(need) {
        return Err(Error::IncompatibleConductor { from: need, to: c });
    }
    let layout = u
        .layout()
        .ok_or_else(|| Error::ValidationFailed("U carries no PBW layout".into()))?
        .clone();
    let group = d.group();
    let f = m.subgroup();
    let s = m.s();
    let mut power_lower = Vec::with_capacity(s);
    for k in 0..s {
        let xi = &m.xi()[k];
        if xi.is_zero() {
            power_lower.push(Vec::new());
        } else {
            let gn = group.index_of(&group.pow(&group.element_at(shape.degree[k]), shape.heights[k] as i64));
            power_lower.push(vec![(gn, xi.rebase(c)?)]);
        }
    }
    let mut swap_lower = BTreeMap::new();
    for k in 0..s {
        for l in k + 1..s {
            let a = m.alpha(k, l);
            if !a.is_zero() {
                let gg = group.mul_idx(shape.degree[k], shape.degree[l]);
                swap_lower.insert((k, l), vec![(gg, a.rebase(c)?)]);
            }
        }
    }
    let q = shape
        .q
        .iter()
        .map(|row| row.iter().map(|x| x.rebase(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let spec = PbwSpec {
        conductor: c,
        ambient: group.clone(),
        cocycle: m.psi().clone(),
        chi: shape.chi.clone(),
        q,
        heights: shape.heights.clone(),
        swap_lower,
        power_lower,
    };
    let sys = PbwSystem::new(&spec)?;
    let gens: Vec<usize> = f
        .generator_indices()
        .iter()
        .map(|&a| f.position(a).expect("generator of F"))
        .collect();
    sys.check_confluence(&gens)?;
    let algebra = sys.build_algebra()?;
    let n = algebra.dim();
    let zeros = vec![0u32; s];
    let generators: Vec<usize> = (0..s)
        .map(|k| {
            let mut r = zeros.clone();
            r[k] = 1;
            sys.index(&r, 0)
        })
        .collect();
    let group_part: Vec<usize> = (0..f.order()).map(|p| sys.index(&zeros, p)).collect();
    let ua = u.algebra();
    let lam_v: Vec<SparseVec> = (0..s)
        .map(|k| {
            let mut wk = SparseVec::new();
            for (i, coef) in m.w()[k].iter() {
                wk.add_term(layout.generator(i), &coef.lift_to(c));
            }
            let mut out = tensor_vectors(&wk, algebra.unit(), n);
            out.add(&tensor_vectors(
                &ua.basis(layout.group_like(shape.degree[k])),
                &algebra.basis(generators[k]),
                n,
            ));
            out
        })
        .collect();
    let coaction: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .map(|b| {
            let (r, pos) = sys.label(b);
            let mut acc = tensor_vectors(ua.unit(), algebra.unit(), n);
            for (k, &e) in r.iter().enumerate() {
                for _ in 0..e {
                    acc = tensor_multiply(ua, &algebra, &acc, &lam_v[k]);
                }
            }
            let ef = tensor_vectors(
                &ua.basis(layout.group_like(sys.member(pos))),
                &algebra.basis(group_part[pos]),
                n,
            );
            tensor_multiply(ua, &algebra, &acc, &ef)
        })
        .collect();
    let labels = (0..n)
        .map(|b| {
            let (r, pos) = sys.label(b);
            let mono = sys.monomial_label(&r, "v");
            let e = format!("e{}", d.element_label(sys.member(pos)));
            if mono == "1" {
                e
            } else {
                format!("{mono}·{e}")
            }
        })
        .collect();
    let degrees = (0..n).map(|b| sys.degree(b)).collect();
    let pbw = PbwShape {
        heights: shape.heights.clone(),
        generators,
        group_part,
        members: f.member_indices().to_vec(),
    };
    Ok(ComoduleAlgebraRep::from_parts(labels, algebra, coaction, u)?
        .with_degrees(degrees)
        .with_pbw(pbw))
}

/// Expected `dim 𝒜 = |F| ∏ N'_w`.
pub fn expected_dim(d: &QlsDatum, m: &ModCatDatum) -> Result<usize> {
    let (violations, shape) = structural(d, m);
    let shape = shape.ok_or_else(|| Error::ValidationFailed(format!("{violations:?}")))?;
    Ok(m.subgroup().order() * shape.heights.iter().map(|&h| h as usize).product::<usize>())
}

pub fn w_shape(d: &QlsDatum, m: &ModCatDatum) -> Result<WShape> {
    let (violations, shape) = structural(d, m);
    shape.ok_or_else(|| Error::ValidationFailed(format!("{violations:?}")))
}
