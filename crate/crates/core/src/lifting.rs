//! Liftings `𝒜(Γ,𝒬,𝒟)` of a quantum linear space: the relations of the
//! bosonization deformed by a compatible pair `(μ, λ)`.

use std::collections::BTreeMap;

use num_integer::Integer;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{build_bosonization, build_pbw_hopf, HopfAlgebraRep, LowerTerms, QlsDatum};
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingDatum {
    pub mu: Vec<CycloNumber>,
    /// `lam[i][j]` for `i < j`.
    pub lam: Vec<Vec<CycloNumber>>,
}

impl LiftingDatum {
    pub fn trivial(theta: usize) -> Self {
        LiftingDatum {
            mu: vec![CycloNumber::zero(1); theta],
            lam: vec![vec![CycloNumber::zero(1); theta]; theta],
        }
    }

    pub fn with_mu(mut self, i: usize, v: CycloNumber) -> Self {
        self.mu[i] = v;
        self
    }

    pub fn with_lambda(mut self, i: usize, j: usize, v: CycloNumber) -> Self {
        assert!(i < j, "lambda is strictly upper triangular");
        self.lam[i][j] = v;
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.mu.iter().chain(self.lam.iter().flatten()).all(|c| c.is_zero())
    }

    /// Smallest conductor holding every nonzero parameter.
    pub fn conductor(&self) -> u32 {
        self.mu
            .iter()
            .chain(self.lam.iter().flatten())
            .filter(|c| !c.is_zero())
            .fold(1u32, |acc, c| acc.lcm(&c.conductor()))
    }

    pub fn negated(&self) -> Self {
        LiftingDatum {
            mu: self.mu.iter().map(|c| -c).collect(),
            lam: self.lam.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum LiftingViolation {
    Shape { detail: String },
    Mu { i: usize, reason: String },
    Lambda { i: usize, j: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    pub valid: bool,
    pub violations: Vec<LiftingViolation>,
}

pub fn validate_lifting(d: &QlsDatum, l: &LiftingDatum) -> LiftingReport {
    let theta = d.theta();
    let group = d.group();
    let mut violations = Vec::new();
    if l.mu.len() != theta || l.lam.len() != theta || l.lam.iter().any(|r| r.len() != theta) {
        violations.push(LiftingViolation::Shape {
            detail: format!("expected {theta} entries of mu and a {theta}x{theta} lambda"),
        });
        return LiftingReport { valid: false, violations };
    }
    let n = d.n_all();
    for i in 0..theta {
        if l.mu[i].is_zero() {
            continue;
        }
        let gn = group.pow(d.g(i), n[i] as i64);
        let chin = group.char_pow(d.chi(i), n[i] as i64);
        if gn == group.identity() {
            violations.push(LiftingViolation::Mu {
                i,
                reason: format!("g^{} = 1", n[i]),
            });
        } else if chin != group.trivial_character() {
            violations.push(LiftingViolation::Mu {
                i,
                reason: format!("chi^{} is not trivial", n[i]),
            });
        }
    }
    for i in 0..theta {
        for j in 0..theta {
            let v = &l.lam[i][j];
            if v.is_zero() {
                continue;
            }
            if j <= i {
                violations.push(LiftingViolation::Lambda {
                    i,
                    j,
                    reason: "entry on or below the diagonal".into(),
                });
                continue;
            }
            let gg = group.mul(d.g(i), d.g(j));
            if gg == group.identity() {
                violations.push(LiftingViolation::Lambda {
                    i,
                    j,
                    reason: "g_i g_j = 1".into(),
                });
            } else if group.char_mul(d.chi(i), d.chi(j)) != group.trivial_character() {
                violations.push(LiftingViolation::Lambda {
                    i,
                    j,
                    reason: "chi_i chi_j is not trivial".into(),
                });
            }
        }
    }
    LiftingReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// `a_i^{N_i} = μ_i(1 - g_i^{N_i})`, `a_i a_j - χ_j(g_i) a_j a_i = λ_ij(1 - g_i g_j)`.
pub fn build_lifting(d: &QlsDatum, l: &LiftingDatum) -> Result<HopfAlgebraRep> {
    let report = validate_lifting(d, l);
    if !report.valid {
        return Err(Error::ValidationFailed(format!("{:?}", report.violations)));
    }
    if l.is_trivial() {
        return build_bosonization(d);
    }
    let group = d.group();
    let c = d.conductor();
    let one = group.index_of(&group.identity());
    let n = d.n_all();
    let shifted = |scale: &CycloNumber, target: usize| -> Result<Vec<(usize, CycloNumber)>> {
        if scale.is_zero() {
            return Ok(Vec::new());
        }
        let s = scale.rebase(c)?;
        Ok(vec![(one, s.clone()), (target, -s)])
    };
    let mut power = Vec::with_capacity(d.theta());
    for i in 0..d.theta() {
        let gn = group.index_of(&group.pow(d.g(i), n[i] as i64));
        power.push(shifted(&l.mu[i], gn)?);
    }
    let mut swap = BTreeMap::new();
    for i in 0..d.theta() {
        for j in i + 1..d.theta() {
            if !l.lam[i][j].is_zero() {
                let gg = group.mul_idx(d.g_idx(i), d.g_idx(j));
                swap.insert((i, j), shifted(&l.lam[i][j], gg)?);
            }
        }
    }
    build_pbw_hopf(d, &LowerTerms { power, swap }, "a")
}
