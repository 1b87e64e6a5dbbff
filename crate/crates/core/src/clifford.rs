//! Exterior-algebra data: `𝒜(W,F,ψ,ξ,α)` against the smash product of a
//! Clifford algebra with a twisted group algebra, built independently.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{tensor_multiply, tensor_vectors, Algebra};
use crate::comodule::{generator_matching_iso, ComoduleAlgebraRep, PbwShape};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebraRep, QlsDatum};
use crate::linalg::SparseVec;
use crate::modcat::{build_a, w_shape, ModCatDatum};
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, Serialize)]
pub struct CliffordVerdict {
    /// `β(w_k, w_l)` as a full symmetric matrix.
    pub beta: Vec<Vec<CycloNumber>>,
    pub dim: usize,
    pub nondegenerate: bool,
    pub iso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Checks that every `g_i` is one element `u` of order two with `χ_i(u) = -1`.
pub fn require_exterior(d: &QlsDatum) -> Result<()> {
    let group = d.group();
    if d.theta() == 0 {
        return Err(Error::NotExteriorDatum("no generators".into()));
    }
    let u = d.g(0);
    if group.element_order(u) != 2 {
        return Err(Error::NotExteriorDatum(format!("g_1 = {} does not have order 2", d.element_label(d.g_idx(0)))));
    }
    for i in 0..d.theta() {
        if d.g(i) != u {
            return Err(Error::NotExteriorDatum(format!("g_{} differs from g_1", i + 1)));
        }
        let val = group.evaluate_character(d.chi(i), u)?;
        if val != CycloNumber::from_int(1, -1) {
            return Err(Error::NotExteriorDatum(format!("chi_{}(u) = {val}", i + 1)));
        }
    }
    Ok(())
}

/// `β` with `β(w_k,w_l) = α_kl / 2` off the diagonal and `ξ_k` on it.
pub fn symmetric_form(m: &ModCatDatum) -> Vec<Vec<CycloNumber>> {
    let s = m.s();
    let half = CycloNumber::from_rational(1, num_rational::BigRational::new(1.into(), 2.into()));
    (0..s)
        .map(|k| {
            (0..s)
                .map(|l| match k.cmp(&l) {
                    std::cmp::Ordering::Equal => m.xi()[k].clone(),
                    std::cmp::Ordering::Less => m.alpha(k, l) * &half,
                    std::cmp::Ordering::Greater => m.alpha(l, k) * &half,
                })
                .collect()
        })
        .collect()
}

/// Normal form of the word `v_{w_1} ⋯ v_{w_n}` in `Cl(W, β)` as a map from
/// subsets (bit masks) to coefficients.
fn clifford_word(word: &[usize], beta: &[Vec<CycloNumber>], c: u32) -> BTreeMap<u64, CycloNumber> {
    let mut out = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, CycloNumber)> = vec![(word.to_vec(), CycloNumber::one(c))];
    while let Some((w, coef)) = stack.pop() {
        if coef.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p[0] >= p[1]) {
            None => {
                let mask = w.iter().fold(0u64, |m, &i| m | 1 << i);
                let e = out.entry(mask).or_insert_with(|| CycloNumber::zero(c));
                *e += &coef;
            }
            Some(p) => {
                let (a, b) = (w[p], w[p + 1]);
                let mut short = w[..p].to_vec();
                short.extend_from_slice(&w[p + 2..]);
                if a == b {
                    stack.push((short, &coef * &beta[a][a].lift_to(c)));
                } else {
                    // v_a v_b = -v_b v_a + 2 β(a,b)
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    stack.push((swapped, -&coef));
                    let two = CycloNumber::from_int(c, 2);
                    stack.push((short, &(&coef * &two) * &beta[a][b].lift_to(c)));
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `Cl(W,β) # k_ψF` with `e_f v_k = χ_k(f) v_k e_f`, as a left comodule
/// algebra over `hopf`.
pub fn clifford_smash(d: &QlsDatum, m: &ModCatDatum, hopf: Arc<HopfAlgebraRep>) -> Result<ComoduleAlgebraRep> {
    let shape = w_shape(d, m)?;
    let s = m.s();
    let f = m.subgroup();
    let group = d.group();
    let c = hopf.conductor();
    let nf = f.order();
    let n = nf << s;
    let beta = symmetric_form(m);
    let members = f.member_indices().to_vec();
    let idx = |mask: u64, pos: usize| mask as usize * nf + pos;
    let sign_of = |mask: u64, fpos: usize| {
        let fe = group.element_at(members[fpos]);
        let mut v = CycloNumber::one(c);
        for k in 0..s {
            if mask >> k & 1 == 1 {
                v = &v * &group.evaluate_character(&shape.chi[k], &fe).unwrap().lift_to(c);
            }
        }
        v
    };
    let bits = |mask: u64| (0..s).filter(move |&k| mask >> k & 1 == 1);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (ma, fa) = ((i / nf) as u64, i % nf);
        for j in 0..n {
            let (mb, fb) = ((j / nf) as u64, j % nf);
            let fh = group.mul_idx(members[fa], members[fb]);
            let pos = f.position(fh).expect("closed");
            let scalar = &sign_of(mb, fa) * &m.psi().eval_idx(members[fa], members[fb]).lift_to(c);
            let word: Vec<usize> = bits(ma).chain(bits(mb)).collect();
            let mut out = SparseVec::new();
            for (mask, coef) in clifford_word(&word, &beta, c) {
                out.add_term(idx(mask, pos), &(&coef * &scalar));
            }
            table.push(out);
        }
    }
    let one_pos = f.position(group.index_of(&group.identity())).expect("identity");
    let algebra = Algebra::new(n, c, table, SparseVec::unit(idx(0, one_pos), c))?;
    let layout = hopf
        .layout()
        .ok_or_else(|| Error::ValidationFailed("U carries no PBW layout".into()))?
        .clone();
    let ua = hopf.algebra();
    let lam_v: Vec<SparseVec> = (0..s)
        .map(|k| {
            let mut wk = SparseVec::new();
            for (i, coef) in m.w()[k].iter() {
                wk.add_term(layout.generator(i), &coef.lift_to(c));
            }
            let mut out = tensor_vectors(&wk, algebra.unit(), n);
            out.add(&tensor_vectors(
                &ua.basis(layout.group_like(shape.degree[k])),
                &algebra.basis(idx(1 << k, one_pos)),
                n,
            ));
            out
        })
        .collect();
    let coaction: Vec<SparseVec> = (0..n)
        .map(|b| {
            let (mask, pos) = ((b / nf) as u64, b % nf);
            let mut acc = tensor_vectors(ua.unit(), algebra.unit(), n);
            for k in bits(mask) {
                acc = tensor_multiply(ua, &algebra, &acc, &lam_v[k]);
            }
            let ef = tensor_vectors(&ua.basis(layout.group_like(members[pos])), &algebra.basis(idx(0, pos)), n);
            tensor_multiply(ua, &algebra, &acc, &ef)
        })
        .collect();
    let labels = (0..n)
        .map(|b| {
            let (mask, pos) = ((b / nf) as u64, b % nf);
            let mono: String = bits(mask).map(|k| format!("v{}", k + 1)).collect();
            let e = format!("e{}", d.element_label(members[pos]));
            if mono.is_empty() {
                e
            } else {
                format!("{mono}·{e}")
            }
        })
        .collect();
    let pbw = PbwShape {
        heights: vec![2; s],
        generators: (0..s).map(|k| idx(1 << k, one_pos)).collect(),
        group_part: (0..nf).map(|p| idx(0, p)).collect(),
        members,
    };
    let degrees = (0..n).map(|b| ((b / nf) as u64).count_ones() as usize).collect();
    Ok(ComoduleAlgebraRep::from_parts(labels, algebra, coaction, hopf)?
        .with_degrees(degrees)
        .with_pbw(pbw))
}

fn determinant(mut a: Vec<Vec<CycloNumber>>) -> CycloNumber {
    let n = a.len();
    let c = a.iter().flatten().map(|x| x.conductor()).max().unwrap_or(1);
    let mut det = CycloNumber::one(c);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return CycloNumber::zero(c);
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            let factor = &a[r][col] * &inv;
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let t = &factor * &a[col][k];
                a[r][k] -= &t;
            }
        }
    }
    det
}

pub fn exterior_clifford_check(d: &QlsDatum, m: &ModCatDatum) -> Result<CliffordVerdict> {
    require_exterior(d)?;
    let a = build_a(d, m)?;
    let cl = clifford_smash(d, m, a.hopf().clone())?;
    let beta = symmetric_form(m);
    let nondegenerate = !determinant(beta.clone()).is_zero();
    let (iso, witness) = match generator_matching_iso(&a, &cl) {
        Ok(_) => (true, None),
        Err(Error::IsoCheckFailed(w)) => (false, Some(w)),
        Err(e) => return Err(e),
    };
    Ok(CliffordVerdict {
        beta,
        dim: a.dim(),
        nondegenerate,
        iso,
        witness,
    })
}
