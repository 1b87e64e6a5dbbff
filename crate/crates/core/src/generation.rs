//! Degree-one generation of homogeneous coideal subalgebras of the quantum
//! linear space, checked degree by degree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::tensor_split;
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebraRep, QlsDatum};
use crate::linalg::{SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationVerdict {
    pub passed: bool,
    pub flag_dims: Vec<usize>,
    pub generated_dims: Vec<usize>,
}

/// Basis indices of `U` spanning `𝔅(V)(n) # 1`.
fn nichols_layer(u: &HopfAlgebraRep, n: usize) -> Vec<usize> {
    let lay = u.layout().expect("bosonization layout");
    (0..u.dim())
        .filter(|&i| u.degrees()[i] == n && i % lay.group.order() == 0)
        .collect()
}

/// Checks the three hypotheses on the flag `K(0), K(1), …, K(m)` (vectors
/// over the basis of `U`), then compares `K` with the subalgebra generated
/// by `K(1)`.
pub fn check_degree_one_generation(d: &QlsDatum, u: &HopfAlgebraRep, flag: &[Vec<SparseVec>]) -> Result<GenerationVerdict> {
    let lay = u
        .layout()
        .ok_or_else(|| Error::ValidationFailed("U carries no PBW layout".into()))?;
    let layers: Vec<Subspace> = flag.iter().map(|b| Subspace::spanned_by(b.iter().cloned())).collect();
    let m = layers.len().saturating_sub(1);
    let layer = |n: usize| -> Option<&Subspace> { layers.get(n) };
    let violated = |condition: u8, detail: String| Err(Error::HypothesisViolated { condition, detail });

    for (n, sub) in layers.iter().enumerate() {
        let allowed = nichols_layer(u, n);
        for v in sub.basis() {
            if v.keys().any(|k| !allowed.contains(&k)) {
                return violated(1, format!("K({n}) leaves the degree-{n} part of the quantum linear space"));
            }
        }
    }
    if layer(0).map(|s| s.dim()) != Some(1) {
        return violated(1, "K(0) must be the line through 1".into());
    }
    // K(1) = W must split along the isotypic components V_g
    if let Some(k1) = layer(1) {
        for (_, coords) in d.components() {
            let idx: Vec<usize> = coords.iter().map(|&i| lay.generator(i)).collect();
            for v in k1.basis() {
                let part = v.filtered(|k| idx.contains(&k));
                if !k1.contains(&part) {
                    return violated(2, "K(1) is not a sum of isotypic components' subspaces".into());
                }
            }
        }
    }
    for (i, a) in layers.iter().enumerate() {
        for (j, b) in layers.iter().enumerate() {
            for x in a.basis() {
                for y in b.basis() {
                    let p = u.algebra().multiply(x, y);
                    let ok = match layer(i + j) {
                        Some(t) => t.contains(&p),
                        None => p.is_zero(),
                    };
                    if !ok {
                        return violated(0, format!("K({i})K({j}) is not contained in K({})", i + j));
                    }
                }
            }
        }
    }
    let dim = u.dim();
    for (n, sub) in layers.iter().enumerate() {
        for z in sub.basis() {
            let delta = u.coproduct(z)?;
            let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (t, c) in delta.iter() {
                let (p, q) = tensor_split(t, dim);
                parts.entry(p).or_default().add_term(q, c);
            }
            for (p, y) in parts {
                let dp = u.degrees()[p];
                let ok = dp <= n && layer(n - dp).is_some_and(|s| s.contains(&y));
                if !ok {
                    return violated(3, format!("Δ(K({n})) leaves ⊕ U(i) ⊗ K({n}-i) at {}", u.labels()[p]));
                }
            }
        }
    }
    let mut generated = vec![1usize];
    let mut current = layer(0).unwrap().clone();
    let w = layer(1).cloned();
    for _n in 1..=m {
        let next = match &w {
            Some(w) => Subspace::spanned_by(
                current
                    .basis()
                    .iter()
                    .flat_map(|x| w.basis().iter().map(move |y| (x, y)))
                    .map(|(x, y)| u.algebra().multiply(x, y)),
            ),
            None => Subspace::spanned_by(Vec::new()),
        };
        generated.push(next.dim());
        current = next;
    }
    let flag_dims: Vec<usize> = layers.iter().map(|s| s.dim()).collect();
    Ok(GenerationVerdict {
        passed: flag_dims == generated,
        flag_dims,
        generated_dims: generated,
    })
}

/// The flag of `𝒦(W) ⊆ 𝔅(V)`: the subalgebra generated by `W`, split by degree.
pub fn nichols_flag(u: &HopfAlgebraRep, w: &[SparseVec]) -> Vec<Vec<SparseVec>> {
    let lay = u.layout().expect("bosonization layout");
    let c = u.conductor();
    let gens: Vec<SparseVec> = w
        .iter()
        .map(|v| {
            let mut out = SparseVec::new();
            for (i, x) in v.iter() {
                out.add_term(lay.generator(i), &x.lift_to(c));
            }
            out
        })
        .collect();
    let mut flag = vec![vec![u.algebra().unit().clone()]];
    let mut current = flag[0].clone();
    loop {
        let next = Subspace::spanned_by(
            current
                .iter()
                .flat_map(|x| gens.iter().map(move |y| (x, y)))
                .map(|(x, y)| u.algebra().multiply(x, y)),
        );
        if next.dim() == 0 {
            break;
        }
        current = next.basis().to_vec();
        flag.push(current.clone());
    }
    flag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::build_bosonization;
    use crate::scalar::CycloNumber;

    fn clifford() -> (QlsDatum, HopfAlgebraRep) {
        let d = QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]]).unwrap();
        let u = build_bosonization(&d).unwrap();
        (d, u)
    }

    #[test]
    fn coordinate_and_diagonal_subspaces_pass() {
        let (d, u) = clifford();
        for w in [
            vec![SparseVec::unit(0, 1)],
            vec![SparseVec::unit(1, 1)],
            vec![SparseVec::unit(0, 1), SparseVec::unit(1, 1)],
            vec![SparseVec::from_dense(&[CycloNumber::one(1), CycloNumber::one(1)])],
        ] {
            let flag = nichols_flag(&u, &w);
            let v = check_degree_one_generation(&d, &u, &flag).unwrap();
            assert!(v.passed, "{v:?}");
        }
        let full = nichols_flag(&u, &[SparseVec::unit(0, 1), SparseVec::unit(1, 1)]);
        assert_eq!(full.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn flag_breaking_coideal_condition_is_rejected() {
        let (d, u) = clifford();
        let lay = u.layout().unwrap().clone();
        let x1 = SparseVec::unit(lay.generator(0), 2);
        let x1x2 = SparseVec::unit(lay.index(&[1, 1], 0), 2);
        let flag = vec![vec![u.algebra().unit().clone()], vec![x1], vec![x1x2]];
        match check_degree_one_generation(&d, &u, &flag) {
            Err(Error::HypothesisViolated { condition, .. }) => assert_eq!(condition, 3),
            other => panic!("{other:?}"),
        }
    }
}
