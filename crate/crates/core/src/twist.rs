//! Hopf 2-cocycles given by tables, and the products they deform.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{tensor_split, Algebra};
use crate::checks::VerificationReport;
use crate::cohomology::TwoCocycle;
use crate::comodule::{verify_comodule_algebra, ComoduleAlgebraRep};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebraRep;
use crate::linalg::{solve, SparseVec, Subspace};
use crate::scalar::CycloNumber;

/// Terms `(x_(1), x_(2), coef)` of `Δ(e_b)`.
pub(crate) fn delta_terms(h: &HopfAlgebraRep, b: usize) -> Vec<(usize, usize, CycloNumber)> {
    let n = h.dim();
    h.comult_table()[b]
        .iter()
        .map(|(t, c)| {
            let (i, j) = tensor_split(t, n);
            (i, j, c.clone())
        })
        .collect()
}

/// `Δ^{(k-1)}(e_b)` as words of `k` basis indices.
pub(crate) fn iterated_delta(h: &HopfAlgebraRep, b: usize, k: usize) -> Vec<(Vec<usize>, CycloNumber)> {
    let mut words = vec![(vec![b], CycloNumber::one(h.conductor()))];
    for _ in 1..k {
        let mut next = Vec::new();
        for (w, c) in words {
            let last = *w.last().unwrap();
            for (i, j, d) in delta_terms(h, last) {
                let mut w2 = w[..w.len() - 1].to_vec();
                w2.push(i);
                w2.push(j);
                next.push((w2, &c * &d));
            }
        }
        words = next;
    }
    words
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCocycle {
    dim: usize,
    conductor: u32,
    table: Vec<CycloNumber>,
    inverse: Option<Vec<CycloNumber>>,
}

impl HopfCocycle {
    /// From `σ(e_i, e_j) = table[i * dim + j]`; the convolution inverse is
    /// solved for and left empty when none exists.
    pub fn from_table(h: &HopfAlgebraRep, table: Vec<CycloNumber>) -> Result<Self> {
        let n = h.dim();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: table.len() });
        }
        let c = h.conductor();
        let table = table.iter().map(|x| x.rebase(c)).collect::<Result<Vec<_>>>()?;
        let mut s = HopfCocycle { dim: n, conductor: c, table, inverse: None };
        s.inverse = s.solve_inverse(h);
        Ok(s)
    }

    /// `σ = ε ⊗ ε`.
    pub fn trivial(h: &HopfAlgebraRep) -> Self {
        let n = h.dim();
        let c = h.conductor();
        let table: Vec<CycloNumber> = (0..n * n).map(|k| &h.counit(&h.basis(k / n)) * &h.counit(&h.basis(k % n))).collect();
        HopfCocycle { dim: n, conductor: c, inverse: Some(table.clone()), table }
    }

    /// `σ(x#g, y#h) = ε(x)ε(y)ψ(g,h)` for a 2-cocycle on the whole group.
    pub fn from_group_cocycle(h: &HopfAlgebraRep, psi: &TwoCocycle) -> Result<Self> {
        let lay = h
            .layout()
            .ok_or_else(|| Error::ValidationFailed("H carries no PBW layout".into()))?;
        let order = lay.group.order();
        if psi.subgroup().order() != order || psi.subgroup().ambient() != &lay.group {
            return Err(Error::ValidationFailed("cocycle must live on the whole group".into()));
        }
        let n = h.dim();
        let c = h.conductor();
        let mut table = vec![CycloNumber::zero(c); n * n];
        let mut inverse = table.clone();
        for a in 0..order {
            for b in 0..order {
                let v = psi.eval_idx(a, b).rebase(c)?;
                inverse[a * n + b] = v.inverse()?;
                table[a * n + b] = v;
            }
        }
        Ok(HopfCocycle { dim: n, conductor: c, table, inverse: Some(inverse) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[CycloNumber] {
        &self.table
    }

    pub fn inverse_table(&self) -> Option<&[CycloNumber]> {
        self.inverse.as_deref()
    }

    pub fn value(&self, i: usize, j: usize) -> &CycloNumber {
        &self.table[i * self.dim + j]
    }

    fn eval_with(table: &[CycloNumber], n: usize, c: u32, x: &SparseVec, y: &SparseVec) -> CycloNumber {
        let mut acc = CycloNumber::zero(c);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = &table[i * n + j];
                if !t.is_zero() {
                    acc += &(&(a * b) * t);
                }
            }
        }
        acc
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> CycloNumber {
        Self::eval_with(&self.table, self.dim, self.conductor, x, y)
    }

    pub fn eval_inverse(&self, x: &SparseVec, y: &SparseVec) -> Option<CycloNumber> {
        self.inverse
            .as_ref()
            .map(|t| Self::eval_with(t, self.dim, self.conductor, x, y))
    }

    /// Solves `σ(x_1,y_1) τ(x_2,y_2) = ε(x)ε(y)` for `τ`.
    fn solve_inverse(&self, h: &HopfAlgebraRep) -> Option<Vec<CycloNumber>> {
        let n = self.dim;
        let mut cols = vec![SparseVec::new(); n * n];
        for x in 0..n {
            let dx = delta_terms(h, x);
            for y in 0..n {
                let dy = delta_terms(h, y);
                for (x1, x2, a) in &dx {
                    for (y1, y2, b) in &dy {
                        let s = self.value(*x1, *y1);
                        if !s.is_zero() {
                            cols[x2 * n + y2].add_term(x * n + y, &(&(a * b) * s));
                        }
                    }
                }
            }
        }
        let mut rhs = SparseVec::new();
        for x in 0..n {
            for y in 0..n {
                rhs.add_term(x * n + y, &(&h.counit(&h.basis(x)) * &h.counit(&h.basis(y))));
            }
        }
        let tau = solve(&cols, &rhs)?;
        Some((0..n * n).map(|k| tau.get(k).cloned().unwrap_or_else(|| CycloNumber::zero(self.conductor))).collect())
    }
}

/// `Σ σ(x_1, y_1) x_2 y_2` for basis elements, the product of `H_σ`.
fn sigma_left_product(h: &HopfAlgebraRep, sigma: &HopfCocycle, x: usize, y: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (x1, x2, a) in delta_terms(h, x) {
        for (y1, y2, b) in delta_terms(h, y) {
            let s = sigma.value(x1, y1);
            if !s.is_zero() {
                out.axpy(&(&(&a * &b) * s), h.algebra().basis_product(x2, y2));
            }
        }
    }
    out
}

pub fn validate_hopf_cocycle(h: &HopfAlgebraRep, sigma: &HopfCocycle) -> VerificationReport {
    let n = h.dim();
    let lbl = |i: usize| h.labels()[i].clone();
    let mut r = VerificationReport::new();
    if sigma.dim() != n {
        r.record("shape", Some(format!("table for dimension {}, H has {n}", sigma.dim())));
        return r;
    }
    let one = h.algebra().unit();
    let norm = (0..n).find_map(|x| {
        let e = h.counit(&h.basis(x));
        let bx = h.basis(x);
        (sigma.eval(&bx, one) != e || sigma.eval(one, &bx) != e).then(|| lbl(x))
    });
    r.record("normalization", norm);
    let products: Vec<SparseVec> = (0..n * n)
        .into_par_iter()
        .map(|k| sigma_left_product(h, sigma, k / n, k % n))
        .collect();
    let bad = (0..n * n * n).into_par_iter().find_first(|&k| {
        let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
        sigma.eval(&products[x * n + y], &h.basis(z)) != sigma.eval(&h.basis(x), &products[y * n + z])
    });
    r.record(
        "cocycle identity",
        bad.map(|k| format!("({}, {}, {})", lbl(k / (n * n)), lbl((k / n) % n), lbl(k % n))),
    );
    r.record(
        "convolution invertibility",
        sigma.inverse.is_none().then(|| "no convolution inverse".to_string()),
    );
    r
}

fn require_valid(h: &HopfAlgebraRep, sigma: &HopfCocycle) -> Result<()> {
    let report = validate_hopf_cocycle(h, sigma);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::CocycleInvalid(report.summary()))
    }
}

/// `H^σ`: the coalgebra of `H` with `x·y = σ(x_1,y_1) σ^{-1}(x_3,y_3) x_2 y_2`.
pub fn deform_hopf(h: &HopfAlgebraRep, sigma: &HopfCocycle) -> Result<HopfAlgebraRep> {
    require_valid(h, sigma)?;
    let n = h.dim();
    let c = h.conductor();
    let inv = sigma.inverse.as_ref().expect("validated");
    let d3: Vec<_> = (0..n).map(|b| iterated_delta(h, b, 3)).collect();
    let table: Vec<SparseVec> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            let mut out = SparseVec::new();
            for (wx, a) in &d3[x] {
                for (wy, b) in &d3[y] {
                    let s = sigma.value(wx[0], wy[0]);
                    let t = &inv[wx[2] * n + wy[2]];
                    if s.is_zero() || t.is_zero() {
                        continue;
                    }
                    out.axpy(&(&(a * b) * &(s * t)), h.algebra().basis_product(wx[1], wy[1]));
                }
            }
            out
        })
        .collect();
    let algebra = Algebra::new(n, c, table, h.algebra().unit().clone())?;
    // S^σ(x) = σ(x_1, S x_2) S(x_3) σ^{-1}(S x_4, x_5)
    let antipode: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .map(|b| {
            let mut out = SparseVec::new();
            for (w, coef) in iterated_delta(h, b, 5) {
                let s2 = h.apply_antipode(&h.basis(w[1]));
                let left = sigma.eval(&h.basis(w[0]), &s2);
                if left.is_zero() {
                    continue;
                }
                let s4 = h.apply_antipode(&h.basis(w[3]));
                let right = sigma.eval_inverse(&s4, &h.basis(w[4])).expect("validated");
                if right.is_zero() {
                    continue;
                }
                out.axpy(&(&coef * &(&left * &right)), &h.apply_antipode(&h.basis(w[2])));
            }
            out
        })
        .collect();
    Ok(h.clone().with_product(algebra, antipode))
}

/// `K_σ` over `H^σ` with `a·b = σ(a_{-1}, b_{-1}) a_0 b_0`.
pub fn deform_comodule_algebra(k: &ComoduleAlgebraRep, sigma: &HopfCocycle) -> Result<ComoduleAlgebraRep> {
    let hs = Arc::new(deform_hopf(k.hopf(), sigma)?);
    deform_comodule_algebra_over(k, sigma, hs)
}

/// As [`deform_comodule_algebra`], reusing an already built `H^σ`.
pub fn deform_comodule_algebra_over(
    k: &ComoduleAlgebraRep,
    sigma: &HopfCocycle,
    h_sigma: Arc<HopfAlgebraRep>,
) -> Result<ComoduleAlgebraRep> {
    require_valid(k.hopf(), sigma)?;
    let n = k.dim();
    let lam = k.coaction_table();
    let split = |j: usize| -> Vec<(usize, usize, CycloNumber)> {
        lam[j]
            .iter()
            .map(|(t, c)| {
                let (p, q) = tensor_split(t, n);
                (p, q, c.clone())
            })
            .collect()
    };
    let parts: Vec<_> = (0..n).map(split).collect();
    let table: Vec<SparseVec> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let mut out = SparseVec::new();
            for (p, a0, c1) in &parts[i] {
                for (q, b0, c2) in &parts[j] {
                    let s = sigma.value(*p, *q);
                    if !s.is_zero() {
                        out.axpy(&(&(c1 * c2) * s), k.algebra().basis_product(*a0, *b0));
                    }
                }
            }
            out
        })
        .collect();
    let algebra = Algebra::new(n, k.conductor(), table, k.algebra().unit().clone())?;
    let out = ComoduleAlgebraRep::from_parts(k.labels().to_vec(), algebra, lam.to_vec(), h_sigma)?;
    let report = verify_comodule_algebra(&out);
    if !report.passed() {
        return Err(Error::CocycleInvalid(format!("deformed comodule algebra fails: {}", report.summary())));
    }
    Ok(out)
}

/// `_σK` for a left coideal subalgebra `K ⊆ H` compatible with `σ`:
/// `a·b = σ(a_2, b_2) a_1 b_1`, with `λ = Δ|_K`.
pub fn deform_coideal_subalgebra(
    h: Arc<HopfAlgebraRep>,
    k_basis: &[SparseVec],
    sigma: &HopfCocycle,
) -> Result<ComoduleAlgebraRep> {
    require_valid(&h, sigma)?;
    let n = h.dim();
    let k = Subspace::spanned_by(k_basis.iter().cloned());
    if k.dim() != k_basis.len() {
        return Err(Error::ValidationFailed("K basis is linearly dependent".into()));
    }
    let m = k.dim();
    let coords = |v: &SparseVec, what: &str| {
        k.coordinates(v)
            .ok_or_else(|| Error::NotClosed(format!("{what} leaves K")))
    };
    let mut coaction = Vec::with_capacity(m);
    for b in k.basis() {
        let delta = h.coproduct(b)?;
        let mut per_p: std::collections::BTreeMap<usize, SparseVec> = Default::default();
        for (t, c) in delta.iter() {
            let (p, q) = tensor_split(t, n);
            per_p.entry(p).or_default().add_term(q, c);
        }
        let mut out = SparseVec::new();
        for (p, v) in per_p {
            for (j, c) in coords(&v, "Δ(K)")?.iter() {
                out.add_term(p * m + j, c);
            }
        }
        coaction.push(out);
    }
    let mut table = Vec::with_capacity(m * m);
    for a in k.basis() {
        for b in k.basis() {
            let mut prod = SparseVec::new();
            for (i, ca) in a.iter() {
                for (j, cb) in b.iter() {
                    for (a1, a2, x) in delta_terms(&h, i) {
                        for (b1, b2, y) in delta_terms(&h, j) {
                            let s = sigma.value(a2, b2);
                            if !s.is_zero() {
                                let f = &(&(ca * cb) * &(&x * &y)) * s;
                                prod.axpy(&f, h.algebra().basis_product(a1, b1));
                            }
                        }
                    }
                }
            }
            table.push(coords(&prod, "σ(a_2,b_2) a_1 b_1")?);
        }
    }
    let unit = coords(h.algebra().unit(), "1")?;
    let algebra = Algebra::new(m, h.conductor(), table, unit)?;
    let labels = (0..m).map(|j| format!("k{}", j + 1)).collect();
    ComoduleAlgebraRep::from_parts(labels, algebra, coaction, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cocycle_classes;
    use crate::hopf::{build_bosonization, verify_hopf_axioms, QlsDatum};

    fn sweedler() -> HopfAlgebraRep {
        build_bosonization(&QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap()).unwrap()
    }

    fn klein() -> HopfAlgebraRep {
        // the nontrivial class of Z2 x Z2 needs i after normalization
        let d = QlsDatum::from_exps(&[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]])
            .unwrap()
            .with_conductor(4);
        build_bosonization(&d).unwrap()
    }

    /// Sweedler basis `1, g, x, xg`; σ supported on the group part and on
    /// pairs of `x`-terms with the given values.
    fn sweedler_family(h: &HopfAlgebraRep, vals: [i64; 4]) -> HopfCocycle {
        let mut t = vec![CycloNumber::zero(2); 16];
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            t[a * 4 + b] = CycloNumber::one(2);
        }
        for (k, (a, b)) in [(2, 2), (2, 3), (3, 2), (3, 3)].into_iter().enumerate() {
            t[a * 4 + b] = CycloNumber::from_int(2, vals[k]);
        }
        HopfCocycle::from_table(h, t).unwrap()
    }

    #[test]
    fn trivial_and_group_cocycles_validate() {
        let h = klein();
        assert!(validate_hopf_cocycle(&h, &HopfCocycle::trivial(&h)).passed());
        let classes = cocycle_classes(&h.layout().unwrap().group.whole());
        assert_eq!(classes.len(), 2);
        for psi in &classes {
            let s = HopfCocycle::from_group_cocycle(&h, psi).unwrap();
            assert!(validate_hopf_cocycle(&h, &s).passed());
            let solved = HopfCocycle::from_table(&h, s.table().to_vec()).unwrap();
            assert_eq!(solved.inverse_table(), s.inverse_table());
            let hs = deform_hopf(&h, &s).unwrap();
            let report = verify_hopf_axioms(&hs);
            assert!(report.passed(), "{}", report.summary());
        }
    }

    #[test]
    fn trivial_cocycle_changes_nothing() {
        let h = sweedler();
        let s = HopfCocycle::trivial(&h);
        let hs = deform_hopf(&h, &s).unwrap();
        assert_eq!(hs.algebra(), h.algebra());
        assert_eq!(hs.antipode_table(), h.antipode_table());
        let k = ComoduleAlgebraRep::regular(Arc::new(h));
        assert_eq!(deform_comodule_algebra(&k, &s).unwrap().algebra(), k.algebra());
    }

    #[test]
    fn perturbed_table_fails_with_witness() {
        let h = klein();
        let psi = &cocycle_classes(&h.layout().unwrap().group.whole())[1];
        let s = HopfCocycle::from_group_cocycle(&h, psi).unwrap();
        let mut t = s.table().to_vec();
        t[h.dim() + 2] = CycloNumber::from_int(4, 3);
        let bad = HopfCocycle::from_table(&h, t).unwrap();
        let report = validate_hopf_cocycle(&h, &bad);
        assert!(!report.get("cocycle identity").unwrap().passed);
        assert!(matches!(deform_hopf(&h, &bad), Err(Error::CocycleInvalid(_))));
    }

    #[test]
    fn sweedler_carries_a_non_group_cocycle() {
        let h = sweedler();
        let s = sweedler_family(&h, [1, 1, -1, -1]);
        let report = validate_hopf_cocycle(&h, &s);
        assert!(report.passed(), "{}", report.summary());
        let hs = deform_hopf(&h, &s).unwrap();
        assert!(verify_hopf_axioms(&hs).passed());
        let h = Arc::new(h);
        let k = deform_comodule_algebra(&ComoduleAlgebraRep::regular(h.clone()), &s).unwrap();
        assert!(verify_comodule_algebra(&k).passed());
        let x = SparseVec::unit(2, 2);
        let k_x = deform_coideal_subalgebra(h.clone(), &[h.algebra().unit().clone(), x], &s).unwrap();
        assert!(verify_comodule_algebra(&k_x).passed());
        let xg = SparseVec::unit(3, 2);
        assert!(matches!(
            deform_coideal_subalgebra(h, &[SparseVec::unit(0, 2), xg], &s),
            Err(Error::NotClosed(_))
        ));
    }
}
