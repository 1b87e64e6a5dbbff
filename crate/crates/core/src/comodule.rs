//! Left comodule algebras over an explicit Hopf algebra: axioms, Loewy
//! filtration, associated graded algebra, coinvariants and the Galois map.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{apply_left, apply_right, tensor_multiply, tensor_split, tensor_vectors, Algebra};
use crate::checks::VerificationReport;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebraRep;
use crate::linalg::{nullspace, Echelon, SparseVec, Subspace};

/// PBW bookkeeping for algebras presented by generators `v_k` and `e_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwShape {
    pub heights: Vec<u32>,
    /// Basis index of each degree-one generator.
    pub generators: Vec<usize>,
    /// Basis index of `e_f`, by position of `f` in the group part.
    pub group_part: Vec<usize>,
    /// Ambient group index of each group-part position.
    pub members: Vec<usize>,
}

impl PbwShape {
    pub fn index(&self, r: &[u32], pos: usize) -> usize {
        let mut ri = 0usize;
        let mut s = 1usize;
        for (&x, &h) in r.iter().zip(&self.heights) {
            ri += x as usize * s;
            s *= h as usize;
        }
        ri * self.members.len() + pos
    }

    pub fn label(&self, idx: usize) -> (Vec<u32>, usize) {
        let n = self.members.len();
        let mut ri = idx / n;
        let r = self
            .heights
            .iter()
            .map(|&h| {
                let x = (ri % h as usize) as u32;
                ri /= h as usize;
                x
            })
            .collect();
        (r, idx % n)
    }

    /// `v_1^{r_1} ⋯ v_s^{r_s} e_f` evaluated by multiplying generators.
    pub fn generator_word(&self, alg: &Algebra, r: &[u32], pos: usize) -> SparseVec {
        let mut acc = alg.unit().clone();
        for (k, &e) in r.iter().enumerate() {
            let v = alg.basis(self.generators[k]);
            for _ in 0..e {
                acc = alg.multiply(&acc, &v);
            }
        }
        alg.multiply(&acc, &alg.basis(self.group_part[pos]))
    }

    pub fn compatible_with(&self, other: &PbwShape) -> bool {
        self.heights == other.heights && self.members == other.members
    }
}

#[derive(Clone, Debug)]
pub struct ComoduleAlgebraRep {
    labels: Vec<String>,
    algebra: Algebra,
    /// `λ(b_j)` over `h_p ⊗ b_a` at index `p * dim + a`.
    coaction: Vec<SparseVec>,
    hopf: Arc<HopfAlgebraRep>,
    degrees: Option<Vec<usize>>,
    pbw: Option<PbwShape>,
}

impl ComoduleAlgebraRep {
    pub fn from_parts(
        labels: Vec<String>,
        algebra: Algebra,
        coaction: Vec<SparseVec>,
        hopf: Arc<HopfAlgebraRep>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if labels.len() != n || coaction.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: labels.len().min(coaction.len()),
            });
        }
        Ok(ComoduleAlgebraRep {
            labels,
            algebra,
            coaction,
            hopf,
            degrees: None,
            pbw: None,
        })
    }

    /// `H` itself with `λ = Δ`.
    pub fn regular(hopf: Arc<HopfAlgebraRep>) -> Self {
        let degrees = Some(hopf.degrees().to_vec());
        ComoduleAlgebraRep {
            labels: hopf.labels().to_vec(),
            algebra: hopf.algebra().clone(),
            coaction: hopf.comult_table().to_vec(),
            degrees,
            pbw: None,
            hopf,
        }
    }

    /// Any algebra with `λ(a) = 1 ⊗ a`.
    pub fn trivial(algebra: Algebra, labels: Vec<String>, hopf: Arc<HopfAlgebraRep>) -> Result<Self> {
        let n = algebra.dim();
        let one = hopf.algebra().unit().clone();
        let coaction = (0..n).map(|j| tensor_vectors(&one, &algebra.basis(j), n)).collect();
        Self::from_parts(labels, algebra, coaction, hopf)
    }

    pub fn with_degrees(mut self, degrees: Vec<usize>) -> Self {
        self.degrees = Some(degrees);
        self
    }

    pub fn with_pbw(mut self, shape: PbwShape) -> Self {
        self.pbw = Some(shape);
        self
    }

    pub fn with_coaction(mut self, coaction: Vec<SparseVec>) -> Self {
        self.coaction = coaction;
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

    pub fn coaction_table(&self) -> &[SparseVec] {
        &self.coaction
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebraRep> {
        &self.hopf
    }

    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    pub fn pbw(&self) -> Option<&PbwShape> {
        self.pbw.as_ref()
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        self.algebra.basis(i)
    }

    pub fn multiply(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.algebra.multiply(a, b)
    }

    pub fn coact(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            out.axpy(c, &self.coaction[i]);
        }
        out
    }

    /// Multiplies in `H ⊗ A`.
    pub fn tensor_product(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor_multiply(self.hopf.algebra(), &self.algebra, x, y)
    }
}

/// Sweeps the comodule-algebra axioms over the basis.
pub fn verify_comodule_algebra(a: &ComoduleAlgebraRep) -> VerificationReport {
    let n = a.dim();
    let h = a.hopf();
    let dh = h.dim();
    let alg = a.algebra();
    let lbl = |i: usize| a.labels()[i].clone();
    let mut r = VerificationReport::new();
    r.record(
        "associativity",
        alg.associativity_witness()
            .map(|(i, j, k)| format!("({})({})({})", lbl(i), lbl(j), lbl(k))),
    );
    r.record("unit", alg.unit_witness().map(lbl));
    let lam = a.coaction_table();
    r.record(
        "coassociativity",
        (0..n)
            .into_par_iter()
            .find_first(|&j| apply_left(h.comult_table(), &lam[j], n) != apply_right(lam, &lam[j], n, dh * n))
            .map(lbl),
    );
    let eps = h.counit_columns();
    r.record(
        "counit",
        (0..n)
            .into_par_iter()
            .find_first(|&j| apply_left(&eps, &lam[j], n) != a.basis(j))
            .map(lbl),
    );
    let unit_ok = a.coact(alg.unit()) == tensor_vectors(h.algebra().unit(), alg.unit(), n);
    r.record(
        "coaction is an algebra map",
        if !unit_ok {
            Some("λ(1) ≠ 1⊗1".into())
        } else {
            (0..n * n)
                .into_par_iter()
                .find_first(|&k| {
                    let (i, j) = (k / n, k % n);
                    a.coact(alg.basis_product(i, j)) != a.tensor_product(&lam[i], &lam[j])
                })
                .map(|k| format!("λ({}·{})", lbl(k / n), lbl(k % n)))
        },
    );
    r
}

/// `A_0 ⊆ A_1 ⊆ … ⊆ A_m = A`.
#[derive(Clone, Debug)]
pub struct FiltrationRep {
    layers: Vec<Subspace>,
}

impl FiltrationRep {
    pub fn from_layers(layers: Vec<Subspace>) -> Self {
        FiltrationRep { layers }
    }

    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    pub fn layer(&self, n: usize) -> &Subspace {
        &self.layers[n.min(self.layers.len() - 1)]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(|s| s.dim()).collect()
    }

    pub fn top(&self) -> usize {
        self.layers.len() - 1
    }

    /// Least `n` with `v ∈ A_n`.
    pub fn degree_of(&self, v: &SparseVec) -> Option<usize> {
        self.layers.iter().position(|s| s.contains(v))
    }

    pub fn same_as(&self, other: &FiltrationRep) -> bool {
        let m = self.top().max(other.top());
        (0..=m).all(|n| {
            let (a, b) = (self.layer(n), other.layer(n));
            a.dim() == b.dim() && a.contains_subspace(b)
        })
    }
}

/// `A_n = λ^{-1}(H_n ⊗ A)`, solved as a kernel for every `n`.
pub fn loewy_filtration(a: &ComoduleAlgebraRep) -> FiltrationRep {
    let n = a.dim();
    let h = a.hopf();
    let hdeg = h.degrees();
    let m = h.max_degree();
    let layers: Vec<Subspace> = (0..=m)
        .into_par_iter()
        .map(|layer| {
            let cols: Vec<SparseVec> = a
                .coaction_table()
                .iter()
                .map(|v| v.filtered(|k| hdeg[tensor_split(k, n).0] > layer))
                .collect();
            Subspace::spanned_by(nullspace(&cols))
        })
        .collect();
    let mut layers = layers;
    while layers.len() > 1 && layers[layers.len() - 2].dim() == n {
        layers.pop();
    }
    FiltrationRep { layers }
}

/// The filtration by the recorded monomial degrees.
pub fn monomial_filtration(a: &ComoduleAlgebraRep) -> Option<FiltrationRep> {
    let deg = a.degrees()?;
    let m = deg.iter().copied().max().unwrap_or(0);
    let c = a.conductor();
    let layers = (0..=m)
        .map(|k| {
            Subspace::spanned_by(
                (0..a.dim())
                    .filter(|&i| deg[i] <= k)
                    .map(|i| SparseVec::unit(i, c)),
            )
        })
        .collect();
    Some(FiltrationRep { layers })
}

/// First pair of layer basis vectors with `A_i A_j ⊄ A_{i+j}`.
pub fn filtration_product_witness(a: &ComoduleAlgebraRep, f: &FiltrationRep) -> Option<(usize, usize)> {
    let top = f.top();
    (0..=top).find_map(|i| {
        (0..=top).find_map(|j| {
            let target = f.layer(i + j);
            for x in f.layer(i).basis() {
                for y in f.layer(j).basis() {
                    if !target.contains(&a.multiply(x, y)) {
                        return Some((i, j));
                    }
                }
            }
            None
        })
    })
}

/// `gr A` together with the layer representatives it was computed from.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub algebra: ComoduleAlgebraRep,
    /// Degree of each basis element of `gr A`.
    pub grading: Vec<usize>,
    /// Representative in `A` of each basis element of `gr A`.
    pub representatives: Vec<SparseVec>,
}

impl GradedAlgebra {
    pub fn graded_dims(&self) -> Vec<usize> {
        let m = self.grading.iter().copied().max().unwrap_or(0);
        (0..=m)
            .map(|n| self.grading.iter().filter(|&&d| d == n).count())
            .collect()
    }
}

/// Quotient layers `A_n / A_{n-1}` with the induced product and coaction.
///
/// Representatives prefer basis vectors of `A`, so for PBW-presented
/// algebras the basis of `gr A` carries the same labels.
pub fn associated_graded(a: &ComoduleAlgebraRep, f: &FiltrationRep) -> Result<GradedAlgebra> {
    let h = a.hopf();
    if let Some(b) = h.comultiplication_degree_witness(true) {
        return Err(Error::ValidationFailed(format!(
            "ambient Hopf algebra is not graded at {}",
            h.labels()[b]
        )));
    }
    let n = a.dim();
    let c = a.conductor();
    let mut ech = Echelon::new();
    let mut reps: Vec<SparseVec> = Vec::new();
    let mut grading: Vec<usize> = Vec::new();
    let mut source: Vec<Option<usize>> = Vec::new();
    for (deg, layer) in f.layers().iter().enumerate() {
        for i in 0..n {
            let u = SparseVec::unit(i, c);
            if layer.contains(&u) && ech.insert(&u) {
                reps.push(u);
                grading.push(deg);
                source.push(Some(i));
            }
        }
        for v in layer.basis() {
            if ech.insert(v) {
                reps.push(v.clone());
                grading.push(deg);
                source.push(None);
            }
        }
    }
    if reps.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: reps.len(),
        });
    }
    let frame = Subspace::spanned_by(reps.clone());
    let coords = |v: &SparseVec| frame.coordinates(v).expect("representatives form a basis");
    let keep_degree = |v: SparseVec, d: usize| v.filtered(|k| grading[k] == d);
    let table: Vec<SparseVec> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            keep_degree(coords(&a.multiply(&reps[i], &reps[j])), grading[i] + grading[j])
        })
        .collect();
    let unit = coords(a.algebra().unit());
    let algebra = Algebra::new(n, c, table, unit)?;
    let hdeg = h.degrees();
    let coaction: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .map(|k| {
            let lam = a.coact(&reps[k]);
            let mut out = SparseVec::new();
            // regroup λ(rep) = Σ_p h_p ⊗ y_p and expand each y_p in the frame
            let mut parts: std::collections::BTreeMap<usize, SparseVec> = Default::default();
            for (t, coef) in lam.iter() {
                let (p, q) = tensor_split(t, n);
                parts.entry(p).or_default().add_term(q, coef);
            }
            for (p, y) in parts {
                for (j, coef) in coords(&y).iter() {
                    if hdeg[p] + grading[j] == grading[k] {
                        out.add_term(p * n + j, coef);
                    }
                }
            }
            out
        })
        .collect();
    let labels = (0..n)
        .map(|k| match source[k] {
            Some(i) => a.labels()[i].clone(),
            None => format!("[{}]", k),
        })
        .collect();
    let gr = ComoduleAlgebraRep::from_parts(labels, algebra, coaction, h.clone())?
        .with_degrees(grading.clone());
    let gr = match a.pbw() {
        Some(shape) if source.iter().enumerate().all(|(k, s)| *s == Some(k)) => gr.with_pbw(shape.clone()),
        _ => gr,
    };
    Ok(GradedAlgebra {
        algebra: gr,
        grading,
        representatives: reps,
    })
}

/// First failure of `φ` (given by columns) to be a bijective map of
/// comodule algebras over the same Hopf algebra.
pub fn comodule_algebra_map_witness(
    src: &ComoduleAlgebraRep,
    dst: &ComoduleAlgebraRep,
    phi: &[SparseVec],
) -> Option<String> {
    let (n, m) = (src.dim(), dst.dim());
    if n != m || phi.len() != n {
        return Some(format!("dimensions {n} and {m} differ"));
    }
    let (hs, hd) = (src.hopf(), dst.hopf());
    if !Arc::ptr_eq(hs, hd) && (hs.algebra() != hd.algebra() || hs.comult_table() != hd.comult_table()) {
        return Some("different Hopf algebras".into());
    }
    let apply = |v: &SparseVec| {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.axpy(c, &phi[i]);
        }
        out
    };
    if crate::linalg::rank(phi) != n {
        return Some("not bijective".into());
    }
    if apply(src.algebra().unit()) != *dst.algebra().unit() {
        return Some("unit not preserved".into());
    }
    let bad_product = (0..n * n).into_par_iter().find_first(|&k| {
        let (i, j) = (k / n, k % n);
        apply(src.algebra().basis_product(i, j)) != dst.multiply(&phi[i], &phi[j])
    });
    if let Some(k) = bad_product {
        return Some(format!(
            "product {}·{}",
            src.labels()[k / n],
            src.labels()[k % n]
        ));
    }
    (0..n)
        .into_par_iter()
        .find_first(|&j| apply_right(phi, &src.coaction_table()[j], n, m) != dst.coact(&phi[j]))
        .map(|j| format!("coaction at {}", src.labels()[j]))
}

/// The map sending `v_k ↦ v_k`, `e_f ↦ e_f` between two PBW-presented
/// comodule algebras, checked to be a bijective comodule-algebra map.
pub fn generator_matching_iso(src: &ComoduleAlgebraRep, dst: &ComoduleAlgebraRep) -> Result<Vec<SparseVec>> {
    let (ps, pd) = match (src.pbw(), dst.pbw()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::IsoCheckFailed("missing PBW generators".into())),
    };
    if !ps.compatible_with(pd) {
        return Err(Error::IsoCheckFailed("generator shapes differ".into()));
    }
    let n = src.dim();
    let mut phi = Vec::with_capacity(n);
    for j in 0..n {
        let (r, pos) = ps.label(j);
        if ps.generator_word(src.algebra(), &r, pos) != src.basis(j) {
            return Err(Error::IsoCheckFailed(format!(
                "basis element {} is not its generator word",
                src.labels()[j]
            )));
        }
        phi.push(pd.generator_word(dst.algebra(), &r, pos));
    }
    match comodule_algebra_map_witness(src, dst, &phi) {
        None => Ok(phi),
        Some(w) => Err(Error::IsoCheckFailed(w)),
    }
}

/// `{a : λ(a) = 1 ⊗ a}`.
pub fn coinvariants(a: &ComoduleAlgebraRep) -> Subspace {
    let n = a.dim();
    let one = a.hopf().algebra().unit();
    let cols: Vec<SparseVec> = (0..n)
        .map(|j| a.coaction_table()[j].difference(&tensor_vectors(one, &a.basis(j), n)))
        .collect();
    Subspace::spanned_by(nullspace(&cols))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub bijective: bool,
}

/// Columns of `β(a ⊗ b) = a_{(-1)} ⊗ a_{(0)} b` over `A ⊗ A → H ⊗ A`.
pub fn galois_matrix(a: &ComoduleAlgebraRep) -> Vec<SparseVec> {
    let n = a.dim();
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let mut out = SparseVec::new();
            let bj = a.basis(j);
            for (t, coef) in a.coaction_table()[i].iter() {
                let (p, q) = tensor_split(t, n);
                let prod = a.multiply(&a.basis(q), &bj);
                for (r, c2) in prod.iter() {
                    out.add_term(p * n + r, &(coef * c2));
                }
            }
            out
        })
        .collect()
}

pub fn galois_map(a: &ComoduleAlgebraRep) -> (Vec<SparseVec>, GaloisReport) {
    let cols = galois_matrix(a);
    let rows = a.hopf().dim() * a.dim();
    let rank = crate::linalg::rank(&cols);
    let report = GaloisReport {
        rows,
        cols: cols.len(),
        rank,
        bijective: rows == cols.len() && rank == rows,
    };
    (cols, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_bosonization, QlsDatum};

    fn sweedler() -> Arc<HopfAlgebraRep> {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        Arc::new(build_bosonization(&d).unwrap())
    }

    #[test]
    fn regular_comodule_is_galois_with_trivial_coinvariants() {
        let h = sweedler();
        let a = ComoduleAlgebraRep::regular(h);
        assert!(verify_comodule_algebra(&a).passed());
        let co = coinvariants(&a);
        assert_eq!(co.dim(), 1);
        assert!(co.contains(a.algebra().unit()));
        let (_, g) = galois_map(&a);
        assert!(g.bijective);
        assert_eq!(g.rank, 16);
        let f = loewy_filtration(&a);
        assert_eq!(f.dims(), vec![2, 4]);
        assert!(f.same_as(&monomial_filtration(&a).unwrap()));
        assert!(filtration_product_witness(&a, &f).is_none());
        let gr = associated_graded(&a, &f).unwrap();
        assert_eq!(gr.graded_dims(), vec![2, 2]);
        assert_eq!(gr.algebra.algebra().table(), a.algebra().table());
    }

    #[test]
    fn trivial_coaction_has_everything_coinvariant() {
        let h = sweedler();
        // the group algebra kZ2 inside Sweedler: basis 1, u
        let one = SparseVec::unit(0, 2);
        let u = SparseVec::unit(1, 2);
        let alg = Algebra::new(2, 2, vec![one.clone(), u.clone(), u, one.clone()], one).unwrap();
        let a = ComoduleAlgebraRep::trivial(alg, vec!["1".into(), "u".into()], h).unwrap();
        assert!(verify_comodule_algebra(&a).passed());
        assert_eq!(coinvariants(&a).dim(), 2);
        assert!(!galois_map(&a).1.bijective);
    }
}
