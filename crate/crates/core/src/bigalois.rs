//! BiGalois objects, cotensor products, and transport of comodule algebras
//! from the bosonization `U` to a lifting `H`.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{tensor_multiply, tensor_split, tensor_vectors, Algebra};
use crate::checks::VerificationReport;
use crate::cohomology::TwoCocycle;
use crate::comodule::{coinvariants, galois_map, verify_comodule_algebra, ComoduleAlgebraRep};
use crate::error::{Error, Result};
use crate::hopf::{build_bosonization, HopfAlgebraRep, QlsDatum};
use crate::lifting::{build_lifting, validate_lifting, LiftingDatum};
use crate::linalg::{invert, nullspace, rank, SparseVec, Subspace};
use crate::modcat::{build_a_over, working_conductor, ModCatDatum};
use crate::simplicity::{check_simplicity, simple_modules, SimpleModulesReport};
use crate::twist::{deform_hopf, delta_terms, HopfCocycle};

/// An algebra with a left `L`-coaction (carried by `algebra`) and a commuting
/// right `R`-coaction `ρ`, stored as `rho[b]` over `B ⊗ R`.
#[derive(Clone, Debug)]
pub struct BiGaloisRep {
    algebra: ComoduleAlgebraRep,
    right: Arc<HopfAlgebraRep>,
    rho: Vec<SparseVec>,
}

impl BiGaloisRep {
    pub fn from_parts(algebra: ComoduleAlgebraRep, right: Arc<HopfAlgebraRep>, rho: Vec<SparseVec>) -> Result<Self> {
        if rho.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), got: rho.len() });
        }
        Ok(BiGaloisRep { algebra, right, rho })
    }

    /// `H` with both coactions given by `Δ`.
    pub fn regular(h: Arc<HopfAlgebraRep>) -> Self {
        BiGaloisRep {
            rho: h.comult_table().to_vec(),
            algebra: ComoduleAlgebraRep::regular(h.clone()),
            right: h,
        }
    }

    /// `H_σ`, product `σ(x_1,y_1) x_2 y_2`, left `H^σ`- and right `H`-coaction `Δ`.
    pub fn h_sigma(h: Arc<HopfAlgebraRep>, sigma: &HopfCocycle) -> Result<Self> {
        let hs = Arc::new(deform_hopf(&h, sigma)?);
        Self::h_sigma_over(h, sigma, hs)
    }

    pub fn h_sigma_over(h: Arc<HopfAlgebraRep>, sigma: &HopfCocycle, h_sigma: Arc<HopfAlgebraRep>) -> Result<Self> {
        let n = h.dim();
        let table: Vec<SparseVec> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / n, k % n);
                let mut out = SparseVec::new();
                for (x1, x2, a) in delta_terms(&h, x) {
                    for (y1, y2, b) in delta_terms(&h, y) {
                        let s = sigma.value(x1, y1);
                        if !s.is_zero() {
                            out.axpy(&(&(&a * &b) * s), h.algebra().basis_product(x2, y2));
                        }
                    }
                }
                out
            })
            .collect();
        let algebra = Algebra::new(n, h.conductor(), table, h.algebra().unit().clone())?;
        let labels = h.labels().to_vec();
        let left = ComoduleAlgebraRep::from_parts(labels, algebra, h.comult_table().to_vec(), h_sigma)?;
        Ok(BiGaloisRep {
            rho: h.comult_table().to_vec(),
            algebra: left,
            right: h,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &ComoduleAlgebraRep {
        &self.algebra
    }

    pub fn left_hopf(&self) -> &Arc<HopfAlgebraRep> {
        self.algebra.hopf()
    }

    pub fn right_hopf(&self) -> &Arc<HopfAlgebraRep> {
        &self.right
    }

    pub fn rho_table(&self) -> &[SparseVec] {
        &self.rho
    }

    pub fn coact_right(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.axpy(c, &self.rho[i]);
        }
        out
    }

    /// `B^op` with `λ'(b) = S^{-1}(b_1) ⊗ b_0` over `R` and
    /// `ρ'(b) = b_0 ⊗ S^{-1}(b_{-1})` over `L`.
    pub fn opposite(&self) -> Result<Self> {
        let n = self.dim();
        let l = self.left_hopf().clone();
        let r = self.right.clone();
        let s_inv = |h: &HopfAlgebraRep| {
            invert(h.antipode_table(), h.conductor())
                .ok_or_else(|| Error::ValidationFailed("antipode is not bijective".into()))
        };
        let (sl, sr) = (s_inv(&l)?, s_inv(&r)?);
        let apply = |m: &[SparseVec], i: usize| m[i].clone();
        let dr = r.dim();
        let lam: Vec<SparseVec> = (0..n)
            .map(|b| {
                let mut out = SparseVec::new();
                for (t, c) in self.rho[b].iter() {
                    let (b0, h) = tensor_split(t, dr);
                    out.add(&tensor_vectors(&apply(&sr, h), &SparseVec::single(b0, c.clone()), n));
                }
                out
            })
            .collect();
        let rho: Vec<SparseVec> = (0..n)
            .map(|b| {
                let mut out = SparseVec::new();
                for (t, c) in self.algebra.coaction_table()[b].iter() {
                    let (h, b0) = tensor_split(t, n);
                    out.add(&tensor_vectors(&SparseVec::single(b0, c.clone()), &apply(&sl, h), l.dim()));
                }
                out
            })
            .collect();
        let labels = self.algebra.labels().to_vec();
        let algebra = ComoduleAlgebraRep::from_parts(labels, self.algebra.algebra().opposite(), lam, r)?;
        Ok(BiGaloisRep { algebra, right: l, rho })
    }
}

/// Columns of `x ⊗ y ↦ x y_0 ⊗ y_1` over `B ⊗ B → B ⊗ R`.
fn right_galois_matrix(b: &BiGaloisRep) -> Vec<SparseVec> {
    let n = b.dim();
    let dr = b.right.dim();
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            let mut out = SparseVec::new();
            for (t, c) in b.rho[y].iter() {
                let (y0, h) = tensor_split(t, dr);
                for (z, c2) in b.algebra.algebra().basis_product(x, y0).iter() {
                    out.add_term(z * dr + h, &(c * c2));
                }
            }
            out
        })
        .collect()
}

pub fn verify_bigalois(b: &BiGaloisRep) -> VerificationReport {
    let n = b.dim();
    let r = &b.right;
    let dr = r.dim();
    let alg = b.algebra.algebra();
    let lbl = |i: usize| b.algebra.labels()[i].clone();
    let mut rep = VerificationReport::new();
    rep.merge("left: ", verify_comodule_algebra(&b.algebra));
    let rho_prod = |x: &SparseVec, y: &SparseVec| tensor_multiply(alg, r.algebra(), x, y);
    let unit_ok = b.coact_right(alg.unit()) == tensor_vectors(alg.unit(), r.algebra().unit(), dr);
    rep.record(
        "right: coaction is an algebra map",
        if !unit_ok {
            Some("ρ(1) ≠ 1⊗1".into())
        } else {
            (0..n * n)
                .into_par_iter()
                .find_first(|&k| {
                    let (i, j) = (k / n, k % n);
                    b.coact_right(alg.basis_product(i, j)) != rho_prod(&b.rho[i], &b.rho[j])
                })
                .map(|k| format!("ρ({}·{})", lbl(k / n), lbl(k % n)))
        },
    );
    // (ρ ⊗ id)ρ = (id ⊗ Δ)ρ on B ⊗ R ⊗ R
    rep.record(
        "right: coassociativity",
        (0..n)
            .into_par_iter()
            .find_first(|&j| {
                let mut lhs = SparseVec::new();
                let mut rhs = SparseVec::new();
                for (t, c) in b.rho[j].iter() {
                    let (b0, h) = tensor_split(t, dr);
                    for (t2, c2) in b.rho[b0].iter() {
                        let (b00, h2) = tensor_split(t2, dr);
                        lhs.add_term((b00 * dr + h2) * dr + h, &(c * c2));
                    }
                    for (t2, c2) in r.comult_table()[h].iter() {
                        let (h1, h2) = tensor_split(t2, dr);
                        rhs.add_term((b0 * dr + h1) * dr + h2, &(c * c2));
                    }
                }
                lhs != rhs
            })
            .map(lbl),
    );
    rep.record(
        "right: counit",
        (0..n)
            .find(|&j| {
                let mut v = SparseVec::new();
                for (t, c) in b.rho[j].iter() {
                    let (b0, h) = tensor_split(t, dr);
                    v.add_term(b0, &(c * &r.counit(&r.basis(h))));
                }
                v != b.algebra.basis(j)
            })
            .map(lbl),
    );
    // (λ ⊗ id)ρ = (id ⊗ ρ)λ on L ⊗ B ⊗ R
    rep.record(
        "bicomodule",
        (0..n)
            .into_par_iter()
            .find_first(|&j| {
                let mut lhs = SparseVec::new();
                for (t, c) in b.rho[j].iter() {
                    let (b0, h) = tensor_split(t, dr);
                    for (t2, c2) in b.algebra.coaction_table()[b0].iter() {
                        let (p, b00) = tensor_split(t2, n);
                        lhs.add_term((p * n + b00) * dr + h, &(c * c2));
                    }
                }
                let mut rhs = SparseVec::new();
                for (t, c) in b.algebra.coaction_table()[j].iter() {
                    let (p, b0) = tensor_split(t, n);
                    for (t2, c2) in b.rho[b0].iter() {
                        let (b00, h) = tensor_split(t2, dr);
                        rhs.add_term((p * n + b00) * dr + h, &(c * c2));
                    }
                }
                lhs != rhs
            })
            .map(lbl),
    );
    let (_, left) = galois_map(&b.algebra);
    rep.record(
        "left Galois map bijective",
        (!left.bijective).then(|| format!("rank {} of {}x{}", left.rank, left.rows, left.cols)),
    );
    let cols = right_galois_matrix(b);
    let rk = rank(&cols);
    let rows = n * dr;
    rep.record(
        "right Galois map bijective",
        (rows != cols.len() || rk != rows).then(|| format!("rank {rk} of {rows}x{}", cols.len())),
    );
    rep
}

/// The datum `(W = V, F = Γ, ψ = 1, -μ, -λ)`.
pub fn bigalois_modcat(d: &QlsDatum, l: &LiftingDatum) -> ModCatDatum {
    let all: Vec<usize> = (0..d.theta()).collect();
    let neg = l.negated();
    let mut m = ModCatDatum::coordinate(&all, TwoCocycle::trivial(&d.group().whole()));
    for i in 0..d.theta() {
        m = m.with_xi(i, neg.mu[i].clone());
        for j in i + 1..d.theta() {
            m = m.with_alpha(i, j, neg.lam[i][j].clone());
        }
    }
    m
}

/// `B = 𝒜(V,Γ,1,-μ,-λ)` with its left `U`-coaction and right `H`-coaction
/// `ρ(e_g) = e_g ⊗ g`, `ρ(v_i) = v_i ⊗ 1 + e_{g_i} ⊗ a_i`.
pub fn build_bigalois(d: &QlsDatum, l: &LiftingDatum) -> Result<BiGaloisRep> {
    let report = validate_lifting(d, l);
    if !report.valid {
        return Err(Error::ValidationFailed(format!("{:?}", report.violations)));
    }
    let m = bigalois_modcat(d, l);
    let c = working_conductor(d, &m).lcm(&l.conductor());
    let d = d.clone().with_conductor(c);
    let u = Arc::new(build_bosonization(&d)?);
    let h = Arc::new(build_lifting(&d, l)?);
    build_bigalois_over(&d, l, u, h)
}

pub fn build_bigalois_over(
    d: &QlsDatum,
    l: &LiftingDatum,
    u: Arc<HopfAlgebraRep>,
    h: Arc<HopfAlgebraRep>,
) -> Result<BiGaloisRep> {
    let m = bigalois_modcat(d, l);
    let b = build_a_over(u, d, &m)?;
    let pbw = b.pbw().expect("PBW-presented").clone();
    let lay = h
        .layout()
        .ok_or_else(|| Error::ValidationFailed("H carries no PBW layout".into()))?
        .clone();
    let ba = b.algebra();
    let ha = h.algebra();
    let dh = h.dim();
    let e = |g: usize| {
        let pos = pbw.members.iter().position(|&x| x == g).expect("F = Γ");
        ba.basis(pbw.group_part[pos])
    };
    let rho_v: Vec<SparseVec> = (0..d.theta())
        .map(|i| {
            let mut out = tensor_vectors(&ba.basis(pbw.generators[i]), ha.unit(), dh);
            out.add(&tensor_vectors(&e(d.g_idx(i)), &ha.basis(lay.generator(i)), dh));
            out
        })
        .collect();
    let rho: Vec<SparseVec> = (0..b.dim())
        .into_par_iter()
        .map(|j| {
            let (r, pos) = pbw.label(j);
            let mut acc = tensor_vectors(ba.unit(), ha.unit(), dh);
            for (i, &k) in r.iter().enumerate() {
                for _ in 0..k {
                    acc = tensor_multiply(ba, ha, &acc, &rho_v[i]);
                }
            }
            let g = pbw.members[pos];
            let eg = tensor_vectors(&ba.basis(pbw.group_part[pos]), &ha.basis(lay.group_like(g)), dh);
            tensor_multiply(ba, ha, &acc, &eg)
        })
        .collect();
    BiGaloisRep::from_parts(b, h, rho)
}

/// `B □_R A` together with its basis inside `B ⊗ A`.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub algebra: ComoduleAlgebraRep,
    pub embedding: Vec<SparseVec>,
}

fn same_hopf(a: &HopfAlgebraRep, b: &HopfAlgebraRep) -> bool {
    a.dim() == b.dim() && a.algebra() == b.algebra() && a.comult_table() == b.comult_table()
}

/// Equalizer of `ρ ⊗ id` and `id ⊗ λ_A`, with the componentwise product and
/// the coaction induced from the left side of `B`.
pub fn cotensor_with_embedding(b: &BiGaloisRep, a: &ComoduleAlgebraRep) -> Result<Cotensor> {
    if !Arc::ptr_eq(b.right_hopf(), a.hopf()) && !same_hopf(b.right_hopf(), a.hopf()) {
        return Err(Error::NotClosed("A is not a comodule over the right side of B".into()));
    }
    let (nb, na) = (b.dim(), a.dim());
    let dr = b.right.dim();
    let c = b.algebra.conductor();
    let cols: Vec<SparseVec> = (0..nb * na)
        .into_par_iter()
        .map(|k| {
            let (x, j) = (k / na, k % na);
            let mut col = SparseVec::new();
            for (t, cx) in b.rho[x].iter() {
                let (x0, h) = tensor_split(t, dr);
                col.add_term((x0 * dr + h) * na + j, cx);
            }
            for (t, cj) in a.coaction_table()[j].iter() {
                let (h, j0) = tensor_split(t, na);
                col.add_term((x * dr + h) * na + j0, &-cj);
            }
            col
        })
        .collect();
    let basis = Subspace::spanned_by(nullspace(&cols)).canonical_rows();
    let m = basis.len();
    let kernel = Subspace::spanned_by(basis.clone());
    let coords = |v: &SparseVec, what: &str| -> Result<SparseVec> {
        kernel
            .coordinates(v)
            .ok_or_else(|| Error::NotClosed(format!("{what} leaves the cotensor product")))
    };
    let bal = b.algebra.algebra();
    let table: Vec<SparseVec> = (0..m * m)
        .into_par_iter()
        .map(|k| {
            let p = tensor_multiply(bal, a.algebra(), &basis[k / m], &basis[k % m]);
            coords(&p, "a product")
        })
        .collect::<Result<_>>()?;
    let unit = coords(&tensor_vectors(bal.unit(), a.algebra().unit(), na), "1 ⊗ 1")?;
    let algebra = Algebra::new(m, c, table, unit)?;
    let lam_b = b.algebra.coaction_table();
    let coaction: Vec<SparseVec> = basis
        .par_iter()
        .map(|t| -> Result<SparseVec> {
            let mut per_p: std::collections::BTreeMap<usize, SparseVec> = Default::default();
            for (idx, ct) in t.iter() {
                let (x, j) = tensor_split(idx, na);
                for (t2, c2) in lam_b[x].iter() {
                    let (p, x0) = tensor_split(t2, nb);
                    per_p.entry(p).or_default().add_term(x0 * na + j, &(ct * c2));
                }
            }
            let mut out = SparseVec::new();
            for (p, v) in per_p {
                for (q, cq) in coords(&v, "the induced coaction")?.iter() {
                    out.add_term(p * m + q, cq);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let labels = (0..m).map(|k| format!("t{}", k + 1)).collect();
    let rep = ComoduleAlgebraRep::from_parts(labels, algebra, coaction, b.left_hopf().clone())?;
    Ok(Cotensor { algebra: rep, embedding: basis })
}

pub fn cotensor(b: &BiGaloisRep, a: &ComoduleAlgebraRep) -> Result<ComoduleAlgebraRep> {
    Ok(cotensor_with_embedding(b, a)?.algebra)
}

/// Coordinates in the cotensor basis of the images of a map into `B ⊗ A`.
pub fn into_cotensor(ct: &Cotensor, images: &[SparseVec]) -> Option<Vec<SparseVec>> {
    let sub = Subspace::spanned_by(ct.embedding.clone());
    images.iter().map(|v| sub.coordinates(v)).collect()
}

/// `a ↦ a_{-1} ⊗ a_0`, the comparison map `A → H_σ □_H A`.
pub fn coaction_images(a: &ComoduleAlgebraRep) -> Vec<SparseVec> {
    a.coaction_table().to_vec()
}

/// `a ↦ ι(S(a_{-1})) ⊗ a_0` for a transport along the trivial lifting,
/// where `ι` sends `x^r g` to `v^r e_g`.
pub fn trivial_transport_images(a: &ComoduleAlgebraRep, b: &BiGaloisRep) -> Result<Vec<SparseVec>> {
    let u = a.hopf();
    let lay = u
        .layout()
        .ok_or_else(|| Error::ValidationFailed("U carries no PBW layout".into()))?;
    let pbw = b
        .algebra()
        .pbw()
        .ok_or_else(|| Error::ValidationFailed("B is not PBW-presented".into()))?;
    let order = lay.group.order();
    let iota = |i: usize| {
        let (ri, g) = (i / order, i % order);
        let mut r = Vec::with_capacity(lay.heights.len());
        let mut rest = ri;
        for &hgt in &lay.heights {
            r.push((rest % hgt as usize) as u32);
            rest /= hgt as usize;
        }
        let pos = pbw.members.iter().position(|&x| x == g).expect("F = Γ");
        pbw.index(&r, pos)
    };
    let na = a.dim();
    Ok(a
        .coaction_table()
        .iter()
        .map(|lam| {
            let mut out = SparseVec::new();
            for (t, c) in lam.iter() {
                let (h, j) = tensor_split(t, na);
                for (s, cs) in u.apply_antipode(&u.basis(h)).iter() {
                    out.add_term(iota(s) * na + j, &(c * cs));
                }
            }
            out
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub dim_before: usize,
    pub dim_after: usize,
    pub simplicity_before: String,
    pub simplicity_after: String,
    pub coinvariants_dim: usize,
    pub blocks_before: SimpleModulesReport,
    pub blocks_after: SimpleModulesReport,
    pub axioms: VerificationReport,
    pub bigalois: VerificationReport,
}

impl TransportReport {
    /// Dimension, simplicity verdict, trivial coinvariants, and every axiom.
    pub fn structure_preserved(&self) -> bool {
        self.dim_before == self.dim_after
            && self.simplicity_before == self.simplicity_after
            && self.coinvariants_dim == 1
            && self.axioms.passed()
            && self.bigalois.passed()
    }

    /// Radical dimension and simple blocks of the underlying algebras agree.
    /// Not implied by the correspondence: a Galois object of a lifting can be
    /// semisimple where the bosonization is not.
    pub fn blocks_preserved(&self) -> bool {
        self.blocks_before == self.blocks_after
    }
}

#[derive(Clone, Debug)]
pub struct Transported {
    pub source: ComoduleAlgebraRep,
    pub bigalois: BiGaloisRep,
    pub cotensor: Cotensor,
    pub report: TransportReport,
}

/// `B^op □_U 𝒜(W,F,ψ,ξ,α)`, a left comodule algebra over the lifting `H`.
pub fn transport(d: &QlsDatum, l: &LiftingDatum, m: &ModCatDatum, seed: u64) -> Result<Transported> {
    let report = validate_lifting(d, l);
    if !report.valid {
        return Err(Error::ValidationFailed(format!("{:?}", report.violations)));
    }
    let c = working_conductor(d, m)
        .lcm(&working_conductor(d, &bigalois_modcat(d, l)))
        .lcm(&l.conductor());
    let d = d.clone().with_conductor(c);
    let u = Arc::new(build_bosonization(&d)?);
    let h = Arc::new(build_lifting(&d, l)?);
    let b = build_bigalois_over(&d, l, u.clone(), h)?;
    let a = build_a_over(u, &d, m)?;
    let bop = b.opposite()?;
    let ct = cotensor_with_embedding(&bop, &a)?;
    let sm_before = simple_modules(a.algebra(), seed);
    let sm_after = simple_modules(ct.algebra.algebra(), seed);
    let report = TransportReport {
        dim_before: a.dim(),
        dim_after: ct.algebra.dim(),
        simplicity_before: check_simplicity(&a, seed).label().into(),
        simplicity_after: check_simplicity(&ct.algebra, seed).label().into(),
        coinvariants_dim: coinvariants(&ct.algebra).dim(),
        blocks_before: sm_before,
        blocks_after: sm_after,
        axioms: verify_comodule_algebra(&ct.algebra),
        bigalois: verify_bigalois(&bop),
    };
    Ok(Transported {
        source: a,
        bigalois: b,
        cotensor: ct,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::comodule_algebra_map_witness;
    use crate::scalar::CycloNumber;
    use crate::simplicity::DEFAULT_SEED;
    use crate::twist::deform_comodule_algebra_over;

    fn one() -> CycloNumber {
        CycloNumber::one(1)
    }

    fn z4() -> QlsDatum {
        QlsDatum::from_exps(&[4], &[&[1]], &[&[2]]).unwrap()
    }

    #[test]
    fn trivial_lifting_bigalois_is_u() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let b = build_bigalois(&d, &LiftingDatum::trivial(1)).unwrap();
        assert_eq!(b.dim(), 4);
        let rep = verify_bigalois(&b);
        assert!(rep.passed(), "{}", rep.summary());
        assert_eq!(b.algebra().coaction_table(), b.rho_table());
    }

    #[test]
    fn z4_mu_lifting_bigalois() {
        let l = LiftingDatum::trivial(1).with_mu(0, one());
        let b = build_bigalois(&z4(), &l).unwrap();
        assert_eq!(b.dim(), 8);
        let rep = verify_bigalois(&b);
        assert!(rep.passed(), "{}", rep.summary());
        let op = b.opposite().unwrap();
        let rep = verify_bigalois(&op);
        assert!(rep.passed(), "{}", rep.summary());
    }

    #[test]
    fn regular_cotensor_returns_a() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let u = Arc::new(build_bosonization(&d).unwrap());
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&d.group().whole())).with_xi(0, one());
        let a = build_a_over(u.clone(), &d, &m).unwrap();
        let b = BiGaloisRep::regular(u);
        let ct = cotensor_with_embedding(&b, &a).unwrap();
        assert_eq!(ct.algebra.dim(), a.dim());
        let phi = into_cotensor(&ct, &coaction_images(&a)).unwrap();
        assert_eq!(comodule_algebra_map_witness(&a, &ct.algebra, &phi), None);
    }

    #[test]
    fn trivial_transport_is_identity_up_to_iso() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&d.group().whole())).with_xi(0, one());
        let t = transport(&d, &LiftingDatum::trivial(1), &m, DEFAULT_SEED).unwrap();
        assert!(t.report.structure_preserved() && t.report.blocks_preserved(), "{:?}", t.report);
        let phi = into_cotensor(&t.cotensor, &trivial_transport_images(&t.source, &t.bigalois).unwrap()).unwrap();
        assert_eq!(comodule_algebra_map_witness(&t.source, &t.cotensor.algebra, &phi), None);
    }

    #[test]
    fn group_cocycle_cotensor_matches_deformation() {
        let d = QlsDatum::from_exps(&[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]])
            .unwrap()
            .with_conductor(4);
        let h = Arc::new(build_bosonization(&d).unwrap());
        let psi = crate::cohomology::cocycle_classes(&d.group().whole()).pop().unwrap();
        let sigma = HopfCocycle::from_group_cocycle(&h, &psi).unwrap();
        let hs = Arc::new(deform_hopf(&h, &sigma).unwrap());
        let b = BiGaloisRep::h_sigma_over(h.clone(), &sigma, hs.clone()).unwrap();
        assert!(verify_bigalois(&b).passed());
        let m = ModCatDatum::coordinate(&[0, 1], TwoCocycle::trivial(&d.group().whole())).with_alpha(0, 1, one());
        let a = build_a_over(h, &d, &m).unwrap();
        let ct = cotensor_with_embedding(&b, &a).unwrap();
        let a_sigma = deform_comodule_algebra_over(&a, &sigma, hs).unwrap();
        let phi = into_cotensor(&ct, &coaction_images(&a)).unwrap();
        assert_eq!(comodule_algebra_map_witness(&a_sigma, &ct.algebra, &phi), None);
    }

    #[test]
    fn z4_transport() {
        let d = z4();
        let l = LiftingDatum::trivial(1).with_mu(0, one());
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&d.group().whole()));
        let t = transport(&d, &l, &m, DEFAULT_SEED).unwrap();
        assert!(t.report.structure_preserved(), "{:?}", t.report);
        assert_eq!(t.report.dim_after, 8);
        // 𝒦(V,1,Z4) has four one-dimensional simples; its transport is a
        // twisted form of the lifting and splits as two 2x2 matrix blocks
        assert_eq!(t.report.blocks_before.radical_dim, 4);
        assert_eq!(t.report.blocks_after.radical_dim, 0);
        assert_eq!(t.report.blocks_after.simple_dims(), vec![2, 2]);
        assert!(!t.report.blocks_preserved());
    }
}
