//! Invariant-subspace search for families of operators, right `H`-simplicity
//! of comodule algebras, and the simple modules of a finite-dimensional
//! algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{tensor_split, Algebra};
use crate::comodule::ComoduleAlgebraRep;
use crate::linalg::{complement_units, nullspace, Echelon, Operator, SparseVec, Subspace};
use crate::scalar::CycloNumber;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// A representation given by the operators of a generating set.
#[derive(Clone, Debug)]
pub struct OperatorFamily {
    pub n: usize,
    pub conductor: u32,
    pub ops: Vec<Operator>,
}

impl OperatorFamily {
    pub fn new(n: usize, conductor: u32, ops: Vec<Operator>) -> Self {
        let ops = ops.into_iter().filter(|o| o.cols.iter().any(|c| !c.is_zero())).collect();
        OperatorFamily { n, conductor, ops }
    }

    /// Smallest subspace containing `v` and stable under every operator.
    pub fn spin(&self, v: &SparseVec) -> Subspace {
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        let mut frontier = Vec::new();
        if ech.insert(v) {
            basis.push(v.clone());
            frontier.push(v.clone());
        }
        while let Some(x) = frontier.pop() {
            for op in &self.ops {
                let y = op.apply(&x);
                if ech.insert(&y) {
                    basis.push(y.clone());
                    frontier.push(y);
                }
                if basis.len() == self.n {
                    return Subspace::spanned_by(basis);
                }
            }
        }
        Subspace::spanned_by(basis)
    }

    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        self.ops
            .iter()
            .all(|op| sub.basis().iter().all(|v| sub.contains(&op.apply(v))))
    }

    /// Basis of the unital algebra generated by the operators.
    pub fn enveloping_algebra(&self) -> Vec<Operator> {
        let id = Operator::identity(self.n, self.conductor);
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        let mut frontier = Vec::new();
        let full = self.n * self.n;
        for op in std::iter::once(&id).chain(&self.ops) {
            if ech.insert(&op.flatten()) {
                basis.push(op.clone());
                frontier.push(op.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            if basis.len() == full {
                break;
            }
            for g in &self.ops {
                let y = g.compose(&x);
                if ech.insert(&y.flatten()) {
                    basis.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        basis
    }

    pub fn transposed(&self) -> OperatorFamily {
        OperatorFamily {
            n: self.n,
            conductor: self.conductor,
            ops: self.ops.iter().map(transpose).collect(),
        }
    }

    pub fn restrict(&self, sub: &Subspace) -> OperatorFamily {
        let ops = self
            .ops
            .iter()
            .map(|op| Operator {
                n: sub.dim(),
                cols: sub
                    .basis()
                    .iter()
                    .map(|v| sub.coordinates(&op.apply(v)).expect("invariant subspace"))
                    .collect(),
            })
            .collect();
        OperatorFamily {
            n: sub.dim(),
            conductor: self.conductor,
            ops,
        }
    }

    pub fn quotient(&self, sub: &Subspace) -> OperatorFamily {
        let comp = complement_units(sub.basis(), self.n, self.conductor);
        let k = sub.dim();
        let mut frame: Vec<SparseVec> = sub.basis().to_vec();
        frame.extend(comp.iter().cloned());
        let frame = Subspace::spanned_by(frame);
        let ops = self
            .ops
            .iter()
            .map(|op| Operator {
                n: comp.len(),
                cols: comp
                    .iter()
                    .map(|v| {
                        let c = frame.coordinates(&op.apply(v)).expect("full frame");
                        c.filtered(|i| i >= k).map_indices(|i| i - k)
                    })
                    .collect(),
            })
            .collect();
        OperatorFamily {
            n: comp.len(),
            conductor: self.conductor,
            ops,
        }
    }
}

pub fn transpose(op: &Operator) -> Operator {
    let mut cols = vec![SparseVec::new(); op.n];
    for (j, col) in op.cols.iter().enumerate() {
        for (i, c) in col.iter() {
            cols[i].add_term(j, c);
        }
    }
    Operator { n: op.n, cols }
}

/// `{u : ⟨w, u⟩ = 0 for all w ∈ sub}`.
fn annihilator(sub: &Subspace, n: usize) -> Subspace {
    let cols: Vec<SparseVec> = (0..n)
        .map(|j| {
            let mut c = SparseVec::new();
            for (t, w) in sub.basis().iter().enumerate() {
                if let Some(x) = w.get(j) {
                    c.add_term(t, x);
                }
            }
            c
        })
        .collect();
    Subspace::spanned_by(nullspace(&cols))
}

/// Scalars tried as eigenvalues: `0` and `±ζ_L^k`.
fn eigenvalue_candidates(conductor: u32) -> Vec<CycloNumber> {
    let mut out = vec![CycloNumber::zero(conductor)];
    for sign in [-1i64, 1] {
        for k in 0..conductor as i64 {
            let z = &CycloNumber::root_of_unity(conductor, k) * &CycloNumber::from_int(conductor, sign);
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    for m in [2i64, -2, 3, -3] {
        out.push(CycloNumber::from_int(conductor, m));
    }
    out
}

/// Elements of the enveloping algebra to probe: the operators, their
/// pairwise products, and seeded random combinations of a span basis.
fn probes(fam: &OperatorFamily, span: &[Operator], seed: u64) -> Vec<Operator> {
    let mut out: Vec<Operator> = fam.ops.clone();
    for a in fam.ops.iter().take(8) {
        for b in fam.ops.iter().take(8) {
            out.push(a.compose(b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..6 {
        let mut flat = SparseVec::new();
        for x in span {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                flat.axpy(&CycloNumber::from_int(fam.conductor, c), &x.flatten());
            }
        }
        out.push(Operator::unflatten(fam.n, &flat));
    }
    out
}

/// A proper nonzero invariant subspace found by spinning eigenvectors of
/// probe elements, directly and through the transposed family.
pub fn find_invariant_subspace(fam: &OperatorFamily, span: &[Operator], seed: u64) -> Option<Subspace> {
    let n = fam.n;
    if n <= 1 {
        return None;
    }
    let dual = fam.transposed();
    let cands = eigenvalue_candidates(fam.conductor);
    for x in probes(fam, span, seed) {
        for c in &cands {
            let shifted = x.shifted(c);
            if shifted.rank() == n {
                continue;
            }
            for v in shifted.kernel() {
                let s = fam.spin(&v);
                if s.dim() < n {
                    return Some(s);
                }
            }
            for v in transpose(&shifted).kernel() {
                let s = dual.spin(&v);
                if s.dim() < n && s.dim() > 0 {
                    return Some(annihilator(&s, n));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SimplicityVerdict {
    SplitSimple,
    Reducible {
        #[serde(skip)]
        witness: Vec<SparseVec>,
        witness_dim: usize,
    },
    Undecided {
        span_dim: usize,
        hint: String,
    },
}

impl SimplicityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SimplicityVerdict::SplitSimple => "split-simple",
            SimplicityVerdict::Reducible { .. } => "reducible",
            SimplicityVerdict::Undecided { .. } => "undecided",
        }
    }
}

/// Right multiplications and the maps `(φ ⊗ id) λ` for the dual basis of `H`.
pub fn costable_right_ideal_operators(a: &ComoduleAlgebraRep) -> OperatorFamily {
    let n = a.dim();
    let dh = a.hopf().dim();
    let mut ops: Vec<Operator> = (0..n).map(|b| a.algebra().right_operator(&a.basis(b))).collect();
    for p in 0..dh {
        let cols = a
            .coaction_table()
            .iter()
            .map(|lam| {
                let mut out = SparseVec::new();
                for (t, c) in lam.iter() {
                    let (h, j) = tensor_split(t, n);
                    if h == p {
                        out.add_term(j, c);
                    }
                }
                out
            })
            .collect();
        ops.push(Operator { n, cols });
    }
    OperatorFamily::new(n, a.conductor(), ops)
}

/// Decides whether `A` has no nontrivial costable right ideal.
pub fn check_simplicity(a: &ComoduleAlgebraRep, seed: u64) -> SimplicityVerdict {
    let fam = costable_right_ideal_operators(a);
    let n = fam.n;
    let span = fam.enveloping_algebra();
    if span.len() == n * n {
        return SimplicityVerdict::SplitSimple;
    }
    match find_invariant_subspace(&fam, &span, seed) {
        Some(s) => SimplicityVerdict::Reducible {
            witness_dim: s.dim(),
            witness: s.basis().to_vec(),
        },
        None => SimplicityVerdict::Undecided {
            span_dim: span.len(),
            hint: format!("no invariant subspace found at conductor {}; enlarge the conductor", a.conductor()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub simple_dim: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleModulesReport {
    pub radical_dim: usize,
    pub semisimple_dim: usize,
    pub split: bool,
    pub blocks: Vec<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advice: Option<String>,
}

impl SimpleModulesReport {
    pub fn simple_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.simple_dim).collect()
    }
}

/// Traces of the generators on an absolutely simple constituent.
struct Factor {
    dim: usize,
    character: Vec<CycloNumber>,
}

fn composition_factors(fam: &OperatorFamily, seed: u64, out: &mut Vec<Factor>) -> bool {
    if fam.n == 0 {
        return true;
    }
    let span = fam.enveloping_algebra();
    if span.len() == fam.n * fam.n {
        out.push(Factor {
            dim: fam.n,
            character: fam.ops.iter().map(|o| o.trace(fam.conductor)).collect(),
        });
        return true;
    }
    match find_invariant_subspace(fam, &span, seed) {
        Some(s) => {
            let sub = fam.restrict(&s);
            let quo = fam.quotient(&s);
            composition_factors(&sub, seed, out) && composition_factors(&quo, seed, out)
        }
        None => false,
    }
}

/// Jacobson radical by the trace form, then the simple constituents of
/// `A / J(A)` when they split over the working field.
pub fn simple_modules(alg: &Algebra, seed: u64) -> SimpleModulesReport {
    let n = alg.dim();
    let c = alg.conductor();
    let traces: Vec<CycloNumber> = (0..n).map(|k| alg.left_operator(&alg.basis(k)).trace(c)).collect();
    let form = |v: &SparseVec| {
        let mut t = CycloNumber::zero(c);
        for (k, x) in v.iter() {
            t += &(x * &traces[k]);
        }
        t
    };
    let cols: Vec<SparseVec> = (0..n)
        .map(|j| {
            let mut col = SparseVec::new();
            for i in 0..n {
                col.add_term(i, &form(alg.basis_product(i, j)));
            }
            col
        })
        .collect();
    let radical = Subspace::spanned_by(nullspace(&cols));
    let regular = OperatorFamily {
        n,
        conductor: c,
        ops: (0..n).map(|k| alg.left_operator(&alg.basis(k))).collect(),
    };
    let top = regular.quotient(&radical);
    let semisimple_dim = top.n;
    let mut factors = Vec::new();
    let complete = composition_factors(&top, seed, &mut factors);
    let mut blocks: Vec<(Vec<CycloNumber>, Block)> = Vec::new();
    for f in factors {
        match blocks.iter_mut().find(|(ch, _)| *ch == f.character) {
            Some((_, b)) => b.multiplicity += 1,
            None => blocks.push((
                f.character,
                Block {
                    simple_dim: f.dim,
                    multiplicity: 1,
                },
            )),
        }
    }
    let mut blocks: Vec<Block> = blocks.into_iter().map(|(_, b)| b).collect();
    blocks.sort_by(|a, b| b.simple_dim.cmp(&a.simple_dim));
    let split = complete && blocks.iter().map(|b| b.simple_dim * b.simple_dim).sum::<usize>() == semisimple_dim;
    SimpleModulesReport {
        radical_dim: radical.dim(),
        semisimple_dim,
        split,
        advice: (!split).then(|| format!("A/J(A) does not split at conductor {c}; enlarge the conductor")),
        blocks: if split { blocks } else { Vec::new() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::cohomology::TwoCocycle;
    use crate::hopf::{build_bosonization, QlsDatum};
    use crate::modcat::{build_a, ModCatDatum};

    fn group_algebra(n: usize, conductor: u32) -> Algebra {
        let table = (0..n * n).map(|k| SparseVec::unit((k / n + k % n) % n, conductor)).collect();
        Algebra::new(n, conductor, table, SparseVec::unit(0, conductor)).unwrap()
    }

    #[test]
    fn group_algebras_split_into_characters() {
        let r = simple_modules(&group_algebra(2, 2), DEFAULT_SEED);
        assert_eq!(r.radical_dim, 0);
        assert!(r.split);
        assert_eq!(r.blocks.len(), 2);
        let r = simple_modules(&group_algebra(4, 4), DEFAULT_SEED);
        assert_eq!(r.simple_dims(), vec![1, 1, 1, 1]);
        // Q Z4 = Q × Q × Q(i) does not split without i
        let r = simple_modules(&group_algebra(4, 2), DEFAULT_SEED);
        assert!(!r.split);
    }

    #[test]
    fn trivial_coaction_is_reducible() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let h = Arc::new(build_bosonization(&d).unwrap());
        let a = ComoduleAlgebraRep::trivial(group_algebra(2, 2), vec!["1".into(), "u".into()], h).unwrap();
        match check_simplicity(&a, DEFAULT_SEED) {
            SimplicityVerdict::Reducible { witness, witness_dim } => {
                assert_eq!(witness_dim, 1);
                // the augmentation ideal spanned by 1 - u
                let mut aug = SparseVec::unit(0, 2);
                aug.add_term(1, &CycloNumber::from_int(2, -1));
                assert!(Subspace::spanned_by(witness).contains(&aug));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn full_sweedler_datum_is_simple() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&d.group().whole()))
            .with_xi(0, CycloNumber::one(1));
        let a = build_a(&d, &m).unwrap();
        assert_eq!(check_simplicity(&a, DEFAULT_SEED), SimplicityVerdict::SplitSimple);
        let reg = ComoduleAlgebraRep::regular(a.hopf().clone());
        assert_eq!(check_simplicity(&reg, DEFAULT_SEED), SimplicityVerdict::SplitSimple);
    }

    #[test]
    fn local_and_clifford_algebras() {
        let d = QlsDatum::from_exps(&[2], &[&[1]], &[&[1]]).unwrap();
        let f1 = d.group().subgroup_generated_by(&[]).unwrap();
        let m = ModCatDatum::coordinate(&[0], TwoCocycle::trivial(&f1));
        let a = build_a(&d, &m).unwrap();
        let r = simple_modules(a.algebra(), DEFAULT_SEED);
        assert_eq!((r.radical_dim, r.simple_dims()), (1, vec![1]));
        let c = QlsDatum::from_exps(&[2], &[&[1], &[1]], &[&[1], &[1]]).unwrap();
        let one = CycloNumber::one(1);
        let m = ModCatDatum::coordinate(&[0, 1], TwoCocycle::trivial(&f1))
            .with_xi(0, one.clone())
            .with_xi(1, one);
        let a = build_a(&c, &m).unwrap();
        let r = simple_modules(a.algebra(), DEFAULT_SEED);
        assert_eq!(r.radical_dim, 0);
        assert!(r.split);
        assert_eq!(r.blocks, vec![Block { simple_dim: 2, multiplicity: 2 }]);
        // the quaternions over Q do not split; adjoining i does
        let minus = CycloNumber::from_int(1, -1);
        let q = ModCatDatum::coordinate(&[0, 1], TwoCocycle::trivial(&f1))
            .with_xi(0, minus.clone())
            .with_xi(1, minus);
        let a = build_a(&c, &q).unwrap();
        assert!(!simple_modules(a.algebra(), DEFAULT_SEED).split);
        let c4 = c.clone().with_conductor(4);
        let u = Arc::new(build_bosonization(&c4).unwrap());
        let a = crate::modcat::build_a_over(u, &c4, &q).unwrap();
        let r = simple_modules(a.algebra(), DEFAULT_SEED);
        assert!(r.split);
        assert_eq!(r.simple_dims(), vec![2]);
    }
}
