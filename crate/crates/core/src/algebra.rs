//! Finite-dimensional associative algebras given by structure constants.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Operator, SparseVec, Subspace};
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    conductor: u32,
    /// `table[i * dim + j] = b_i b_j`.
    table: Vec<SparseVec>,
    unit: SparseVec,
}

impl Algebra {
    pub fn new(dim: usize, conductor: u32, table: Vec<SparseVec>, unit: SparseVec) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: table.len(),
            });
        }
        Ok(Algebra {
            dim,
            conductor,
            table,
            unit,
        })
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(conductor: u32) -> Self {
        Algebra {
            dim: 1,
            conductor,
            table: vec![SparseVec::unit(0, conductor)],
            unit: SparseVec::unit(0, conductor),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn one(&self) -> CycloNumber {
        CycloNumber::one(self.conductor)
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.conductor)
    }

    pub fn check_vec(&self, v: &SparseVec) -> Result<()> {
        match v.max_index() {
            Some(m) if m >= self.dim => Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m + 1,
            }),
            _ => Ok(()),
        }
    }

    pub fn multiply(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.axpy(&(x * y), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn checked_multiply(&self, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        self.check_vec(a)?;
        self.check_vec(b)?;
        Ok(self.multiply(a, b))
    }

    pub fn power(&self, a: &SparseVec, k: u32) -> SparseVec {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// `x ↦ b x`.
    pub fn left_operator(&self, b: &SparseVec) -> Operator {
        Operator {
            n: self.dim,
            cols: (0..self.dim).map(|j| self.multiply(b, &self.basis(j))).collect(),
        }
    }

    /// `x ↦ x b`.
    pub fn right_operator(&self, b: &SparseVec) -> Operator {
        Operator {
            n: self.dim,
            cols: (0..self.dim).map(|j| self.multiply(&self.basis(j), b)).collect(),
        }
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.multiply(ij, &self.basis(k));
                    let right = self.multiply(&self.basis(i), self.basis_product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    pub fn unit_witness(&self) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let b = self.basis(i);
            self.multiply(&self.unit, &b) != b || self.multiply(&b, &self.unit) != b
        })
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.basis_product(j, i).clone());
            }
        }
        Algebra {
            dim: n,
            conductor: self.conductor,
            table,
            unit: self.unit.clone(),
        }
    }

    /// Smallest subalgebra containing the unit and `gens`.
    pub fn generated_subalgebra(&self, gens: &[SparseVec]) -> Subspace {
        let mut ech = Echelon::new();
        let mut basis: Vec<SparseVec> = Vec::new();
        let mut frontier: Vec<SparseVec> = Vec::new();
        for v in std::iter::once(&self.unit).chain(gens) {
            if ech.insert(v) {
                basis.push(v.clone());
                frontier.push(v.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.multiply(&x, g);
                if ech.insert(&y) {
                    basis.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        Subspace::spanned_by(basis)
    }

    /// Restriction of the product to a subalgebra with the given basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<Algebra> {
        let k = sub.dim();
        let mut table = Vec::with_capacity(k * k);
        for a in sub.basis() {
            for b in sub.basis() {
                let p = self.multiply(a, b);
                table.push(
                    sub.coordinates(&p)
                        .ok_or_else(|| Error::NotClosed("product leaves the subspace".into()))?,
                );
            }
        }
        let unit = sub
            .coordinates(&self.unit)
            .ok_or_else(|| Error::NotClosed("unit not in subspace".into()))?;
        Algebra::new(k, self.conductor, table, unit)
    }
}

/// Index of `b_i ⊗ c_j` in `B ⊗ C` when `dim C = right_dim`.
#[inline]
pub fn tensor_index(i: usize, j: usize, right_dim: usize) -> usize {
    i * right_dim + j
}

#[inline]
pub fn tensor_split(k: usize, right_dim: usize) -> (usize, usize) {
    (k / right_dim, k % right_dim)
}

pub fn tensor_vectors(a: &SparseVec, b: &SparseVec, right_dim: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_term(tensor_index(i, j, right_dim), &(x * y));
        }
    }
    out
}

/// Product in `A ⊗ B` with componentwise multiplication.
pub fn tensor_multiply(a: &Algebra, b: &Algebra, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let nb = b.dim();
    let mut out = SparseVec::new();
    for (k1, c1) in x.iter() {
        let (i1, j1) = tensor_split(k1, nb);
        for (k2, c2) in y.iter() {
            let (i2, j2) = tensor_split(k2, nb);
            let c = c1 * c2;
            let left = a.basis_product(i1, i2);
            let right = b.basis_product(j1, j2);
            for (p, u) in left.iter() {
                let cu = &c * u;
                for (q, v) in right.iter() {
                    out.add_term(tensor_index(p, q, nb), &(&cu * v));
                }
            }
        }
    }
    out
}

/// Applies `f ⊗ id` where `f` is given by its columns.
pub fn apply_left(f: &[SparseVec], x: &SparseVec, right_dim: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in x.iter() {
        let (i, j) = tensor_split(k, right_dim);
        for (p, u) in f[i].iter() {
            out.add_term(tensor_index(p, j, right_dim), &(c * u));
        }
    }
    out
}

/// Applies `id ⊗ g`, where `g` maps into a space of dimension `out_right_dim`.
pub fn apply_right(g: &[SparseVec], x: &SparseVec, right_dim: usize, out_right_dim: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in x.iter() {
        let (i, j) = tensor_split(k, right_dim);
        for (q, v) in g[j].iter() {
            out.add_term(tensor_index(i, q, out_right_dim), &(c * v));
        }
    }
    out
}
