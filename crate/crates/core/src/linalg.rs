//! Sparse exact linear algebra over [`CycloNumber`].
//!
//! Everything in the crate is small (dimensions in the low hundreds) but very
//! sparse, so vectors are ordered maps and elimination keeps rows in reduced
//! echelon form.

use std::collections::BTreeMap;

use crate::scalar::CycloNumber;

/// A sparse vector indexed by basis position.
#[derive(Clone, Debug, Default)]
pub struct SparseVec {
    entries: BTreeMap<usize, CycloNumber>,
}

impl PartialEq for SparseVec {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((i, a), (j, b))| i == j && a == b)
    }
}

impl Eq for SparseVec {}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(idx: usize, conductor: u32) -> Self {
        let mut v = Self::new();
        v.entries.insert(idx, CycloNumber::one(conductor));
        v
    }

    pub fn single(idx: usize, coef: CycloNumber) -> Self {
        let mut v = Self::new();
        v.add_term(idx, &coef);
        v
    }

    pub fn from_dense(values: &[CycloNumber]) -> Self {
        let mut v = Self::new();
        for (i, c) in values.iter().enumerate() {
            v.add_term(i, c);
        }
        v
    }

    pub fn to_dense(&self, len: usize, conductor: u32) -> Vec<CycloNumber> {
        let mut out = vec![CycloNumber::zero(conductor); len];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<&CycloNumber> {
        self.entries.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycloNumber)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &CycloNumber)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_term(&mut self, idx: usize, coef: &CycloNumber) {
        if coef.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.entries.remove(&idx);
                }
            }
            None => {
                self.entries.insert(idx, coef.clone());
            }
        }
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &CycloNumber, other: &SparseVec) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.entries {
            self.add_term(i, &(factor * c));
        }
    }

    pub fn add(&mut self, other: &SparseVec) {
        for (&i, c) in &other.entries {
            self.add_term(i, c);
        }
    }

    pub fn scaled(&self, factor: &CycloNumber) -> SparseVec {
        let mut out = SparseVec::new();
        if factor.is_zero() {
            return out;
        }
        for (&i, c) in &self.entries {
            out.entries.insert(i, factor * c);
        }
        out
    }

    pub fn negated(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }

    pub fn difference(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (&i, c) in &other.entries {
            out.add_term(i, &-c);
        }
        out
    }

    /// Relabels indices through `f`, summing collisions.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in &self.entries {
            out.add_term(f(i), c);
        }
        out
    }

    /// Keeps only indices satisfying `pred`.
    pub fn filtered(&self, mut pred: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(&i, _)| pred(i))
                .map(|(&i, c)| (i, c.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(usize, CycloNumber)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, CycloNumber)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in iter {
            v.add_term(i, &c);
        }
        v
    }
}

/// Incremental reduced row echelon form, optionally tracking how each row is
/// combined from the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
    inserted: usize,
    tracking: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Echelon {
            tracking: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered to [`Echelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Returns `(remainder, combination)` with
    /// `v = remainder + Σ combination[k] * inserted[k]`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let hits: Vec<(usize, usize)> = rem
            .keys()
            .filter_map(|k| self.pivots.get(&k).map(|&r| (k, r)))
            .collect();
        for (col, r) in hits {
            if let Some(c) = rem.get(col).cloned() {
                rem.axpy(&-&c, &self.rows[r]);
                if self.tracking {
                    combo.axpy(&c, &self.combos[r]);
                }
            }
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`; returns `true` when it was independent of earlier rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut rem, mut combo) = self.reduce(v);
        if rem.is_zero() {
            return false;
        }
        let (p, lead) = rem.leading().map(|(p, c)| (p, c.clone())).unwrap();
        let inv = lead.inverse().expect("nonzero pivot");
        rem = rem.scaled(&inv);
        if self.tracking {
            // row = (v - Σ combo) / lead
            let mut c = SparseVec::unit(idx, lead.conductor());
            c.axpy(&CycloNumber::from_int(lead.conductor(), -1), &combo);
            combo = c.scaled(&inv);
        }
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(p).cloned() {
                let neg = -&c;
                let row = rem.clone();
                self.rows[r].axpy(&neg, &row);
                if self.tracking {
                    let cb = combo.clone();
                    self.combos[r].axpy(&neg, &cb);
                }
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(rem);
        if self.tracking {
            self.combos.push(combo);
        }
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in
    /// their span. Requires tracking.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.tracking, "coordinates need a tracking echelon");
        let (rem, combo) = self.reduce(v);
        rem.is_zero().then_some(combo)
    }

    /// Removes the pivot from a row; used by quotient projections.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivots.get(&col).map(|&r| &self.rows[r])
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : Σ x_j columns[j] = 0}`.
pub fn nullspace(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let (rem, combo) = e.reduce(col);
        if rem.is_zero() {
            let conductor = col
                .iter()
                .next()
                .map(|(_, c)| c.conductor())
                .or_else(|| combo.iter().next().map(|(_, c)| c.conductor()))
                .unwrap_or(1);
            let mut k = combo.negated();
            k.add_term(j, &CycloNumber::one(conductor));
            kernel.push(k);
        }
        e.insert(col);
    }
    kernel
}

/// Some `x` with `Σ x_j columns[j] = target`.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::tracking();
    for col in columns {
        e.insert(col);
    }
    e.coordinates(target)
}

/// Columns of the inverse of the square matrix with the given columns.
pub fn invert(columns: &[SparseVec], conductor: u32) -> Option<Vec<SparseVec>> {
    let n = columns.len();
    let mut e = Echelon::tracking();
    for col in columns {
        e.insert(col);
    }
    if e.rank() != n {
        return None;
    }
    (0..n).map(|j| e.coordinates(&SparseVec::unit(j, conductor))).collect()
}

/// A basis of a subspace together with coordinate extraction.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<SparseVec>,
    ech: Echelon,
}

impl Subspace {
    /// Keeps an independent subfamily of `vectors`, in order.
    pub fn spanned_by(vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut basis = Vec::new();
        let mut probe = Echelon::new();
        for v in vectors {
            if probe.insert(&v) {
                basis.push(v);
            }
        }
        let mut ech = Echelon::tracking();
        for v in &basis {
            ech.insert(v);
        }
        Subspace { basis, ech }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.ech.coordinates(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Canonical reduced echelon rows, usable as comparison keys.
    pub fn canonical_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = self.ech.rows().to_vec();
        rows.sort_by_key(|r| r.leading().map(|(p, _)| p));
        rows
    }
}

/// Extends the basis of `sub` (a subspace of `F^n`) by standard unit vectors to
/// a basis of the whole space; returns only the added complement vectors.
pub fn complement_units(sub: &[SparseVec], n: usize, conductor: u32) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for v in sub {
        e.insert(v);
    }
    let mut out = Vec::new();
    for i in 0..n {
        let u = SparseVec::unit(i, conductor);
        if e.insert(&u) {
            out.push(u);
        }
    }
    out
}

/// A linear operator on `F^n`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub n: usize,
    pub cols: Vec<SparseVec>,
}

impl Operator {
    pub fn identity(n: usize, conductor: u32) -> Self {
        Operator {
            n,
            cols: (0..n).map(|i| SparseVec::unit(i, conductor)).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.axpy(c, &self.cols[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Operator {
            n: self.n,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn flatten(&self) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out.add_term(j * self.n + i, c);
            }
        }
        out
    }

    pub fn unflatten(n: usize, flat: &SparseVec) -> Operator {
        let mut cols = vec![SparseVec::new(); n];
        for (k, c) in flat.iter() {
            cols[k / n].add_term(k % n, c);
        }
        Operator { n, cols }
    }

    pub fn shifted(&self, c: &CycloNumber) -> Operator {
        let mut out = self.clone();
        for i in 0..self.n {
            out.cols[i].add_term(i, &-c);
        }
        out
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        nullspace(&self.cols)
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }

    pub fn trace(&self, conductor: u32) -> CycloNumber {
        let mut t = CycloNumber::zero(conductor);
        for (i, col) in self.cols.iter().enumerate() {
            if let Some(c) = col.get(i) {
                t += c;
            }
        }
        t
    }
}
