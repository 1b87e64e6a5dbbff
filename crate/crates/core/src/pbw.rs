//! Rewriting to PBW normal form `y_1^{r_1} … y_θ^{r_θ} e_f`.
//!
//! One engine serves the bosonization, its liftings and the comodule algebras
//! `𝒜`: they differ only in the group part (a twisted group algebra `k_ψ F`)
//! and in the lower-order terms attached to the skew-commutation and power
//! relations.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::cohomology::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character};
use crate::linalg::SparseVec;
use crate::scalar::CycloNumber;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// A degree-one generator.
    Y(u16),
    /// `e_f` for the member of `F` at this position; position 0 is the unit
    /// and never appears in a word.
    G(u16),
}

pub type Word = Vec<Sym>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// A combination of group-part elements, keyed by ambient group index.
pub type GroupTerm = Vec<(usize, CycloNumber)>;

/// Presentation data for a PBW-type algebra.
#[derive(Clone, Debug)]
pub struct PbwSpec {
    pub conductor: u32,
    pub ambient: AbelianGroup,
    /// Cocycle on the group part `F`.
    pub cocycle: TwoCocycle,
    /// `χ_i`, acting by `e_f y_i = χ_i(f) y_i e_f`.
    pub chi: Vec<Character>,
    /// `q[i][j]` in `y_i y_j - q_ij y_j y_i = L_ij` for `i < j`.
    pub q: Vec<Vec<CycloNumber>>,
    pub heights: Vec<u32>,
    /// `L_ij` for `i < j`, absent means zero.
    pub swap_lower: BTreeMap<(usize, usize), GroupTerm>,
    /// `y_i^{N_i} = P_i`.
    pub power_lower: Vec<GroupTerm>,
}

#[derive(Clone, Debug)]
pub struct PbwSystem {
    conductor: u32,
    theta: usize,
    group_order: usize,
    /// Ambient index of each group-part position.
    members: Vec<usize>,
    psi: Vec<CycloNumber>,
    gmul: Vec<usize>,
    heights: Vec<u32>,
    strides: Vec<usize>,
    chi: Vec<Vec<CycloNumber>>,
    /// For `j > i`: `y_j y_i = swap[j][i] y_i y_j + swap_lower[j][i]`.
    swap: Vec<Vec<CycloNumber>>,
    swap_lower: Vec<Vec<Vec<(usize, CycloNumber)>>>,
    power_lower: Vec<Vec<(usize, CycloNumber)>>,
}

#[derive(Clone, Copy, Debug)]
enum Redex {
    GroupGroup(usize),
    GroupY(usize),
    Swap(usize),
    Power(usize, usize),
}

impl PbwSystem {
    pub fn new(spec: &PbwSpec) -> Result<Self> {
        let f = spec.cocycle.subgroup();
        let theta = spec.heights.len();
        if spec.chi.len() != theta || spec.q.len() != theta || spec.power_lower.len() != theta {
            return Err(Error::DimensionMismatch {
                expected: theta,
                got: spec.chi.len(),
            });
        }
        let c = spec.conductor;
        let members = f.member_indices().to_vec();
        let n = members.len();
        let lift = |x: CycloNumber| x.rebase(c);
        let mut psi = Vec::with_capacity(n * n);
        let mut gmul = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                psi.push(lift(spec.cocycle.eval_idx(a, b))?);
                gmul.push(f.position(spec.ambient.mul_idx(a, b)).unwrap());
            }
        }
        let mut chi: Vec<Vec<CycloNumber>> = Vec::with_capacity(theta);
        for x in &spec.chi {
            let mut row = Vec::with_capacity(n);
            for &a in &members {
                let g = spec.ambient.element_at(a);
                row.push(lift(spec.ambient.evaluate_character(x, &g)?)?);
            }
            chi.push(row);
        }
        let to_pos = |t: &GroupTerm| -> Result<Vec<(usize, CycloNumber)>> {
            let mut out: Vec<(usize, CycloNumber)> = Vec::new();
            for (a, coef) in t {
                if coef.is_zero() {
                    continue;
                }
                let p = f.position(*a).ok_or_else(|| {
                    Error::NotInSubgroup(format!("{:?}", spec.ambient.element_at(*a).exps))
                })?;
                out.push((p, lift(coef.clone())?));
            }
            Ok(out)
        };
        let mut swap = vec![vec![CycloNumber::zero(c); theta]; theta];
        let mut swap_lower = vec![vec![Vec::new(); theta]; theta];
        for i in 0..theta {
            for j in i + 1..theta {
                let qij = lift(spec.q[i][j].clone())?;
                let inv = qij.inverse()?;
                swap[j][i] = inv.clone();
                if let Some(l) = spec.swap_lower.get(&(i, j)) {
                    // y_j y_i = q^{-1} y_i y_j - q^{-1} L_ij
                    swap_lower[j][i] = to_pos(l)?
                        .into_iter()
                        .map(|(p, x)| (p, -(&inv * &x)))
                        .collect();
                }
            }
        }
        let power_lower = spec
            .power_lower
            .iter()
            .map(&to_pos)
            .collect::<Result<Vec<_>>>()?;
        let mut strides = Vec::with_capacity(theta);
        let mut s = 1usize;
        for &h in &spec.heights {
            strides.push(s);
            s *= h as usize;
        }
        Ok(PbwSystem {
            conductor: c,
            theta,
            group_order: n,
            members,
            psi,
            gmul,
            heights: spec.heights.clone(),
            strides,
            chi,
            swap,
            swap_lower,
            power_lower,
        })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Ambient index of the group-part element at a position.
    pub fn member(&self, pos: usize) -> usize {
        self.members[pos]
    }

    pub fn monomial_count(&self) -> usize {
        self.heights.iter().map(|&h| h as usize).product()
    }

    pub fn dim(&self) -> usize {
        self.monomial_count() * self.group_order
    }

    pub fn index(&self, r: &[u32], pos: usize) -> usize {
        let ri: usize = r.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum();
        ri * self.group_order + pos
    }

    /// `(r, pos)` for a basis index.
    pub fn label(&self, idx: usize) -> (Vec<u32>, usize) {
        let pos = idx % self.group_order;
        let mut ri = idx / self.group_order;
        let mut r = Vec::with_capacity(self.theta);
        for &h in &self.heights {
            r.push((ri % h as usize) as u32);
            ri /= h as usize;
        }
        (r, pos)
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.label(idx).0.iter().map(|&x| x as usize).sum()
    }

    pub fn word_of(&self, idx: usize) -> Word {
        let (r, pos) = self.label(idx);
        let mut w = Word::new();
        for (i, &k) in r.iter().enumerate() {
            for _ in 0..k {
                w.push(Sym::Y(i as u16));
            }
        }
        if pos != 0 {
            w.push(Sym::G(pos as u16));
        }
        w
    }

    fn find_redex(&self, w: &[Sym], strategy: Strategy) -> Option<Redex> {
        let n = w.len();
        let at = |p: usize| -> Option<Redex> {
            match w[p] {
                Sym::G(_) => match w.get(p + 1) {
                    Some(Sym::G(_)) => Some(Redex::GroupGroup(p)),
                    Some(Sym::Y(_)) => Some(Redex::GroupY(p)),
                    None => None,
                },
                Sym::Y(j) => {
                    if let Some(Sym::Y(i)) = w.get(p + 1) {
                        if j > *i {
                            return Some(Redex::Swap(p));
                        }
                    }
                    let h = self.heights[j as usize] as usize;
                    if p + h <= n && w[p..p + h].iter().all(|s| *s == Sym::Y(j)) {
                        return Some(Redex::Power(p, h));
                    }
                    None
                }
            }
        };
        match strategy {
            Strategy::Leftmost => (0..n).find_map(at),
            Strategy::Rightmost => {
                // the redex whose last symbol is rightmost
                let mut best: Option<(usize, Redex)> = None;
                for p in 0..n {
                    if let Some(r) = at(p) {
                        let end = match r {
                            Redex::Power(s, h) => s + h - 1,
                            Redex::GroupGroup(s) | Redex::GroupY(s) | Redex::Swap(s) => s + 1,
                        };
                        if best.is_none_or(|(e, _)| end >= e) {
                            best = Some((end, r));
                        }
                    }
                }
                best.map(|b| b.1)
            }
        }
    }

    fn splice(prefix: &[Sym], mid: &[Sym], suffix: &[Sym]) -> Word {
        let mut w = Word::with_capacity(prefix.len() + mid.len() + suffix.len());
        w.extend_from_slice(prefix);
        w.extend(mid.iter().filter(|s| **s != Sym::G(0)));
        w.extend_from_slice(suffix);
        w
    }

    fn rewrite(&self, w: &[Sym], r: Redex) -> Vec<(Word, CycloNumber)> {
        match r {
            Redex::GroupGroup(p) => {
                let (Sym::G(a), Sym::G(b)) = (w[p], w[p + 1]) else { unreachable!() };
                let (a, b) = (a as usize, b as usize);
                let k = a * self.group_order + b;
                let ab = self.gmul[k];
                vec![(
                    Self::splice(&w[..p], &[Sym::G(ab as u16)], &w[p + 2..]),
                    self.psi[k].clone(),
                )]
            }
            Redex::GroupY(p) => {
                let (Sym::G(a), Sym::Y(i)) = (w[p], w[p + 1]) else { unreachable!() };
                vec![(
                    Self::splice(&w[..p], &[Sym::Y(i), Sym::G(a)], &w[p + 2..]),
                    self.chi[i as usize][a as usize].clone(),
                )]
            }
            Redex::Swap(p) => {
                let (Sym::Y(j), Sym::Y(i)) = (w[p], w[p + 1]) else { unreachable!() };
                let (i, j) = (i as usize, j as usize);
                let mut out = vec![(
                    Self::splice(&w[..p], &[Sym::Y(i as u16), Sym::Y(j as u16)], &w[p + 2..]),
                    self.swap[j][i].clone(),
                )];
                for (pos, c) in &self.swap_lower[j][i] {
                    out.push((
                        Self::splice(&w[..p], &[Sym::G(*pos as u16)], &w[p + 2..]),
                        c.clone(),
                    ));
                }
                out
            }
            Redex::Power(p, h) => {
                let Sym::Y(i) = w[p] else { unreachable!() };
                self.power_lower[i as usize]
                    .iter()
                    .map(|(pos, c)| {
                        (
                            Self::splice(&w[..p], &[Sym::G(*pos as u16)], &w[p + h..]),
                            c.clone(),
                        )
                    })
                    .collect()
            }
        }
    }

    /// Reduces a combination of words to normal form.
    pub fn normal_form(
        &self,
        terms: BTreeMap<Word, CycloNumber>,
        strategy: Strategy,
    ) -> BTreeMap<Word, CycloNumber> {
        let mut done: BTreeMap<Word, CycloNumber> = BTreeMap::new();
        let mut current = terms;
        while !current.is_empty() {
            let mut next: BTreeMap<Word, CycloNumber> = BTreeMap::new();
            for (w, c) in current {
                if c.is_zero() {
                    continue;
                }
                match self.find_redex(&w, strategy) {
                    None => add_term(&mut done, w, &c),
                    Some(r) => {
                        for (w2, c2) in self.rewrite(&w, r) {
                            add_term(&mut next, w2, &(&c * &c2));
                        }
                    }
                }
            }
            current = next;
        }
        done.retain(|_, c| !c.is_zero());
        done
    }

    /// Basis index of a normal word.
    pub fn index_of_normal(&self, w: &[Sym]) -> usize {
        let mut r = vec![0u32; self.theta];
        let mut pos = 0usize;
        for s in w {
            match s {
                Sym::Y(i) => r[*i as usize] += 1,
                Sym::G(p) => pos = *p as usize,
            }
        }
        self.index(&r, pos)
    }

    pub fn to_vector(&self, nf: &BTreeMap<Word, CycloNumber>) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in nf {
            v.add_term(self.index_of_normal(w), c);
        }
        v
    }

    pub fn evaluate_word(&self, w: &[Sym], strategy: Strategy) -> SparseVec {
        let mut t = BTreeMap::new();
        t.insert(
            w.iter().copied().filter(|s| *s != Sym::G(0)).collect::<Word>(),
            CycloNumber::one(self.conductor),
        );
        self.to_vector(&self.normal_form(t, strategy))
    }

    pub fn multiply_basis(&self, i: usize, j: usize) -> SparseVec {
        let mut w = self.word_of(i);
        w.extend(self.word_of(j));
        self.evaluate_word(&w, Strategy::Leftmost)
    }

    pub fn build_algebra(&self) -> Result<Algebra> {
        let n = self.dim();
        let table: Vec<SparseVec> = (0..n * n)
            .into_par_iter()
            .map(|k| self.multiply_basis(k / n, k % n))
            .collect();
        Algebra::new(n, self.conductor, table, SparseVec::unit(0, self.conductor))
    }

    /// Words whose two reduction orders must agree: every word of length at
    /// most four in the generators, plus the overlaps of the power relations.
    pub fn ambiguity_words(&self, group_gens: &[usize]) -> Vec<Word> {
        let mut syms: Vec<Sym> = (0..self.theta).map(|i| Sym::Y(i as u16)).collect();
        syms.extend(group_gens.iter().map(|&p| Sym::G(p as u16)));
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                for s in &syms {
                    let mut w2 = w.clone();
                    w2.push(*s);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        for i in 0..self.theta {
            let h = self.heights[i] as usize;
            let run = vec![Sym::Y(i as u16); h];
            let mut longer = run.clone();
            longer.push(Sym::Y(i as u16));
            words.push(longer);
            for s in &syms {
                if *s == Sym::Y(i as u16) {
                    continue;
                }
                let mut a = vec![*s];
                a.extend(run.iter().copied());
                words.push(a);
                let mut b = run.clone();
                b.push(*s);
                words.push(b);
            }
        }
        words
    }

    /// First word whose leftmost and rightmost reductions disagree.
    pub fn confluence_witness(&self, group_gens: &[usize]) -> Option<Word> {
        self.ambiguity_words(group_gens).into_par_iter().find_first(|w| {
            self.evaluate_word(w, Strategy::Leftmost) != self.evaluate_word(w, Strategy::Rightmost)
        })
    }

    pub fn check_confluence(&self, group_gens: &[usize]) -> Result<()> {
        match self.confluence_witness(group_gens) {
            None => Ok(()),
            Some(w) => Err(Error::ConfluenceFailure(format!("word {w:?}"))),
        }
    }

    pub fn monomial_label(&self, r: &[u32], var: &str) -> String {
        let mut parts = Vec::new();
        for (i, &k) in r.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("{var}{}", i + 1)),
                _ => parts.push(format!("{var}{}^{k}", i + 1)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }
}

fn add_term(map: &mut BTreeMap<Word, CycloNumber>, w: Word, c: &CycloNumber) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(x) => {
            *x += c;
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}
