//! Finite abelian groups `Z_{n1} × … × Z_{nr}`, their characters and subgroups.
//!
//! Elements are addressed by a mixed-radix index with the first coordinate
//! varying fastest, so `(1,0)` precedes `(0,1)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::CycloNumber;

pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

/// Exponent vector of an element, each coordinate reduced mod its cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub exps: Vec<u32>,
}

/// `χ(g) = ∏ ζ_{n_i}^{c_i g_i}` for a group with cyclic orders `n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub exps: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::OutOfRange("cyclic factor of order 0".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup { orders: vec![n] }
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: vec![] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn check_bound(&self, bound: usize) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::SizeBound { order, bound });
        }
        Ok(())
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(GroupElement {
            exps: exps
                .iter()
                .zip(&self.orders)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u32)
                .collect(),
        })
    }

    pub fn character(&self, exps: &[i64]) -> Result<Character> {
        self.element(exps).map(|g| Character { exps: g.exps })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exps: vec![0; self.rank()],
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            exps: vec![0; self.rank()],
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (e, n) in g.exps.iter().zip(&self.orders).rev() {
            idx = idx * (*n as usize) + *e as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exps = Vec::with_capacity(self.rank());
        for &n in &self.orders {
            exps.push((idx % n as usize) as u32);
            idx /= n as usize;
        }
        GroupElement { exps }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|g| Character { exps: g.exps })
    }

    fn check(&self, exps: &[u32]) -> Result<()> {
        if exps.len() != self.rank() || exps.iter().zip(&self.orders).any(|(e, n)| e >= n) {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.check(&g.exps).is_ok()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            exps: a
                .exps
                .iter()
                .zip(&b.exps)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            exps: a
                .exps
                .iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        }
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement {
            exps: a
                .exps
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as i64 * k).rem_euclid(n as i64)) as u32)
                .collect(),
        }
    }

    pub fn element_order(&self, a: &GroupElement) -> u32 {
        a.exps
            .iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.mul(&self.element_at(a), &self.element_at(b)))
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.index_of(&self.inv(&self.element_at(a)))
    }

    /// Exponent `k` with `χ(g) = ζ_E^k`, `E` the group exponent.
    pub fn pairing_exponent(&self, chi: &Character, g: &GroupElement) -> u32 {
        let e = self.exponent() as u64;
        let mut k = 0u64;
        for ((&c, &x), &n) in chi.exps.iter().zip(&g.exps).zip(&self.orders) {
            k += (c as u64 * x as u64 % n as u64) * (e / n as u64);
        }
        (k % e) as u32
    }

    pub fn evaluate_character(&self, chi: &Character, g: &GroupElement) -> Result<CycloNumber> {
        self.check(&chi.exps)?;
        self.check(&g.exps)?;
        Ok(CycloNumber::root_of_unity(
            self.exponent(),
            self.pairing_exponent(chi, g) as i64,
        ))
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character {
            exps: self
                .mul(
                    &GroupElement { exps: a.exps.clone() },
                    &GroupElement { exps: b.exps.clone() },
                )
                .exps,
        }
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        Character {
            exps: self.pow(&GroupElement { exps: a.exps.clone() }, k).exps,
        }
    }

    /// Order of the root of unity `χ(g)`.
    pub fn pairing_order(&self, chi: &Character, g: &GroupElement) -> u32 {
        let e = self.exponent();
        let k = self.pairing_exponent(chi, g);
        e / k.gcd(&e)
    }

    /// Every subgroup exactly once, ordered lexicographically by sorted
    /// element exponent vectors.
    pub fn enumerate_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        self.check_bound(bound)?;
        let n = self.order();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        let trivial = vec![0usize];
        seen.insert(trivial.clone());
        queue.push_back(trivial);
        let mut all = Vec::new();
        while let Some(h) = queue.pop_front() {
            let members: BTreeSet<usize> = h.iter().copied().collect();
            for g in 0..n {
                if members.contains(&g) {
                    continue;
                }
                let mut gens: Vec<usize> = h.clone();
                gens.push(g);
                let closed = self.closure(&gens);
                if seen.insert(closed.clone()) {
                    queue.push_back(closed);
                }
            }
            all.push(h);
        }
        let mut subs: Vec<Subgroup> = all
            .into_iter()
            .map(|idxs| Subgroup::from_indices(self.clone(), idxs))
            .collect();
        subs.sort_by_key(|a| a.sort_key());
        Ok(subs)
    }

    /// Sorted indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul_idx(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_indices(self.clone(), (0..self.order()).collect())
    }

    pub fn subgroup_generated_by(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            self.check(&g.exps)?;
        }
        let idxs: Vec<usize> = gens.iter().map(|g| self.index_of(g)).collect();
        Ok(Subgroup::from_indices(self.clone(), self.closure(&idxs)))
    }
}

/// A subgroup `F ⊆ Γ` with an invariant-factor presentation
/// `F ≅ Z_{m1} × … × Z_{ms}`, `m1 | m2 | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: AbelianGroup,
    /// Ambient indices, ascending.
    members: Vec<usize>,
    generators: Vec<usize>,
    invariants: Vec<u32>,
}

impl Subgroup {
    fn from_indices(ambient: AbelianGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        let (generators, invariants) = invariant_factors(&ambient, &members);
        Subgroup {
            ambient,
            members,
            generators,
            invariants,
        }
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Ambient indices of the members, ascending.
    pub fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members
            .iter()
            .map(|&i| self.ambient.element_at(i))
            .collect()
    }

    pub fn contains_idx(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.ambient.contains(g) && self.contains_idx(self.ambient.index_of(g))
    }

    /// Position of an ambient index inside `member_indices`.
    pub fn position(&self, idx: usize) -> Option<usize> {
        self.members.binary_search(&idx).ok()
    }

    pub fn invariants(&self) -> &[u32] {
        &self.invariants
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generators
            .iter()
            .map(|&i| self.ambient.element_at(i))
            .collect()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn exponent(&self) -> u32 {
        self.invariants.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    /// The abstract group `Z_{m1} × … × Z_{ms}` in which invariant
    /// coordinates live.
    pub fn presentation(&self) -> AbelianGroup {
        AbelianGroup {
            orders: self.invariants.clone(),
        }
    }

    /// Ambient index of `∏ f_k^{a_k}`.
    pub fn from_coords(&self, coords: &[u32]) -> usize {
        let mut acc = self.ambient.identity();
        for (&a, &g) in coords.iter().zip(&self.generators) {
            let f = self.ambient.pow(&self.ambient.element_at(g), a as i64);
            acc = self.ambient.mul(&acc, &f);
        }
        self.ambient.index_of(&acc)
    }

    /// Invariant coordinates of a member; `None` when not a member.
    pub fn coords(&self, idx: usize) -> Option<Vec<u32>> {
        if !self.contains_idx(idx) {
            return None;
        }
        let pres = self.presentation();
        let found = pres
            .elements()
            .find(|c| self.from_coords(&c.exps) == idx)
            .map(|c| c.exps);
        found
    }

    /// Short human-readable label, e.g. `<(1,0),(0,1)>`.
    pub fn label(&self) -> String {
        if self.generators.is_empty() {
            return "{1}".into();
        }
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.exps.iter().map(|e| e.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        format!("<{}>", gens.join(","))
    }

    pub fn sort_key(&self) -> Vec<Vec<u32>> {
        let mut els: Vec<Vec<u32>> = self.elements().into_iter().map(|g| g.exps).collect();
        els.sort();
        els
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.contains_idx(i))
    }
}

fn coset_order(g: &AbelianGroup, x: usize, sub: &BTreeSet<usize>) -> u32 {
    let mut k = 1u32;
    let mut y = x;
    while !sub.contains(&y) {
        y = g.mul_idx(y, x);
        k += 1;
    }
    k
}

/// Greedy invariant-factor decomposition: repeatedly pick an element of
/// maximal order in `F / S` whose own order equals its coset order.
fn invariant_factors(g: &AbelianGroup, members: &[usize]) -> (Vec<usize>, Vec<u32>) {
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    let mut span: BTreeSet<usize> = [0usize].into_iter().collect();
    while span.len() < members.len() {
        let mut best: Option<(usize, u32)> = None;
        let mut best_coset = 0;
        for &x in members {
            let co = coset_order(g, x, &span);
            if co > best_coset {
                best_coset = co;
            }
        }
        for &x in members {
            let co = coset_order(g, x, &span);
            if co == best_coset && g.element_order(&g.element_at(x)) == co {
                best = Some((x, co));
                break;
            }
        }
        let (x, o) = best.expect("abelian groups split off maximal cyclic factors");
        chosen.push((x, o));
        let gens: Vec<usize> = chosen.iter().map(|c| c.0).collect();
        span = g.closure(&gens).into_iter().collect();
    }
    chosen.sort_by_key(|c| c.1);
    chosen.into_iter().unzip()
}
