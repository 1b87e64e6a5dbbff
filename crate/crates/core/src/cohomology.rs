//! Root-of-unity valued 2-cocycles on a subgroup `F` and representatives of
//! `H²(F, k^×)`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Character, GroupElement, Subgroup};
use crate::scalar::CycloNumber;

/// A normalized 2-cocycle `ψ : F × F → μ_C` stored as exponents of `ζ_C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoCocycle {
    subgroup: Subgroup,
    conductor: u32,
    /// `table[p * |F| + q]` is the exponent of `ψ(f_p, f_q)`, positions in
    /// the subgroup's member order.
    table: Vec<u32>,
    class_tag: String,
}

impl TwoCocycle {
    pub fn trivial(f: &Subgroup) -> Self {
        let n = f.order();
        Self::assemble(f.clone(), 1, vec![0; n * n])
    }

    /// Builds a cocycle from an exponent table, checking the cocycle identity
    /// and the normalization `ψ(1,f) = ψ(f,1) = 1`.
    pub fn from_exponents(f: &Subgroup, conductor: u32, table: Vec<u32>) -> Result<Self> {
        let n = f.order();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: table.len(),
            });
        }
        let table: Vec<u32> = table.into_iter().map(|e| e % conductor).collect();
        let c = Self::assemble(f.clone(), conductor, table);
        if let Some(w) = c.cocycle_witness() {
            return Err(Error::ValidationFailed(format!("cocycle identity fails at {w:?}")));
        }
        if !c.is_normalized() {
            return Err(Error::ValidationFailed("cocycle is not normalized".into()));
        }
        Ok(c)
    }

    fn assemble(subgroup: Subgroup, conductor: u32, table: Vec<u32>) -> Self {
        let g = table.iter().fold(conductor, |acc, &e| acc.gcd(&e));
        let conductor_min = conductor / g;
        let table: Vec<u32> = table.iter().map(|&e| e / g).collect();
        let mut c = TwoCocycle {
            subgroup,
            conductor: conductor_min,
            table,
            class_tag: String::new(),
        };
        c.class_tag = c.compute_tag();
        c
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Smallest `C` such that all values are `C`-th roots of unity.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn class_tag(&self) -> &str {
        &self.class_tag
    }

    pub fn exponent_table(&self) -> &[u32] {
        &self.table
    }

    fn exp_pos(&self, p: usize, q: usize) -> u32 {
        self.table[p * self.subgroup.order() + q]
    }

    fn pos(&self, g: &GroupElement) -> Result<usize> {
        let amb = self.subgroup.ambient();
        if !amb.contains(g) {
            return Err(Error::ParentMismatch);
        }
        self.subgroup
            .position(amb.index_of(g))
            .ok_or_else(|| Error::NotInSubgroup(format!("{:?}", g.exps)))
    }

    /// Exponent of `ψ(a, b)` for ambient indices `a, b ∈ F`.
    pub fn exponent_idx(&self, a: usize, b: usize) -> u32 {
        let p = self.subgroup.position(a).expect("member of F");
        let q = self.subgroup.position(b).expect("member of F");
        self.exp_pos(p, q)
    }

    pub fn eval_idx(&self, a: usize, b: usize) -> CycloNumber {
        CycloNumber::root_of_unity(self.conductor, self.exponent_idx(a, b) as i64)
    }

    pub fn eval(&self, f: &GroupElement, g: &GroupElement) -> Result<CycloNumber> {
        let p = self.pos(f)?;
        let q = self.pos(g)?;
        Ok(CycloNumber::root_of_unity(
            self.conductor,
            self.exp_pos(p, q) as i64,
        ))
    }

    fn cocycle_witness(&self) -> Option<(usize, usize, usize)> {
        let f = &self.subgroup;
        let amb = f.ambient();
        let m = f.member_indices();
        let c = self.conductor;
        for &a in m {
            for &b in m {
                let ab = amb.mul_idx(a, b);
                for &d in m {
                    let bd = amb.mul_idx(b, d);
                    let lhs = (self.exponent_idx(a, b) + self.exponent_idx(ab, d)) % c;
                    let rhs = (self.exponent_idx(b, d) + self.exponent_idx(a, bd)) % c;
                    if lhs != rhs {
                        return Some((a, b, d));
                    }
                }
            }
        }
        None
    }

    /// `ψ(a,b) ψ(ab,c) = ψ(b,c) ψ(a,bc)` on every triple.
    pub fn satisfies_cocycle_identity(&self) -> bool {
        self.cocycle_witness().is_none()
    }

    pub fn is_normalized(&self) -> bool {
        self.subgroup
            .member_indices()
            .iter()
            .all(|&a| self.exponent_idx(0, a) == 0 && self.exponent_idx(a, 0) == 0)
    }

    /// `ψ(g^{-1}, g) = 1` for all `g`.
    pub fn satisfies_inverse_normalization(&self) -> bool {
        let amb = self.subgroup.ambient();
        self.subgroup
            .member_indices()
            .iter()
            .all(|&a| self.exponent_idx(amb.inv_idx(a), a) == 0)
    }

    /// `ψ · δμ` where `δμ(a,b) = μ(a)μ(b)μ(ab)^{-1}` and `μ(f_p) = ζ_C^{mu[p]}`.
    pub fn times_coboundary(&self, conductor: u32, mu: &[u32]) -> Result<TwoCocycle> {
        let n = self.subgroup.order();
        if mu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mu.len(),
            });
        }
        if !mu[0].is_multiple_of(conductor) {
            return Err(Error::ValidationFailed("μ(1) must be 1".into()));
        }
        let big = conductor.lcm(&self.conductor);
        let (sa, sm) = (big / self.conductor, big / conductor);
        let amb = self.subgroup.ambient();
        let m = self.subgroup.member_indices();
        let mut table = vec![0u32; n * n];
        for (p, &a) in m.iter().enumerate() {
            for (q, &b) in m.iter().enumerate() {
                let r = self.subgroup.position(amb.mul_idx(a, b)).unwrap();
                let e = self.exp_pos(p, q) as u64 * sa as u64
                    + (mu[p] as u64 + mu[q] as u64) * sm as u64
                    + (big as u64 - (mu[r] % conductor) as u64 * sm as u64 % big as u64);
                table[p * n + q] = (e % big as u64) as u32;
            }
        }
        Ok(Self::assemble(self.subgroup.clone(), big, table))
    }

    /// Exponent (mod `conductor()`) of `ψ_g(h) = ψ(h,g) ψ(g,h)^{-1}`.
    fn psi_g_exponent(&self, g: usize, h: usize) -> u32 {
        let c = self.conductor;
        (self.exponent_idx(h, g) + c - self.exponent_idx(g, h)) % c
    }

    pub fn psi_g_value_idx(&self, g: usize, h: usize) -> CycloNumber {
        CycloNumber::root_of_unity(self.conductor, self.psi_g_exponent(g, h) as i64)
    }

    /// `ψ_g` as a character of `F`, in the invariant coordinates of `F`.
    pub fn psi_g(&self, g: &GroupElement) -> Result<Character> {
        self.pos(g)?;
        let amb = self.subgroup.ambient();
        let gi = amb.index_of(g);
        let c = self.conductor;
        let exps = self
            .subgroup
            .generator_indices()
            .iter()
            .zip(self.subgroup.invariants())
            .map(|(&fk, &mk)| {
                let e = self.psi_g_exponent(gi, fk);
                // ψ_g(f_k) is an m_k-th root of unity
                (e as u64 * mk as u64 / c as u64) as u32 % mk
            })
            .collect();
        Ok(Character { exps })
    }

    fn compute_tag(&self) -> String {
        let f = &self.subgroup;
        let inv = f.invariants();
        let gens = f.generator_indices();
        let c = self.conductor;
        let mut ts = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let e = self.psi_g_exponent(gens[i], gens[j]);
                // ψ(f_j,f_i)/ψ(f_i,f_j) is an m_i-th root of unity; report
                // the inverse so the tag equals the bicharacter parameter
                let t = (e as u64 * inv[i] as u64 / c as u64) as u32 % inv[i];
                ts.push((inv[i] - t) % inv[i]);
            }
        }
        let ms: Vec<String> = inv.iter().map(|m| m.to_string()).collect();
        let ts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
        format!("m=[{}];t=[{}]", ms.join(","), ts.join(","))
    }

    /// True iff the alternating form is trivial, i.e. the class is trivial.
    pub fn is_cohomologically_trivial(&self) -> bool {
        let f = &self.subgroup;
        f.member_indices()
            .iter()
            .all(|&a| f.member_indices().iter().all(|&b| self.psi_g_exponent(a, b) == 0))
    }
}

/// Conductor used for normalized bicharacter representatives on `F`.
pub fn cocycle_conductor(f: &Subgroup) -> u32 {
    let e = f.exponent();
    if e.is_multiple_of(2) {
        2 * e
    } else {
        e
    }
}

/// One normalized representative per class of `H²(F, k^×)`: for each choice
/// of `t_ij ∈ Z_{m_i}` (`i<j`) the bicharacter
/// `ψ(a,b) = ∏ ζ_{m_i}^{t_ij a_i b_j}`, corrected by a coboundary so that
/// `ψ(g^{-1}, g) = 1`.
pub fn cocycle_classes(f: &Subgroup) -> Vec<TwoCocycle> {
    let inv = f.invariants().to_vec();
    let s = inv.len();
    let pairs: Vec<(usize, usize)> = (0..s)
        .flat_map(|i| (i + 1..s).map(move |j| (i, j)))
        .collect();
    let radices: Vec<u32> = pairs.iter().map(|&(i, _)| inv[i]).collect();
    let total: usize = radices.iter().map(|&r| r as usize).product();
    let coords: Vec<Vec<u32>> = f
        .member_indices()
        .iter()
        .map(|&a| f.coords(a).expect("member"))
        .collect();
    let m = cocycle_conductor(f);
    let n = f.order();
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut t = Vec::with_capacity(pairs.len());
        for &r in &radices {
            t.push((code % r as usize) as u32);
            code /= r as usize;
        }
        let mut table = vec![0u32; n * n];
        for p in 0..n {
            for q in 0..n {
                let mut e = 0u64;
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    let w = (m / inv[i]) as u64;
                    e += t[k] as u64 * w * coords[p][i] as u64 * coords[q][j] as u64;
                }
                table[p * n + q] = (e % m as u64) as u32;
            }
        }
        let raw = TwoCocycle::assemble(f.clone(), m, table);
        out.push(normalize_inverse_pairs(&raw, m));
    }
    out
}

/// Greedy coboundary correction enforcing `ψ(g^{-1}, g) = 1`, walking the
/// members of `F` in ascending index order.
fn normalize_inverse_pairs(psi: &TwoCocycle, m: u32) -> TwoCocycle {
    let f = psi.subgroup();
    let amb = f.ambient();
    let n = f.order();
    let scale = m / psi.conductor();
    let mut mu = vec![0u32; n];
    let mut fixed = vec![false; n];
    fixed[0] = true;
    for (p, &a) in f.member_indices().iter().enumerate() {
        if fixed[p] {
            continue;
        }
        let ai = amb.inv_idx(a);
        let q = f.position(ai).unwrap();
        let e = psi.exponent_idx(ai, a) * scale % m;
        if q == p {
            // ψ(g,g) = ±1 for an involution, so a square root exists in μ_m
            debug_assert_eq!(e % 2, 0);
            mu[p] = (m - e / 2) % m;
        } else {
            mu[p] = (m - e) % m;
            mu[q] = 0;
            fixed[q] = true;
        }
        fixed[p] = true;
    }
    psi.times_coboundary(m, &mu).expect("coboundary of matching size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn whole(orders: &[u32]) -> Subgroup {
        AbelianGroup::new(orders.to_vec()).unwrap().whole()
    }

    /// Normalized `μ_n`-valued cocycles on `F` by exhaustive search, modulo
    /// coboundaries of `μ_{n·e}`-valued functions that land in `μ_n`.
    fn brute_force_h2(orders: &[u32], n: u32) -> usize {
        let f = whole(orders);
        let g = f.ambient().clone();
        let size = g.order();
        let cells: Vec<(usize, usize)> = (1..size)
            .flat_map(|a| (1..size).map(move |b| (a, b)))
            .collect();
        let mut cocycles = 0usize;
        let mut table = vec![0u32; size * size];
        let total = (n as usize).pow(cells.len() as u32);
        for mut code in 0..total {
            for &(a, b) in &cells {
                table[a * size + b] = (code % n as usize) as u32;
                code /= n as usize;
            }
            let ok = (0..size).all(|a| {
                (0..size).all(|b| {
                    (0..size).all(|c| {
                        (table[a * size + b] + table[g.mul_idx(a, b) * size + c]) % n
                            == (table[b * size + c] + table[a * size + g.mul_idx(b, c)]) % n
                    })
                })
            });
            if ok {
                cocycles += 1;
            }
        }
        let big = n * g.exponent();
        let mut bounds = std::collections::HashSet::new();
        let fcount = (big as usize).pow(size as u32 - 1);
        for mut code in 0..fcount {
            let mut mu = vec![0u32; size];
            for x in mu.iter_mut().skip(1) {
                *x = (code % big as usize) as u32;
                code /= big as usize;
            }
            let mut tab = Vec::with_capacity(size * size);
            let mut in_mu_n = true;
            for a in 0..size {
                for b in 0..size {
                    let e = (mu[a] + mu[b] + big - mu[g.mul_idx(a, b)]) % big;
                    if !e.is_multiple_of(big / n) {
                        in_mu_n = false;
                    }
                    tab.push(e / (big / n));
                }
            }
            if in_mu_n {
                bounds.insert(tab);
            }
        }
        cocycles / bounds.len()
    }

    /// Alternating bicharacters on the ambient standard presentation, found
    /// by trying every assignment on standard generators.
    fn brute_force_alternating(orders: &[u32]) -> usize {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        let r = orders.len();
        let e = g.exponent();
        let mut count = 0;
        let total = (e as usize).pow((r * r) as u32);
        for mut code in 0..total {
            let mut w = vec![0u32; r * r];
            for x in w.iter_mut() {
                *x = (code % e as usize) as u32;
                code /= e as usize;
            }
            let form = |a: &GroupElement, b: &GroupElement| -> u32 {
                let mut s = 0u64;
                for i in 0..r {
                    for j in 0..r {
                        s += w[i * r + j] as u64 * a.exps[i] as u64 * b.exps[j] as u64;
                    }
                }
                (s % e as u64) as u32
            };
            // well defined: generator i has order n_i in either slot
            let well = (0..r).all(|i| {
                (0..r).all(|j| {
                    (w[i * r + j] as u64 * orders[i] as u64).is_multiple_of(e as u64)
                        && (w[i * r + j] as u64 * orders[j] as u64).is_multiple_of(e as u64)
                })
            });
            if well && g.elements().all(|a| form(&a, &a) == 0) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn class_counts_match_brute_force() {
        for n in 1..=4u32 {
            assert_eq!(cocycle_classes(&whole(&[n])).len(), 1);
            assert_eq!(brute_force_h2(&[n], 4), 1, "Z_{n}");
        }
        assert_eq!(brute_force_h2(&[2, 2], 4), 2);
        assert_eq!(cocycle_classes(&whole(&[2, 2])).len(), 2);
        assert_eq!(brute_force_alternating(&[2, 4]), 2);
        assert_eq!(cocycle_classes(&whole(&[2, 4])).len(), 2);
        assert_eq!(brute_force_alternating(&[3, 3]), 3);
        assert_eq!(cocycle_classes(&whole(&[3, 3])).len(), 3);
    }

    #[test]
    fn representatives_are_normalized_cocycles_with_distinct_tags() {
        for orders in [vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![4, 4]] {
            let classes = cocycle_classes(&whole(&orders));
            let mut tags: Vec<&str> = classes.iter().map(|c| c.class_tag()).collect();
            for c in &classes {
                assert!(c.satisfies_cocycle_identity());
                assert!(c.is_normalized());
                assert!(c.satisfies_inverse_normalization(), "{orders:?} {}", c.class_tag());
            }
            tags.sort();
            tags.dedup();
            assert_eq!(tags.len(), classes.len());
        }
    }

    #[test]
    fn klein_four_nontrivial_class() {
        let f = whole(&[2, 2]);
        let amb = f.ambient().clone();
        let classes = cocycle_classes(&f);
        assert!(classes[0].is_cohomologically_trivial());
        let psi = &classes[1];
        let a = amb.element(&[1, 0]).unwrap();
        let b = amb.element(&[0, 1]).unwrap();
        let ratio = &psi.eval(&a, &b).unwrap() * &psi.eval(&b, &a).unwrap().inverse().unwrap();
        assert_eq!(ratio, CycloNumber::from_int(1, -1));
        assert_eq!(psi.psi_g(&a).unwrap().exps, vec![0, 1]);
        assert_eq!(psi.psi_g(&amb.identity()).unwrap().exps, vec![0, 0]);
        assert_eq!(classes[0].psi_g(&a).unwrap().exps, vec![0, 0]);
        assert_eq!(psi.class_tag(), "m=[2,2];t=[1]");
        let outside = AbelianGroup::cyclic(2).element(&[1]).unwrap();
        assert!(psi.eval(&outside, &a).is_err());
    }

    #[test]
    fn coboundary_keeps_class_and_psi_g() {
        let f = whole(&[2, 4]);
        let psi = &cocycle_classes(&f)[1];
        let mu: Vec<u32> = (0..f.order() as u32).map(|i| if i == 0 { 0 } else { (3 * i + 1) % 16 }).collect();
        let twisted = psi.times_coboundary(16, &mu).unwrap();
        assert!(twisted.satisfies_cocycle_identity());
        assert_eq!(twisted.class_tag(), psi.class_tag());
        for g in f.elements() {
            assert_eq!(twisted.psi_g(&g).unwrap(), psi.psi_g(&g).unwrap());
        }
    }
}
