//! Exact arithmetic in the cyclotomic fields `Q(ζ_L)`.
//!
//! A [`CycloNumber`] stores its coordinates in the power basis
//! `1, ζ_L, …, ζ_L^{d-1}` where `d = deg Φ_L`, reduced modulo the `L`-th
//! cyclotomic polynomial. Values at different conductors are compared and
//! combined after moving both to the least common multiple.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (ascending) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi);
        }
    }
    let p = Rc::new(num);
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler totient, i.e. the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An exact element of `Q(ζ_L)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

/// The four field operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `ζ_L^k` in canonical form.
pub fn root_of_unity(conductor: u32, k: i64) -> CycloNumber {
    CycloNumber::root_of_unity(conductor, k)
}

/// Exact field operation on two values, rebasing to a common conductor first.
pub fn field_arith(a: &CycloNumber, b: &CycloNumber, op: FieldOp) -> Result<CycloNumber> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl CycloNumber {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycloNumber {
            conductor,
            coeffs: vec![Rational::zero(); totient(conductor)],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(conductor: u32, v: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = v;
        z
    }

    /// Builds a value from raw power-basis coefficients; the vector is reduced
    /// modulo `Φ_L`, so any length is accepted.
    pub fn from_poly(conductor: u32, poly: Vec<Rational>) -> Self {
        CycloNumber {
            conductor,
            coeffs: reduce_mod_phi(conductor, poly),
        }
    }

    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1);
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(conductor, poly)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        let base = self.rebase(1).ok()?;
        Some(base.coeffs[0].clone())
    }

    /// The same field element expressed at conductor `target`.
    ///
    /// Moving up requires `L | target`; moving down requires `target | L` and
    /// that the value actually lies in the subfield.
    pub fn rebase(&self, target: u32) -> Result<Self> {
        let l = self.conductor;
        if target == l {
            return Ok(self.clone());
        }
        if target == 0 {
            return Err(Error::IncompatibleConductor { from: l, to: target });
        }
        if target.is_multiple_of(l) {
            let step = (target / l) as usize;
            let mut poly = vec![Rational::zero(); step * self.coeffs.len().max(1)];
            for (j, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    poly[j * step] = c.clone();
                }
            }
            return Ok(Self::from_poly(target, poly));
        }
        if l.is_multiple_of(target) {
            // Solve for coordinates in the images of ζ_target^j.
            let step = (l / target) as i64;
            let d_small = totient(target);
            let columns: Vec<Vec<Rational>> = (0..d_small)
                .map(|j| Self::root_of_unity(l, j as i64 * step).coeffs)
                .collect();
            let sol = solve_rational(&columns, &self.coeffs)
                .ok_or(Error::IncompatibleConductor { from: l, to: target })?;
            return Ok(CycloNumber {
                conductor: target,
                coeffs: sol,
            });
        }
        Err(Error::IncompatibleConductor { from: l, to: target })
    }

    /// Rebases to `target`, which must be a multiple of the current conductor.
    pub fn lift_to(&self, target: u32) -> Self {
        self.rebase(target)
            .expect("lift_to requires a multiple of the conductor")
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.conductor.lcm(&b.conductor);
        (a.lift_to(l), b.lift_to(l))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coeffs.len();
        if d == 1 {
            return Ok(CycloNumber {
                conductor: self.conductor,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Columns of the multiplication-by-self matrix are self * ζ^j.
        let columns: Vec<Vec<Rational>> = (0..d)
            .map(|j| (self * &Self::root_of_unity(self.conductor, j as i64)).coeffs)
            .collect();
        let mut target = vec![Rational::zero(); d];
        target[0] = Rational::one();
        let sol = solve_rational(&columns, &target).ok_or(Error::DivisionByZero)?;
        Ok(CycloNumber {
            conductor: self.conductor,
            coeffs: sol,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative order if the value is a root of unity of order dividing
    /// `2 * conductor` (every root of unity in `Q(ζ_L)` has this property).
    pub fn root_order(&self) -> Option<u32> {
        let bound = 2 * self.conductor.max(1);
        let one = Self::one(self.conductor);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Serialized form `{"L": int, "c": ["p/q", …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "L": self.conductor,
            "c": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("cyclotomic number must be an object".into()))?;
        let l = obj
            .get("L")
            .and_then(|x| x.as_u64())
            .filter(|&x| x >= 1 && x <= u32::MAX as u64)
            .ok_or_else(|| Error::Parse("field `L` must be a positive integer".into()))?
            as u32;
        let cs = obj
            .get("c")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("field `c` must be an array".into()))?;
        let d = totient(l);
        if cs.len() != d {
            return Err(Error::Parse(format!(
                "field `c` has length {} but deg Φ_{} = {}",
                cs.len(),
                l,
                d
            )));
        }
        let coeffs = cs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.as_str()
                    .ok_or_else(|| Error::Parse(format!("c[{i}] must be a string")))
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloNumber {
            conductor: l,
            coeffs,
        })
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycloNumber::from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{s}` is not a rational in lowest terms"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n).map_err(|_| bad())?,
            BigInt::from_str(d).map_err(|_| bad())?,
        ),
        None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
    };
    if !d.is_positive() || !n.gcd(&d).is_one() {
        return Err(bad());
    }
    Ok(Rational::new_raw(n, d))
}

fn reduce_mod_phi(conductor: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(conductor);
    let d = phi.len() - 1;
    if poly.len() > d {
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for (i, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    poly[k - d + i] -= &c * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        poly.truncate(d);
    } else {
        poly.resize(d, Rational::zero());
    }
    poly
}

/// Solves `Σ x_j columns[j] = target` over `Q`; `None` when inconsistent.
fn solve_rational(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let ncols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=ncols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::common(self, rhs);
            return &a + &b;
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::common(self, rhs);
            return &a - &b;
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::common(self, rhs);
            return &a * &b;
        }
        let d = self.coeffs.len();
        if d == 1 {
            return CycloNumber {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut poly = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        CycloNumber::from_poly(self.conductor, poly)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &'a CycloNumber) -> CycloNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let m = format_rational(&mag);
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{m}")?,
                (1, true) => write!(f, "z{}", self.conductor)?,
                (1, false) => write!(f, "{m}*z{}", self.conductor)?,
                (_, true) => write!(f, "z{}^{j}", self.conductor)?,
                (_, false) => write!(f, "{m}*z{}^{j}", self.conductor)?,
            }
        }
        Ok(())
    }
}
