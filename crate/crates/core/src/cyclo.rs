//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`Cyclotomic`] stores its conductor `n` and `n` rational coefficients on
//! the powers `ζ_n^0, …, ζ_n^{n-1}`, always reduced modulo the `n`-th
//! cyclotomic polynomial `Φ_n`. Only the first `φ(n)` coefficients can be
//! nonzero, and for a fixed conductor the coefficient vector is unique.
//! Binary operations lift both operands to the lcm of their conductors, so a
//! value is not necessarily stored at its minimal conductor.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod syntax;

pub use syntax::{parse_cyclotomic, SyntaxError};

/// Returns the coefficients of `Φ_n`, lowest degree first. The result is cached.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of conductor 0");
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let poly: Arc<[i64]> = num.into();
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, the degree of `Q(ζ_n)` over `Q`.
pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of a cyclotomic field.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds the canonical form of `Σ raw[k] ζ_n^k`.
    pub fn normalize(raw: Vec<BigRational>, conductor: u32) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        if raw.len() != conductor as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for conductor {}, got {}",
                conductor,
                conductor,
                raw.len()
            )));
        }
        Ok(Self::reduced(raw, conductor))
    }

    fn reduced(mut raw: Vec<BigRational>, n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for k in (deg..n as usize).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], BigRational::zero());
            // x^k ≡ x^k - x^{k-deg} Φ_n(x); Φ_n is monic so the top term cancels.
            for (j, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    raw[k - deg + j] -= &c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        Cyclotomic { conductor: n, coeffs: raw }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[k.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::reduced(raw, n)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients on `ζ^0 … ζ^{n-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The same value expressed at conductor `m`, which must be a multiple of
    /// the current conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            m
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step] = c.clone();
            }
        }
        Self::reduced(raw, m)
    }

    /// Applies the field automorphism `ζ_n ↦ ζ_n^k`; `k = -1` is complex conjugation.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::InvalidAutomorphism {
                k,
                conductor: self.conductor,
            });
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        if n == 1 {
            return self.clone();
        }
        let mut raw = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j as i64 * k).rem_euclid(n) as usize] += c;
            }
        }
        Self::reduced(raw, self.conductor)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(-1)
    }

    /// The rational value, if this element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, if it is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Floating-point image under `ζ_n ↦ exp(2πi/n)`. For cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect();
        let n = self.conductor as usize;
        if let [k] = nonzero[..] {
            let mut raw = vec![BigRational::zero(); n];
            raw[(n - k) % n] = self.coeffs[k].recip();
            return Some(Self::reduced(raw, self.conductor));
        }
        // Solve a·x = 1 in the power basis 1, ζ, …, ζ^{φ-1}.
        let phi = euler_phi(self.conductor) as usize;
        let mut columns = Vec::with_capacity(phi);
        let mut power = Self::one().lift(self.conductor);
        let zeta = Self::root_of_unity(self.conductor, 1);
        for _ in 0..phi {
            columns.push((self * &power).coeffs);
            power = &power * &zeta;
        }
        // Augmented system rows: sum_j columns[j][i] x_j = δ_{i0}.
        let mut rows: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..phi).map(|j| columns[j][i].clone()).collect();
                r.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                r
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let inv = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        *v -= &f * p;
                    }
                }
            }
        }
        let mut raw = vec![BigRational::zero(); n];
        for (j, row) in rows.iter().enumerate() {
            raw[j] = row[phi].clone();
        }
        Some(Self::reduced(raw, self.conductor))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order on canonical forms (at the common conductor). Used for
    /// deterministic sorting, not an ordered-field order.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let m = lcm(self.conductor, other.conductor);
        let a = self.lift(m);
        let b = other.lift(m);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Canonical text at this value's own conductor (see [`parse_cyclotomic`]).
    pub fn to_syntax(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => format!("{}", mag),
                (_, true) => format!("z^{}", k),
                (_, false) => format!("{}*z^{}", mag, k),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn binary(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.conductor, other.conductor);
        (self.lift(m), other.lift(m))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let m = lcm(self.conductor, other.conductor);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_syntax())
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic {
                conductor: self.conductor,
                coeffs,
            };
        }
        let (a, b) = self.binary(rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect();
            return Cyclotomic {
                conductor: self.conductor,
                coeffs,
            };
        }
        let (a, b) = self.binary(rhs);
        &a - &b
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        if self.conductor != rhs.conductor {
            let (a, b) = self.binary(rhs);
            return &a * &b;
        }
        let n = self.conductor as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % n] += a * b;
                }
            }
        }
        Cyclotomic::reduced(raw, self.conductor)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let inv = rhs.inverse().expect("division by zero cyclotomic");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, rhs: Cyclotomic) {
        *self += &rhs;
    }
}

impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, rhs: Cyclotomic) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Rational helper used throughout the crate.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn phi_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn normalize_examples() {
        let q = |v: i64| BigRational::from_integer(v.into());
        let zeta3 = Cyclotomic::normalize(vec![q(0), q(1), q(0)], 3).unwrap();
        assert_eq!(zeta3.coeffs(), &[q(0), q(1), q(0)]);
        let z43 = Cyclotomic::normalize(vec![q(0), q(0), q(0), q(1)], 4).unwrap();
        assert_eq!(z43.coeffs(), &[q(0), q(-1), q(0), q(0)]);
        let sum = Cyclotomic::normalize(vec![q(1), q(1), q(1)], 3).unwrap();
        assert!(sum.is_zero());
        assert!(matches!(
            Cyclotomic::normalize(vec![], 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_integer(-1));
        assert_eq!(&z(3, 1) + &z(3, 1).conj(), Cyclotomic::from_integer(-1));
        let prod = &z(3, 1) * &z(4, 1);
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, z(12, 7));
        assert!((prod.to_complex() - z(12, 7).to_complex()).norm() < 1e-12);
        let expected = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 7.0 / 12.0);
        assert!((prod.to_complex() - expected).norm() < 1e-12);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(3, 1).galois(-1).unwrap(), z(3, 2));
        let half = Cyclotomic::from_rational(rat(1, 2));
        assert_eq!(half.galois(5).unwrap(), half);
        assert!(matches!(
            z(4, 1).galois(2),
            Err(Error::InvalidAutomorphism { .. })
        ));
    }

    #[test]
    fn as_rational_examples() {
        assert_eq!(
            (z(3, 0) + z(3, 1) + z(3, 2)).as_rational(),
            Some(BigRational::zero())
        );
        assert_eq!(z(4, 1).as_rational(), None);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(Cyclotomic::zero().to_complex(), Complex64::new(0.0, 0.0));
        assert!((z(4, 1).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn inverse_and_division() {
        let a = &z(5, 1) + &Cyclotomic::from_integer(2);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(Cyclotomic::zero().inverse().is_none());
        let b = &z(12, 5) - &z(12, 1);
        assert!((&b * &b.inverse().unwrap()).is_one());
    }

    #[test]
    fn syntax_is_stable() {
        assert_eq!(Cyclotomic::zero().to_syntax(), "0");
        let v = &Cyclotomic::from_rational(rat(1, 2)) - &z(4, 1).scale(&rat(3, 1));
        assert_eq!(v.to_syntax(), "1/2 - 3*z^1");
        assert_eq!((-z(3, 2)).to_syntax(), "1 + z^1");
    }
}
