//! Dense univariate polynomials over the integers, in the variable `t`.
//!
//! This is the coefficient layer under [`crate::ratfunc::RatFunc`]. Only what
//! the rational-function field needs is here: ring operations, content and
//! primitive parts, exact division, the primitive PRS gcd, and evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `t` with integer coefficients, lowest degree first.
///
/// The coefficient vector never has trailing zeros; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating zero as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// In-place `self += c * other * t^shift`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &BigInt, shift: usize) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                self.coeffs[i + shift] += c * b;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (short, long) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![BigInt::zero(); short.coeffs.len() + long.coeffs.len() - 1];
        for (i, a) in short.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in long.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Largest `k` with `t^k | self` (0 for the zero polynomial).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `t^k`; the caller guarantees `k <= t_valuation()`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(k <= self.t_valuation() || self.is_zero());
        ZPoly {
            coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec(),
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Split into `(c, p)` with `self = c * p`, `p` primitive with positive
    /// leading coefficient. Zero maps to `(0, 0)`.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|a| a / &c).collect();
        (c, ZPoly { coeffs })
    }

    /// Quotient by a monic divisor if the division is exact.
    pub fn try_div_monic(&self, d: &ZPoly) -> Option<ZPoly> {
        debug_assert!(d.lc().is_one());
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.deg();
        if n < dd {
            return None;
        }
        let sparse: Vec<(usize, &BigInt)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q.is_zero() {
                continue;
            }
            let base = i - dd;
            for &(j, c) in &sparse {
                rem[base + j] -= &q * c;
            }
            quot[base] = q;
        }
        if rem[..dd].iter().all(Zero::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Exact division by an arbitrary nonzero divisor. Returns `None` if the
    /// quotient is not an integer polynomial or the remainder is nonzero.
    pub fn try_div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.deg();
        if n < dd {
            return None;
        }
        let lead = d.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            let top = std::mem::take(&mut rem[i]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let base = i - dd;
            for (j, c) in d.coeffs[..dd].iter().enumerate() {
                if !c.is_zero() {
                    rem[base + j] -= &q * c;
                }
            }
            quot[base] = q;
        }
        if rem[..dd].iter().all(Zero::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder `prem(self, d)`: remainder of `lc(d)^(n-m+1) * self`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = match d.degree() {
            Some(k) => k,
            None => panic!("pseudo-remainder by zero polynomial"),
        };
        let mut rem = self.clone();
        let lead = d.lc();
        while let Some(n) = rem.degree() {
            if n < dd {
                break;
            }
            let top = rem.lc();
            // rem = lead * rem - top * t^(n-dd) * d
            let mut next = rem.scale(&lead);
            next.add_scaled_shifted(d, &-top, n - dd);
            rem = next;
        }
        rem
    }

    /// Primitive gcd (positive leading coefficient) via the primitive PRS.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive().1;
        }
        if other.is_zero() {
            return self.primitive().1;
        }
        let (mut a, mut b) = (self.primitive().1, other.primitive().1);
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return ZPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive().1;
        }
        a
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u32) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The `d`-th cyclotomic polynomial, from `prod_{e | d} (t^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u32) -> ZPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let ds = divisors(d);
    let mut acc = ZPoly::one();
    for &e in &ds {
        if mobius(d / e) == 1 {
            acc = acc.mul(&binomial_minus_one(e));
        }
    }
    for &e in &ds {
        if mobius(d / e) == -1 {
            acc = acc
                .try_div_monic(&binomial_minus_one(e))
                .expect("cyclotomic product formula divides exactly");
        }
    }
    acc
}

fn binomial_minus_one(e: u32) -> ZPoly {
    let mut p = ZPoly::monomial(BigInt::one(), e as usize);
    p.coeffs[0] = BigInt::from(-1);
    p
}

/// Indices `d` with `t^k - 1 = prod Phi_d`.
pub fn cyclotomic_indices_minus(k: u32) -> Vec<u32> {
    divisors(k)
}

/// Indices `d` with `t^k + 1 = prod Phi_d`.
pub fn cyclotomic_indices_plus(k: u32) -> Vec<u32> {
    divisors(2 * k).into_iter().filter(|d| k % d != 0).collect()
}
