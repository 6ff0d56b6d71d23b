//! Exact rational functions in one variable `t` over the rationals.
//!
//! Every value is kept in a unique canonical form
//!
//! ```text
//!     content * num(t) / (t^k * prod_d Phi_d(t)^e_d * residual(t))
//! ```
//!
//! where `content` is a rational number, `num` and `residual` are primitive
//! integer polynomials with positive leading coefficient, the `Phi_d` are
//! cyclotomic polynomials, and the numerator is coprime to the whole
//! denominator. Powers of `q = t^D` only ever produce denominators built from
//! `t`, `1 - t^k` and `1 + t^k`, which all split into cyclotomic factors, so
//! the common path cancels by exact trial division against a known factor
//! list. An arbitrary polynomial divisor goes to `residual` and is reduced
//! with a gcd.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    cyclotomic, cyclotomic_indices_minus, cyclotomic_indices_plus, totient, ZPoly,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Den {
    t_pow: u32,
    cyclo: BTreeMap<u32, u32>,
    residual: ZPoly,
}

impl Den {
    fn one() -> Self {
        Den {
            t_pow: 0,
            cyclo: BTreeMap::new(),
            residual: ZPoly::one(),
        }
    }

    fn is_one(&self) -> bool {
        self.t_pow == 0 && self.cyclo.is_empty() && self.residual.is_one()
    }

    fn expand(&self, phis: &mut PhiCache) -> ZPoly {
        let mut acc = self.residual.clone();
        for (&d, &e) in &self.cyclo {
            acc = acc.mul(&phis.get(d).pow(e));
        }
        acc.shift(self.t_pow as usize)
    }

    fn mul(&self, other: &Den) -> Den {
        let mut cyclo = self.cyclo.clone();
        for (&d, &e) in &other.cyclo {
            *cyclo.entry(d).or_insert(0) += e;
        }
        let residual = if other.residual.is_one() {
            self.residual.clone()
        } else if self.residual.is_one() {
            other.residual.clone()
        } else {
            self.residual.mul(&other.residual)
        };
        Den {
            t_pow: self.t_pow + other.t_pow,
            cyclo,
            residual,
        }
    }
}

/// Per-operation memo of cyclotomic polynomials.
#[derive(Default)]
struct PhiCache(HashMap<u32, ZPoly>);

impl PhiCache {
    fn get(&mut self, d: u32) -> &ZPoly {
        self.0.entry(d).or_insert_with(|| cyclotomic(d))
    }
}

/// An element of `Q(t)` in canonical form.
#[derive(Clone, Debug)]
pub struct RatFunc {
    content: BigRational,
    num: ZPoly,
    den: Den,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.content != other.content || self.num != other.num {
            return false;
        }
        if self.den == other.den {
            return true;
        }
        let mut phis = PhiCache::default();
        self.den.expand(&mut phis) == other.den.expand(&mut phis)
    }
}

impl Eq for RatFunc {}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            content: BigRational::zero(),
            num: ZPoly::one(),
            den: Den::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc {
            content: c,
            num: ZPoly::one(),
            den: Den::one(),
        }
    }

    /// `t^k` for any integer `k`; negative powers live in the denominator.
    pub fn t_power(k: i64) -> Self {
        let mut den = Den::one();
        let num = if k >= 0 {
            ZPoly::monomial(BigInt::one(), k as usize)
        } else {
            den.t_pow = k.unsigned_abs() as u32;
            ZPoly::one()
        };
        RatFunc {
            content: BigRational::one(),
            num,
            den,
        }
    }

    /// The polynomial `p(t)` as a rational function.
    pub fn from_poly(p: &ZPoly) -> Self {
        normalize(BigRational::one(), p.clone(), Den::one(), &mut PhiCache::default())
    }

    /// `num(t) / den(t)`.
    pub fn fraction(num: &ZPoly, den: &ZPoly) -> Result<Self> {
        Self::from_poly(num).checked_div(&Self::from_poly(den))
    }

    /// `1 / (1 + t^k)`, built directly in factored form.
    pub fn recip_one_plus_t_pow(k: u32) -> Self {
        assert!(k > 0);
        let mut den = Den::one();
        for d in cyclotomic_indices_plus(k) {
            *den.cyclo.entry(d).or_insert(0) += 1;
        }
        RatFunc {
            content: BigRational::one(),
            num: ZPoly::one(),
            den,
        }
    }

    /// `1 / (1 - t^k)`, built directly in factored form.
    pub fn recip_one_minus_t_pow(k: u32) -> Self {
        assert!(k > 0);
        let mut den = Den::one();
        for d in cyclotomic_indices_minus(k) {
            *den.cyclo.entry(d).or_insert(0) += 1;
        }
        // 1 - t^k = -(t^k - 1)
        RatFunc {
            content: -BigRational::one(),
            num: ZPoly::one(),
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.content.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.content.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a nonzero constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational content factor of the canonical form.
    pub fn content(&self) -> &BigRational {
        &self.content
    }

    /// Primitive integer numerator of the canonical form.
    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    /// Primitive integer denominator (positive leading coefficient).
    pub fn denominator(&self) -> ZPoly {
        self.den.expand(&mut PhiCache::default())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut phis = PhiCache::default();
        let new_num = self.den.expand(&mut phis);
        let (t_pow, cyclo, residual) = peel_cyclotomic(&self.num, &mut phis);
        Ok(RatFunc {
            content: self.content.recip(),
            num: new_num,
            den: Den {
                t_pow,
                cyclo,
                residual,
            },
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one();
        }
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        den.t_pow *= n;
        for e in den.cyclo.values_mut() {
            *e *= n;
        }
        den.residual = den.residual.pow(n);
        // coprimality survives powers; no reduction needed
        RatFunc {
            content: num_traits::pow::pow(self.content.clone(), n as usize),
            num: self.num.pow(n),
            den,
        }
    }

    pub fn neg_ref(&self) -> Self {
        RatFunc {
            content: -&self.content,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    fn is_scaled_monomial(&self) -> bool {
        self.num.coeffs().len() - self.num.t_valuation() == 1
            && self.den.cyclo.is_empty()
            && self.den.residual.is_one()
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_scaled_monomial() {
            return self.mul_monomial(other);
        }
        if self.is_scaled_monomial() {
            return other.mul_monomial(self);
        }
        normalize(
            &self.content * &other.content,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
            &mut PhiCache::default(),
        )
    }

    /// Multiply by `c * t^j / t^k`, which only needs t-power bookkeeping.
    fn mul_monomial(&self, m: &Self) -> Self {
        let j = m.num.t_valuation() as u32;
        let up = self.num.t_valuation() as u32;
        let mut den = self.den.clone();
        let mut num = self.num.clone();
        // net exponent of t contributed by m, then cancel against den / num
        let mut t_num = j;
        let mut t_den = m.den.t_pow;
        let cancel = t_num.min(t_den);
        t_num -= cancel;
        t_den -= cancel;
        let c1 = t_num.min(den.t_pow);
        den.t_pow -= c1;
        t_num -= c1;
        num = num.shift(t_num as usize);
        let c2 = t_den.min(up);
        num = num.unshift(c2 as usize);
        t_den -= c2;
        den.t_pow += t_den;
        let c = &self.content * &m.content * BigRational::from_integer(m.num.lc());
        RatFunc {
            content: c,
            num,
            den,
        }
    }

    /// Sum of many terms over a single common denominator.
    pub fn sum_of<'a, I: IntoIterator<Item = &'a RatFunc>>(terms: I) -> Self {
        let terms: Vec<&RatFunc> = terms.into_iter().filter(|x| !x.is_zero()).collect();
        match terms.len() {
            0 => return Self::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let mut phis = PhiCache::default();
        let mut common = Den::one();
        for t in &terms {
            common.t_pow = common.t_pow.max(t.den.t_pow);
            for (&d, &e) in &t.den.cyclo {
                let slot = common.cyclo.entry(d).or_insert(0);
                *slot = (*slot).max(e);
            }
            if !t.den.residual.is_one() {
                let g = common.residual.gcd(&t.den.residual);
                let part = t.den.residual.try_div_exact(&g).expect("gcd divides");
                common.residual = common.residual.mul(&part);
            }
        }
        let scale = terms
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(t.content.denom()));

        // cofactor common/den_i, shared between terms with equal denominators
        let mut cofactors: Vec<(Den, ZPoly)> = Vec::new();
        let mut total = ZPoly::zero();
        for t in &terms {
            let idx = match cofactors.iter().position(|(d, _)| *d == t.den) {
                Some(i) => i,
                None => {
                    let mut m = common
                        .residual
                        .try_div_exact(&t.den.residual)
                        .expect("residual lcm divisible by each residual");
                    for (&d, &e) in &common.cyclo {
                        let have = t.den.cyclo.get(&d).copied().unwrap_or(0);
                        if e > have {
                            m = m.mul(&phis.get(d).pow(e - have));
                        }
                    }
                    m = m.shift((common.t_pow - t.den.t_pow) as usize);
                    cofactors.push((t.den.clone(), m));
                    cofactors.len() - 1
                }
            };
            let coef = t.content.numer() * (&scale / t.content.denom());
            let term = t.num.mul(&cofactors[idx].1);
            total.add_scaled_shifted(&term, &coef, 0);
        }
        normalize(
            BigRational::new(BigInt::one(), scale),
            total,
            common,
            &mut phis,
        )
    }

    /// Exact value at a rational point, failing at a pole.
    pub fn eval_rational(&self, t0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.denominator().eval_rational(t0);
        if d.is_zero() {
            return Err(Error::Pole(t0.to_string()));
        }
        Ok(&self.content * self.num.eval_rational(t0) / d)
    }

    /// Floating-point value at a complex point.
    pub fn eval_complex(&self, t0: Complex64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let c = self.content.to_f64().unwrap_or(f64::NAN);
        c * self.num.eval_complex(t0) / self.denominator().eval_complex(t0)
    }

    /// Canonical textual form `content * (num) / (den)` with integer
    /// polynomials; trivial factors are omitted.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den = self.denominator();
        match (self.num.is_one(), den.is_one()) {
            (true, true) => write!(f, "{}", self.content),
            (false, true) => write!(f, "{} * ({})", self.content, self.num),
            (true, false) => write!(f, "{} / ({})", self.content, den),
            (false, false) => write!(f, "{} * ({}) / ({})", self.content, self.num, den),
        }
    }
}

fn normalize(mut content: BigRational, num: ZPoly, mut den: Den, phis: &mut PhiCache) -> RatFunc {
    if num.is_zero() || content.is_zero() {
        return RatFunc::zero();
    }
    let (c, mut num) = num.primitive();
    content *= BigRational::from_integer(c);

    let v = (num.t_valuation() as u32).min(den.t_pow);
    if v > 0 {
        num = num.unshift(v as usize);
        den.t_pow -= v;
    }

    if num.deg() > 0 {
        for (&d, e) in den.cyclo.iter_mut() {
            if totient(d) as usize > num.deg() || !may_vanish_on_roots(&num, d) {
                continue;
            }
            let phi = phis.get(d);
            while *e > 0 {
                match num.try_div_monic(phi) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.cyclo.retain(|_, e| *e > 0);
    }

    if !den.residual.is_one() && num.deg() > 0 {
        let g = num.gcd(&den.residual);
        if g.deg() > 0 {
            num = num.try_div_exact(&g).expect("gcd divides numerator");
            den.residual = den.residual.try_div_exact(&g).expect("gcd divides residual");
        }
    }
    // A constant residual is folded into the content.
    if den.residual.deg() == 0 && !den.residual.is_one() {
        content /= BigRational::from_integer(den.residual.lc());
        den.residual = ZPoly::one();
    }
    RatFunc { content, num, den }
}

/// Split a primitive polynomial into `t^k * prod Phi_d^e * rest`.
fn peel_cyclotomic(p: &ZPoly, phis: &mut PhiCache) -> (u32, BTreeMap<u32, u32>, ZPoly) {
    let v = p.t_valuation();
    let mut rest = p.unshift(v);
    let mut cyclo = BTreeMap::new();
    let nonzero: Vec<usize> = rest
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect();
    if nonzero.len() == 2 && rest.coeff(0).abs() == rest.lc().abs() {
        let k = nonzero[1] as u32;
        let indices = if rest.coeff(0) == rest.lc() {
            cyclotomic_indices_plus(k)
        } else {
            cyclotomic_indices_minus(k)
        };
        for d in indices {
            cyclo.insert(d, 1);
        }
        // p primitive with positive lead: the binomial is exactly t^k +- 1
        return (v as u32, cyclo, ZPoly::one());
    }
    let deg = rest.deg();
    // phi(d) >= sqrt(d/2), so the small-degree search is exhaustive
    let bound = if deg <= 48 { 2 * deg * deg + 2 } else { 6 * deg + 6 };
    let mut d = 1u32;
    while (d as usize) <= bound && rest.deg() > 0 {
        if totient(d) as usize <= rest.deg() {
            let phi = phis.get(d);
            let mut e = 0;
            while let Some(q) = rest.try_div_monic(phi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                cyclo.insert(d, e);
            }
        }
        d += 1;
    }
    (v as u32, cyclo, rest)
}

/// Cheap necessary condition for `Phi_d | num`: reduce modulo a prime
/// `p = 1 (mod d)` and evaluate at an element of order `d`.
fn may_vanish_on_roots(num: &ZPoly, d: u32) -> bool {
    let Some((p, omega)) = modular_root_of_unity(d) else {
        return true;
    };
    let pb = BigInt::from(p);
    let mut acc: u64 = 0;
    for c in num.coeffs().iter().rev() {
        let r = c.mod_floor(&pb).to_u64().expect("residue fits");
        acc = ((acc as u128 * omega as u128 + r as u128) % p as u128) as u64;
    }
    acc == 0
}

fn modular_root_of_unity(d: u32) -> Option<(u64, u64)> {
    if d <= 2 {
        // Phi_1 and Phi_2 have the roots 1 and -1 over Z already
        return None;
    }
    let d64 = d as u64;
    let mut k = (1u64 << 40) / d64;
    for _ in 0..100_000 {
        let p = k * d64 + 1;
        k += 1;
        if !is_prime(p) {
            continue;
        }
        let primes = prime_factors(d64);
        for g in 2u64..200 {
            let w = pow_mod(g, (p - 1) / d64, p);
            if w == 1 {
                continue;
            }
            if primes.iter().all(|&l| pow_mod(w, d64 / l, p) != 1) {
                return Some((p, w));
            }
        }
    }
    None
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::sum_of([&self, &rhs])
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        RatFunc::sum_of([&self, &rhs.neg_ref()])
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sum_of([self, rhs])
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sum_of([self, &rhs.neg_ref()])
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RatFunc {
        RatFunc::t_power(1)
    }

    fn int(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(&ZPoly::from_i64s(c))
    }

    #[test]
    fn like_terms() {
        let x = t().checked_div(&(int(1) - t())).unwrap();
        let two_x = poly(&[0, 2]).checked_div(&poly(&[1, -1])).unwrap();
        assert_eq!(&x + &x, two_x);
    }

    #[test]
    fn factorization_cancels() {
        let q = poly(&[1, 0, -1]).checked_div(&poly(&[1, -1])).unwrap();
        assert_eq!(q, poly(&[1, 1]));
        assert!(q.is_polynomial());
    }

    #[test]
    fn multiplicative_identity() {
        let x = poly(&[3, 0, 2]).checked_div(&poly(&[1, 5, 1])).unwrap();
        assert_eq!(x.mul_ref(&RatFunc::one()), x);
    }

    #[test]
    fn eval_removable_and_genuine_poles() {
        let q = poly(&[1, 0, -1]).checked_div(&poly(&[1, -1])).unwrap();
        assert_eq!(q.eval_rational(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(RatFunc::t_power(3).eval_rational(&rat(1, 2)).unwrap(), rat(1, 8));
        let pole = int(1).checked_div(&(int(1) - t())).unwrap();
        assert!(matches!(pole.eval_rational(&rat(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn negative_powers_live_in_denominator() {
        let x = RatFunc::t_power(-3);
        assert_eq!(x.denominator(), ZPoly::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(x.mul_ref(&RatFunc::t_power(5)), RatFunc::t_power(2));
        assert_eq!(x.mul_ref(&RatFunc::t_power(3)), RatFunc::one());
        assert_eq!(x.eval_rational(&rat(1, 2)).unwrap(), rat(8, 1));
    }

    #[test]
    fn factored_constructors_match_general_division() {
        for k in 1..=12 {
            let mut plus = vec![0i64; k as usize + 1];
            plus[0] = 1;
            plus[k as usize] = 1;
            let mut minus = plus.clone();
            minus[k as usize] = -1;
            assert_eq!(
                RatFunc::recip_one_plus_t_pow(k),
                int(1).checked_div(&poly(&plus)).unwrap()
            );
            assert_eq!(
                RatFunc::recip_one_minus_t_pow(k),
                int(1).checked_div(&poly(&minus)).unwrap()
            );
        }
    }

    #[test]
    fn residual_denominators_reduce_by_gcd() {
        // (t^2 + 3)(t + 2) / ((t^2 + 3)(2t + 7)) = (t + 2)/(2t + 7)
        let a = poly(&[3, 0, 1]).mul_ref(&poly(&[2, 1]));
        let b = poly(&[3, 0, 1]).mul_ref(&poly(&[7, 2]));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q, poly(&[2, 1]).checked_div(&poly(&[7, 2])).unwrap());
        assert_eq!(q.numerator(), &ZPoly::from_i64s(&[2, 1]));
        assert_eq!(q.denominator(), ZPoly::from_i64s(&[7, 2]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(t().checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn modular_precheck_never_rejects_true_factors() {
        for d in 3..=40u32 {
            let phi = cyclotomic(d);
            let multiple = phi.mul(&ZPoly::from_i64s(&[5, -3, 0, 7]));
            assert!(may_vanish_on_roots(&multiple, d), "d = {d}");
        }
        assert!(!may_vanish_on_roots(&ZPoly::from_i64s(&[1, 1]), 3));
    }

    #[test]
    fn display_form() {
        let x = poly(&[0, 3]).checked_div(&poly(&[4, -4])).unwrap();
        assert_eq!(x.to_string(), "-3/4 * (t) / (t - 1)");
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(RatFunc::zero().to_string(), "0");
    }
}
