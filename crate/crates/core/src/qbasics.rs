//! q-numbers, Gaussian binomial coefficients and q-Pochhammer symbols.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldElem, QBackend, QBase, Scalar};
use crate::with_backend;

/// `[x]_q = (1 - q^x) / (1 - q)` at the backend's current base.
pub fn q_number<B: QBackend>(x: &BigRational, base: &B) -> Result<B::Elem> {
    if x.is_zero() {
        return Ok(B::Elem::zero());
    }
    if x.is_one() {
        return Ok(B::Elem::one());
    }
    let one = B::Elem::one();
    let top = one.minus(&base.qpow(x)?);
    let bottom = one.minus(&base.qpow_int(1)?);
    top.try_div(&bottom)
}

/// `[x]_q` for an integer argument.
pub fn q_int<B: QBackend>(x: i64, base: &B) -> Result<B::Elem> {
    q_number(&BigRational::from_integer(BigInt::from(x)), base)
}

/// `[x]_{q^a}`; satisfies `[a]_q * [x]_{q^a} = [a x]_q`.
pub fn q_number_base<B: QBackend>(x: &BigRational, base: &B, a: u32) -> Result<B::Elem> {
    if a == 0 {
        return Err(Error::InvalidParameter("base multiplier a must be >= 1".into()));
    }
    q_number(x, &base.rebase(a))
}

/// Gaussian binomial `C_q(n, k) = prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)`.
pub fn gauss_binomial_nk<B: QBackend>(n: u32, k: u32, base: &B) -> Result<B::Elem> {
    if k > n {
        return Ok(B::Elem::zero());
    }
    let k = k.min(n - k);
    let one = B::Elem::one();
    let mut top = one.clone();
    let mut bottom = one.clone();
    for i in 1..=k {
        top = top.times(&one.minus(&base.qpow_int((n - k + i) as i64)?));
        bottom = bottom.times(&one.minus(&base.qpow_int(i as i64)?));
    }
    top.try_div(&bottom)
}

/// The coefficient `C_q(m + r - 1, m)` from the q-binomial theorem
/// `sum_m C_q(m + r - 1, m) z^m = 1 / (z; q)_r`.
pub fn gauss_binomial<B: QBackend>(m: u32, r: u32, base: &B) -> Result<B::Elem> {
    if r == 0 {
        return Err(Error::InvalidParameter("order r must be >= 1".into()));
    }
    gauss_binomial_nk(m + r - 1, m, base)
}

/// Row of `C_q(m + r - 1, m)` for `m = 0, 1, ...`, extended on demand with
/// the prefix-product recurrence
/// `C(m) = C(m - 1) (1 - q^{r-1+m}) / (1 - q^m)`.
#[derive(Debug, Clone)]
pub struct GaussBinomialRow<B: QBackend> {
    base: B,
    r: u32,
    values: Vec<B::Elem>,
}

impl<B: QBackend> GaussBinomialRow<B> {
    pub fn new(r: u32, base: &B) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("order r must be >= 1".into()));
        }
        Ok(GaussBinomialRow {
            base: base.clone(),
            r,
            values: vec![B::Elem::one()],
        })
    }

    pub fn get(&mut self, m: u32) -> Result<&B::Elem> {
        let one = B::Elem::one();
        while self.values.len() <= m as usize {
            let j = self.values.len() as i64;
            let prev = self.values.last().expect("row starts with C(0) = 1");
            let top = one.minus(&self.base.qpow_int(self.r as i64 - 1 + j)?);
            let bottom = one.minus(&self.base.qpow_int(j)?);
            let next = prev.times(&top).try_div(&bottom)?;
            self.values.push(next);
        }
        Ok(&self.values[m as usize])
    }
}

/// `(z; q)_r = prod_{j=0}^{r-1} (1 - z q^j)`; the empty product is 1.
pub fn q_pochhammer<B: QBackend>(z: &B::Elem, base: &B, r: u32) -> Result<B::Elem> {
    let one = B::Elem::one();
    let mut acc = one.clone();
    for j in 0..r {
        acc = acc.times(&one.minus(&z.times(&base.qpow_int(j as i64)?)));
    }
    Ok(acc)
}

/// Ordinary binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Ordinary binomial coefficient as a float.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub mod dynamic {
    //! [`QBase`]/[`Scalar`] wrappers over the generic functions.
    use super::*;

    pub fn q_number(x: &BigRational, q: &QBase) -> Result<Scalar> {
        with_backend!(q, |b| super::q_number(x, b))
    }

    pub fn q_number_base(x: &BigRational, q: &QBase, a: u32) -> Result<Scalar> {
        with_backend!(q, |b| super::q_number_base(x, b, a))
    }

    pub fn gauss_binomial(m: u32, r: u32, q: &QBase) -> Result<Scalar> {
        with_backend!(q, |b| super::gauss_binomial(m, r, b))
    }

    pub fn q_pochhammer(z: &Scalar, q: &QBase, r: u32) -> Result<Scalar> {
        match (q, z) {
            (QBase::Float(b), Scalar::Float(z)) => super::q_pochhammer(z, b, r).map(Scalar::from),
            (QBase::Exact(b), Scalar::Exact(z)) => super::q_pochhammer(z, b, r).map(Scalar::from),
            _ => Err(Error::BackendMismatch(q.backend_name(), z.backend_name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::scalar::{ExactBase, FloatBase};
    use num_complex::Complex64;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn formal() -> ExactBase {
        ExactBase::formal(1).unwrap()
    }

    fn t() -> RatFunc {
        RatFunc::t_power(1)
    }

    #[test]
    fn q_number_small_arguments() {
        let b = formal();
        assert_eq!(q_int(0, &b).unwrap(), RatFunc::zero());
        assert_eq!(q_int(1, &b).unwrap(), RatFunc::one());
        assert_eq!(q_int(2, &b).unwrap(), &RatFunc::one() + &t());
        let f = FloatBase::real(0.5).unwrap();
        assert_eq!(q_int(3, &f).unwrap(), Complex64::new(1.75, 0.0));
    }

    #[test]
    fn q_number_base_with_a_one_is_q_number() {
        let b = ExactBase::formal(2).unwrap();
        for x in [rat(1, 2), rat(3, 1), rat(-5, 2)] {
            assert_eq!(q_number_base(&x, &b, 1).unwrap(), q_number(&x, &b).unwrap());
        }
    }

    #[test]
    fn q_number_base_third_root() {
        let b = ExactBase::new(rat(1, 8), 3).unwrap();
        let v = q_number_base(&rat(1, 3), &b, 3).unwrap();
        assert_eq!(v.eval_rational(&b.t_value().unwrap()).unwrap(), rat(448, 511));
    }

    #[test]
    fn gauss_binomial_examples() {
        let b = formal();
        for m in 0..6 {
            assert_eq!(gauss_binomial(m, 1, &b).unwrap(), RatFunc::one());
        }
        let expect = RatFunc::from_poly(&crate::poly::ZPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(gauss_binomial(2, 2, &b).unwrap(), expect);
        assert!(gauss_binomial(5, 4, &b).unwrap().is_polynomial());
    }

    #[test]
    fn gauss_row_matches_product_formula() {
        let b = formal();
        for r in 1..=4 {
            let mut row = GaussBinomialRow::new(r, &b).unwrap();
            for m in 0..8 {
                assert_eq!(row.get(m).unwrap(), &gauss_binomial(m, r, &b).unwrap());
            }
        }
    }

    #[test]
    fn pochhammer_small_cases() {
        let b = formal();
        let z = RatFunc::from_rational(rat(2, 7));
        assert_eq!(q_pochhammer(&z, &b, 0).unwrap(), RatFunc::one());
        assert_eq!(q_pochhammer(&z, &b, 1).unwrap(), RatFunc::one() - z.clone());
        let two = q_pochhammer(&z, &b, 2).unwrap();
        assert_eq!(two, (RatFunc::one() - z.clone()) * (RatFunc::one() - z.mul_ref(&t())));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial_f64(12, 6), 924.0);
    }
}
