//! Classical Euler numbers and polynomials of order r,
//! `(2 / (e^t + 1))^r e^{xt} = sum_n E_n^{(r)}(x) t^n / n!`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qbasics::binomial;

/// Polynomial in `x` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

fn binom_q(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n as u64, k as u64))
}

/// First-order Euler numbers `E_0 .. E_{n_max}`, from
/// `E_0 = 1` and `sum_{k=0}^{n} C(n,k) E_k + E_n = 0` for `n >= 1`.
pub fn euler_numbers_order1(n_max: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    out.push(BigRational::one());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for n in 1..=n_max {
        let s: BigRational = (0..n).map(|k| binom_q(n, k) * &out[k]).sum();
        out.push(-s * &half);
    }
    out
}

/// Binomial convolution of two exponential generating sequences.
pub fn binomial_convolution(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| (0..=m).map(|k| binom_q(m, k) * &a[k] * &b[m - k]).sum())
        .collect()
}

/// Euler numbers of order `r`, `E_0^{(r)} .. E_{n_max}^{(r)}`, by r-fold
/// binomial convolution of the first-order numbers.
pub fn euler_numbers(n_max: usize, r: u32) -> Vec<BigRational> {
    let first = euler_numbers_order1(n_max);
    let mut acc: Vec<BigRational> = (0..=n_max)
        .map(|n| if n == 0 { BigRational::one() } else { BigRational::zero() })
        .collect();
    for _ in 0..r {
        acc = binomial_convolution(&acc, &first);
    }
    acc
}

/// `E_n^{(r)}(x) = sum_k C(n,k) E_k^{(r)} x^{n-k}`.
pub fn euler_poly(n: usize, r: u32) -> RationalPolynomial {
    let numbers = euler_numbers(n, r);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (k, e) in numbers.iter().enumerate() {
        coeffs[n - k] = binom_q(n, k) * e;
    }
    RationalPolynomial::new(coeffs)
}
