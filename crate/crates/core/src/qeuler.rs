//! Higher-order q-Euler polynomials `E_{n,q}^{(r)}(x)`.
//!
//! Three independent evaluators:
//!
//! * [`qeuler_multisum`]: the defining r-fold alternating sum, brute force;
//! * [`qeuler_single_sum`]: the same sum collapsed over `M = m_1 + .. + m_r`,
//!   each `M` weighted by the `C(M + r - 1, M)` compositions;
//! * [`qeuler_closed`]: expanding `[M + x]_q^n` binomially and summing the
//!   geometric series,
//!   `[2]_q^r (1-q)^{-n} sum_k C(n,k) (-1)^k q^{kx} (1 + q^{k+1})^{-r}`.
//!
//! The closed form is finite and works on both backends; the series forms
//! are float-only oracles.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qbasics::{binomial, q_number};
use crate::report::IdentityReport;
use crate::scalar::{FieldElem, FloatBase, QBackend, QBase, Scalar};
use crate::series::{AlternatingSeries, SeriesControl, SeriesValue};
use crate::with_backend;

fn check_order(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("order r must be >= 1".into()));
    }
    Ok(())
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn minus_n(n: u32) -> Complex64 {
    Complex64::new(-(n as f64), 0.0)
}

/// Brute-force r-fold truncated sum (float only).
pub fn qeuler_multisum(
    n: u32,
    r: u32,
    x: &BigRational,
    base: &FloatBase,
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    check_order(r)?;
    AlternatingSeries::new(base, x, minus_n(n), r).multisum(ctrl)
}

/// Single-index truncated sum (float only).
pub fn qeuler_single_sum(
    n: u32,
    r: u32,
    x: &BigRational,
    base: &FloatBase,
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    check_order(r)?;
    AlternatingSeries::new(base, x, minus_n(n), r).single_sum(ctrl)
}

/// Finite closed form, exact on the exact backend.
pub fn qeuler_closed<B: QBackend>(n: u32, r: u32, x: &BigRational, base: &B) -> Result<B::Elem> {
    check_order(r)?;
    let one = B::Elem::one();
    let prefactor = q_number(&int(2), base)?.pow_n(r);
    if n == 0 {
        // [2]_q^r / (1 + q)^r
        return Ok(one);
    }
    let mut terms = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(n as u64, k as u64) * sign));
        let shift = base.qpow(&(x * int(k as u64)))?;
        // invert the binomial before raising to r: exact inverses of 1 + t^j
        // stay in factored form
        let damp = one.try_div(&one.plus(&base.qpow_int(k as i64 + 1)?))?.pow_n(r);
        terms.push(c.times(&shift).times(&damp));
    }
    let scale = one.try_div(&one.minus(&base.qpow_int(1)?))?.pow_n(n);
    Ok(prefactor.times(&scale).times(&B::Elem::sum_all(&terms)))
}

/// `E_{n,q}^{(r)}(x)` through the closed form on any backend.
pub fn qeuler(n: u32, r: u32, x: &BigRational, q: &QBase) -> Result<Scalar> {
    with_backend!(q, |b| qeuler_closed(n, r, x, b))
}

/// Both sides of the addition theorem
/// `E_n(x + y) = sum_i C(n,i) q^{xi} E_i(y) [x]_q^{n-i}`.
pub fn addition_sides<B: QBackend>(
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    base: &B,
) -> Result<(B::Elem, B::Elem)> {
    let lhs = qeuler_closed(n, r, &(x + y), base)?;
    let bracket = q_number(x, base)?;
    let mut terms = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(n as u64, i as u64)));
        let term = c
            .times(&base.qpow(&(x * int(i as u64)))?)
            .times(&qeuler_closed(i, r, y, base)?)
            .times(&bracket.pow_n(n - i));
        terms.push(term);
    }
    Ok((lhs, B::Elem::sum_all(&terms)))
}

/// Both sides of
/// `sum_{k=0}^{m} C(m,k) q^{(k+n)x} E_{k+n}(y) [x]^{m-k}
///  = sum_{k=0}^{n} C(n,k) E_{m+k}(x+y) q^{(n-k)x} [-x]^{n-k}`.
pub fn shift_sum_sides<B: QBackend>(
    m: u32,
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    base: &B,
) -> Result<(B::Elem, B::Elem)> {
    let bx = q_number(x, base)?;
    let bmx = q_number(&-x, base)?;
    let xy = x + y;
    let mut left = Vec::new();
    for k in 0..=m {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(m as u64, k as u64)));
        left.push(
            c.times(&base.qpow(&(x * int((k + n) as u64)))?)
                .times(&qeuler_closed(k + n, r, y, base)?)
                .times(&bx.pow_n(m - k)),
        );
    }
    let mut right = Vec::new();
    for k in 0..=n {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(n as u64, k as u64)));
        right.push(
            c.times(&qeuler_closed(m + k, r, &xy, base)?)
                .times(&base.qpow(&(x * int((n - k) as u64)))?)
                .times(&bmx.pow_n(n - k)),
        );
    }
    Ok((B::Elem::sum_all(&left), B::Elem::sum_all(&right)))
}

/// Both sides of
/// `sum_{k=0}^{m} C(m,k) q^{kx} E_{k+n}(y) [x]^{m-k}
///  = sum_{k=0}^{n} C(n,k) q^{-kx} E_{m+k}(x+y) [-x]^{n-k}`.
pub fn reflected_shift_sum_sides<B: QBackend>(
    m: u32,
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    base: &B,
) -> Result<(B::Elem, B::Elem)> {
    let bx = q_number(x, base)?;
    let bmx = q_number(&-x, base)?;
    let xy = x + y;
    let mut left = Vec::new();
    for k in 0..=m {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(m as u64, k as u64)));
        left.push(
            c.times(&base.qpow(&(x * int(k as u64)))?)
                .times(&qeuler_closed(k + n, r, y, base)?)
                .times(&bx.pow_n(m - k)),
        );
    }
    let mut right = Vec::new();
    for k in 0..=n {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(n as u64, k as u64)));
        let neg_kx = -(x * int(k as u64));
        right.push(
            c.times(&base.qpow(&neg_kx)?)
                .times(&qeuler_closed(m + k, r, &xy, base)?)
                .times(&bmx.pow_n(n - k)),
        );
    }
    Ok((B::Elem::sum_all(&left), B::Elem::sum_all(&right)))
}

fn rat_json(v: &BigRational) -> serde_json::Value {
    serde_json::Value::String(v.to_string())
}

/// Addition theorem report.
pub fn qeuler_addition(
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    q: &QBase,
    tol: f64,
) -> Result<IdentityReport> {
    let (lhs, rhs) = match q {
        QBase::Float(b) => wrap(addition_sides(n, r, x, y, b)?),
        QBase::Exact(b) => wrap(addition_sides(n, r, x, y, b)?),
    };
    let params = serde_json::json!({
        "n": n, "r": r, "x": rat_json(x), "y": rat_json(y), "q": q.to_json(),
    });
    Ok(IdentityReport::new("addition", params, lhs, rhs, tol))
}

/// Report for the first two-index identity.
pub fn shift_sum_report(
    m: u32,
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    q: &QBase,
    tol: f64,
) -> Result<IdentityReport> {
    let (lhs, rhs) = match q {
        QBase::Float(b) => wrap(shift_sum_sides(m, n, r, x, y, b)?),
        QBase::Exact(b) => wrap(shift_sum_sides(m, n, r, x, y, b)?),
    };
    let params = serde_json::json!({
        "m": m, "n": n, "r": r, "x": rat_json(x), "y": rat_json(y), "q": q.to_json(),
    });
    Ok(IdentityReport::new("shift-sum", params, lhs, rhs, tol))
}

/// Report for the second two-index identity.
pub fn reflected_shift_sum_report(
    m: u32,
    n: u32,
    r: u32,
    x: &BigRational,
    y: &BigRational,
    q: &QBase,
    tol: f64,
) -> Result<IdentityReport> {
    let (lhs, rhs) = match q {
        QBase::Float(b) => wrap(reflected_shift_sum_sides(m, n, r, x, y, b)?),
        QBase::Exact(b) => wrap(reflected_shift_sum_sides(m, n, r, x, y, b)?),
    };
    let params = serde_json::json!({
        "m": m, "n": n, "r": r, "x": rat_json(x), "y": rat_json(y), "q": q.to_json(),
    });
    Ok(IdentityReport::new("reflected-shift-sum", params, lhs, rhs, tol))
}

fn wrap<E: Into<Scalar>>((a, b): (E, E)) -> (Scalar, Scalar) {
    (a.into(), b.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::scalar::ExactBase;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn order_zero_rejected() {
        let b = ExactBase::formal(1).unwrap();
        assert!(qeuler_closed(1, 0, &rat(0, 1), &b).is_err());
    }

    #[test]
    fn zeroth_polynomial_is_one() {
        let b = ExactBase::formal(2).unwrap();
        for r in 1..=4 {
            assert_eq!(qeuler_closed(0, r, &rat(1, 2), &b).unwrap(), RatFunc::one());
        }
        let f = FloatBase::real(0.5).unwrap();
        let v = qeuler_multisum(0, 1, &rat(3, 1), &f, &SeriesControl::default()).unwrap();
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn exact_rejects_unrepresentable_argument() {
        let b = ExactBase::formal(1).unwrap();
        assert!(matches!(
            qeuler_closed(2, 1, &rat(1, 2), &b),
            Err(Error::ExponentNotRepresentable { .. })
        ));
    }

    #[test]
    fn first_polynomial_order_one() {
        // E_{1,q}(x) = [2]_q/(1-q) (q^0/(1+q) - q^x/(1+q^2)) at q = 1/2, x = 0
        let f = FloatBase::real(0.5).unwrap();
        let v = qeuler_closed(1, 1, &rat(0, 1), &f).unwrap();
        let expect = 1.5 / 0.5 * (1.0 / 1.5 - 1.0 / 1.25);
        assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn addition_with_zero_shift() {
        let b = ExactBase::formal(1).unwrap();
        for n in 0..4 {
            let (l, r) = addition_sides(n, 2, &rat(0, 1), &rat(2, 1), &b).unwrap();
            assert_eq!(l, r);
            assert_eq!(r, qeuler_closed(n, 2, &rat(2, 1), &b).unwrap());
        }
    }
}
