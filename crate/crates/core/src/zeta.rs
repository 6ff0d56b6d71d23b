//! Multiple q-Euler zeta function
//! `zeta_{q,r}(s, x) = [2]_q^r sum_{m_1..m_r} (-q)^{m_1+..+m_r} / [m_1+..+m_r + x]_q^s`.
//!
//! For `|q| < 1` the terms decay like `|q|^M` for every complex `s`, so the
//! series itself is the evaluator everywhere; no continuation is needed.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::qbasics::q_number;
use crate::qeuler::qeuler_closed;
use crate::ratfunc::RatFunc;
use crate::report::IdentityReport;
use crate::scalar::{ExactBase, FieldElem, FloatBase, QBackend, QBase, Scalar};
use crate::series::{AlternatingSeries, SeriesControl, SeriesValue};

/// Reject `x` in `{0, -1, -2, ...}`.
pub fn check_argument(x: &BigRational) -> Result<()> {
    if x.is_integer() && !x.is_positive() {
        return Err(Error::Domain(format!(
            "zeta argument x must avoid 0, -1, -2, ...; got {x}"
        )));
    }
    Ok(())
}

/// Brute-force r-fold truncated sum.
pub fn zeta_multisum(
    s: Complex64,
    r: u32,
    x: &BigRational,
    base: &FloatBase,
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    check_argument(x)?;
    AlternatingSeries::new(base, x, s, r).multisum(ctrl)
}

/// Single-index truncated sum; the production float evaluator.
pub fn zeta_single_sum(
    s: Complex64,
    r: u32,
    x: &BigRational,
    base: &FloatBase,
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    check_argument(x)?;
    AlternatingSeries::new(base, x, s, r).single_sum(ctrl)
}

/// `zeta_{q,r}(-n, x)` exactly. Each geometric series in the expansion of
/// `[m + x]_q^n` is summed in closed form.
pub fn zeta_exact(n: u32, r: u32, x: &BigRational, base: &ExactBase) -> Result<RatFunc> {
    check_argument(x)?;
    if r == 0 {
        return Ok(q_number(x, base)?.pow_n(n));
    }
    qeuler_closed(n, r, x, base)
}

/// `s` as `-n` when it is a nonpositive integer.
pub fn as_negative_integer(s: Complex64) -> Option<u32> {
    (s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0)
        .then(|| (-s.re).to_u32())
        .flatten()
}

/// Zeta on either backend; the exact backend only admits `s = -n`.
pub fn zeta(s: Complex64, r: u32, x: &BigRational, q: &QBase, ctrl: &SeriesControl) -> Result<Scalar> {
    match q {
        QBase::Float(b) => zeta_single_sum(s, r, x, b, ctrl).map(|v| Scalar::Float(v.value)),
        QBase::Exact(b) => {
            let n = as_negative_integer(s).ok_or_else(|| Error::Unsupported {
                backend: "exact",
                what: format!("zeta at s = {s} (only s = 0, -1, -2, ...)"),
            })?;
            zeta_exact(n, r, x, b).map(Scalar::Exact)
        }
    }
}

/// Backend-generic zeta value used by the symmetry verifiers.
pub trait ZetaBackend: QBackend {
    /// The exponent `s` in the form this backend accepts.
    type Exponent: Clone + std::fmt::Debug + Send + Sync;

    fn zeta_value(
        &self,
        s: &Self::Exponent,
        r: u32,
        x: &BigRational,
        ctrl: &SeriesControl,
    ) -> Result<Self::Elem>;

    /// `v^s` for a value `v` of this backend (used for `[a]_q^s`).
    fn elem_pow(&self, v: &Self::Elem, s: &Self::Exponent) -> Result<Self::Elem>;

    fn exponent_json(s: &Self::Exponent) -> serde_json::Value;
}

impl ZetaBackend for FloatBase {
    type Exponent = Complex64;

    fn zeta_value(&self, s: &Complex64, r: u32, x: &BigRational, ctrl: &SeriesControl) -> Result<Complex64> {
        Ok(zeta_single_sum(*s, r, x, self, ctrl)?.value)
    }

    fn elem_pow(&self, v: &Complex64, s: &Complex64) -> Result<Complex64> {
        if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e9 {
            if v.re == 0.0 && v.im == 0.0 && s.re < 0.0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(v.powi(s.re as i32));
        }
        if v.im == 0.0 && v.re <= 0.0 {
            return Err(Error::BranchCut {
                index: vec![],
                value: v.to_string(),
            });
        }
        Ok((s * v.ln()).exp())
    }

    fn exponent_json(s: &Complex64) -> serde_json::Value {
        crate::scalar::complex_json(*s)
    }
}

/// Exact exponents are integers `s`; only `s <= 0` reaches the zeta series.
impl ZetaBackend for ExactBase {
    type Exponent = i64;

    fn zeta_value(&self, s: &i64, r: u32, x: &BigRational, _ctrl: &SeriesControl) -> Result<RatFunc> {
        if *s > 0 {
            return Err(Error::Unsupported {
                backend: "exact",
                what: format!("zeta at s = {s} (only s = 0, -1, -2, ...)"),
            });
        }
        zeta_exact(s.unsigned_abs() as u32, r, x, self)
    }

    fn elem_pow(&self, v: &RatFunc, s: &i64) -> Result<RatFunc> {
        let p = v.pow(s.unsigned_abs() as u32);
        if *s < 0 {
            RatFunc::one().checked_div(&p)
        } else {
            Ok(p)
        }
    }

    fn exponent_json(s: &i64) -> serde_json::Value {
        serde_json::json!(s)
    }
}

/// Compare `zeta_{q,r}(-n, x)` with `E_{n,q}^{(r)}(x)` from the closed form.
pub fn interpolation_check(
    n: u32,
    r: u32,
    x: &BigRational,
    q: &QBase,
    ctrl: &SeriesControl,
    tol: f64,
) -> Result<IdentityReport> {
    check_argument(x)?;
    let s = Complex64::new(-(n as f64), 0.0);
    let lhs = zeta(s, r, x, q, ctrl)?;
    let rhs = crate::qeuler::qeuler(n, r, x, q)?;
    let params = serde_json::json!({
        "n": n, "r": r, "x": x.to_string(), "q": q.to_json(),
        "max_terms": ctrl.max_terms, "abs_tol": ctrl.abs_tol,
    });
    Ok(IdentityReport::new("interpolation", params, lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn excluded_arguments() {
        let b = FloatBase::real(0.5).unwrap();
        for x in [rat(0, 1), rat(-1, 1), rat(-7, 1)] {
            assert!(matches!(
                zeta_single_sum(Complex64::new(2.0, 0.0), 1, &x, &b, &SeriesControl::default()),
                Err(Error::Domain(_))
            ));
        }
        let q = QBase::Float(b);
        assert!(matches!(
            interpolation_check(2, 1, &rat(0, 1), &q, &SeriesControl::default(), 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn value_at_zero_is_one() {
        let b = FloatBase::real(0.5).unwrap();
        for r in 1..=3 {
            let v = zeta_single_sum(Complex64::new(0.0, 0.0), r, &rat(1, 1), &b, &SeriesControl::default())
                .unwrap();
            assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn order_zero_is_a_single_bracket() {
        let b = FloatBase::real(0.5).unwrap();
        let v = zeta_single_sum(Complex64::new(2.0, 0.0), 0, &rat(2, 1), &b, &SeriesControl::default())
            .unwrap();
        assert!((v.value - Complex64::new(1.0 / 2.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_backend_needs_nonpositive_integer_s() {
        let q = QBase::Exact(ExactBase::new(rat(1, 2), 1).unwrap());
        let ctrl = SeriesControl::default();
        assert!(zeta(Complex64::new(-2.0, 0.0), 1, &rat(1, 1), &q, &ctrl).is_ok());
        assert!(matches!(
            zeta(Complex64::new(2.0, 0.0), 1, &rat(1, 1), &q, &ctrl),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn negative_integer_detection() {
        assert_eq!(as_negative_integer(Complex64::new(-3.0, 0.0)), Some(3));
        assert_eq!(as_negative_integer(Complex64::new(0.0, 0.0)), Some(0));
        assert_eq!(as_negative_integer(Complex64::new(-2.5, 0.0)), None);
        assert_eq!(as_negative_integer(Complex64::new(-2.0, 1.0)), None);
    }
}
