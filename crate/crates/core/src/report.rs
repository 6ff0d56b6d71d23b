//! Both sides of a checked identity and the verdict.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde_json::{json, Value};

use crate::scalar::{approx_eq, Scalar};

pub const REPORT_SCHEMA: &str = "qeuler.report/v1";

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    /// Every parameter of the evaluation, echoed for reproducibility.
    pub params: Value,
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// `|lhs - rhs|` on the float backend.
    pub abs_diff: Option<f64>,
    /// Whether `lhs - rhs` is identically zero on the exact backend.
    pub exact_zero: Option<bool>,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(identity: &str, params: Value, lhs: Scalar, rhs: Scalar, tolerance: f64) -> Self {
        let (abs_diff, exact_zero) = match (&lhs, &rhs) {
            (Scalar::Float(a), Scalar::Float(b)) => (Some((a - b).norm()), None),
            (Scalar::Exact(a), Scalar::Exact(b)) => (None, Some(a == b)),
            _ => (None, None),
        };
        let pass = approx_eq(&lhs, &rhs, tolerance);
        IdentityReport {
            identity: identity.to_string(),
            params,
            lhs,
            rhs,
            abs_diff,
            exact_zero,
            tolerance,
            pass,
        }
    }

    pub fn backend(&self) -> &'static str {
        self.lhs.backend_name()
    }

    /// Same report with `delta` added to the right-hand side.
    pub fn perturbed(&self, delta: f64) -> Self {
        let rhs = match &self.rhs {
            Scalar::Float(v) => Scalar::Float(v + Complex64::new(delta, 0.0)),
            Scalar::Exact(v) => {
                let d = BigRational::from_f64(delta).unwrap_or_default();
                Scalar::Exact(v + &crate::ratfunc::RatFunc::from_rational(d))
            }
        };
        IdentityReport::new(&self.identity, self.params.clone(), self.lhs.clone(), rhs, self.tolerance)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "identity": self.identity,
            "backend": self.backend(),
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "abs_diff": self.abs_diff,
            "exact_zero": self.exact_zero,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    #[test]
    fn pass_matches_approx_eq() {
        let a = Scalar::Float(Complex64::new(2.0, 0.0));
        let b = Scalar::Float(Complex64::new(2.0 + 1e-12, 0.0));
        let r = IdentityReport::new("demo", json!({}), a.clone(), b.clone(), 1e-9);
        assert!(r.pass);
        assert!(r.abs_diff.unwrap() > 0.0);
        assert!(!r.perturbed(1e-3).pass);
    }

    #[test]
    fn exact_reports_are_tolerance_free() {
        let a = Scalar::Exact(RatFunc::t_power(2));
        let r = IdentityReport::new("demo", json!({}), a.clone(), a.clone(), 0.0);
        assert!(r.pass);
        assert_eq!(r.exact_zero, Some(true));
        let p = r.perturbed(1e-3);
        assert!(!p.pass);
        assert_eq!(p.exact_zero, Some(false));
    }

    #[test]
    fn json_shape() {
        let a = Scalar::Float(Complex64::new(1.0, -0.5));
        let v = IdentityReport::new("interpolation", json!({"n": 1}), a.clone(), a, 1e-10).to_json();
        assert_eq!(v["schema"], REPORT_SCHEMA);
        assert_eq!(v["lhs"]["im"], -0.5);
        assert_eq!(v["params"]["n"], 1);
        assert_eq!(v["pass"], true);
    }
}
