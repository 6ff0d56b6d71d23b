//! Truncated alternating series `[2]_q^r sum (-q)^M w(M) [M + x]_q^{-s}`
//! with rigorous tail bounds.
//!
//! Both the q-Euler polynomials (`s = -n`) and the multiple q-Euler zeta
//! function are instances; the single-index form weights each `M` by the
//! number of ways to write it as a sum of `r` nonnegative parts, the
//! multi-index form walks the `r` indices directly.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qbasics::binomial_f64;
use crate::scalar::{FloatBase, QBackend};

/// Truncation policy for infinite sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// Hard cap on terms (on the index total for multi-index sums).
    pub max_terms: usize,
    /// Target bound on the discarded tail.
    pub abs_tol: f64,
    /// Stop as soon as the tail bound meets `abs_tol`; otherwise sum exactly
    /// `max_terms` terms and only report the bound.
    pub use_tail_bound: bool,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 5000,
            abs_tol: 1e-14,
            use_tail_bound: true,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, abs_tol: f64, use_tail_bound: bool) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be >= 1".into()));
        }
        if !(abs_tol >= 0.0) || !abs_tol.is_finite() {
            return Err(Error::InvalidParameter(format!("abs_tol must be finite and >= 0, got {abs_tol}")));
        }
        Ok(SeriesControl {
            max_terms,
            abs_tol,
            use_tail_bound,
        })
    }

    pub fn with_tol(abs_tol: f64) -> Self {
        SeriesControl {
            abs_tol,
            ..Self::default()
        }
    }
}

/// Compensated summation, componentwise.
#[derive(Default)]
struct Neumaier {
    sum: Complex64,
    carry: Complex64,
}

impl Neumaier {
    fn add(&mut self, v: Complex64) {
        fn step(sum: &mut f64, carry: &mut f64, v: f64) {
            let t = *sum + v;
            *carry += if sum.abs() >= v.abs() { (*sum - t) + v } else { (v - t) + *sum };
            *sum = t;
        }
        step(&mut self.sum.re, &mut self.carry.re, v.re);
        step(&mut self.sum.im, &mut self.carry.im, v.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// A truncated sum together with a bound on what was discarded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Terms summed (the index-total cap for multi-index sums).
    pub terms: usize,
}

/// The alternating series for a fixed base, argument, order and exponent.
#[derive(Clone, Debug)]
pub struct AlternatingSeries<'a> {
    base: &'a FloatBase,
    x: BigRational,
    s: Complex64,
    r: u32,
    /// `-s` when it is an integer, so powers stay branch-free.
    int_power: Option<i32>,
}

impl<'a> AlternatingSeries<'a> {
    pub fn new(base: &'a FloatBase, x: &BigRational, s: Complex64, r: u32) -> Self {
        let int_power = (s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e9)
            .then(|| (-s.re) as i32);
        AlternatingSeries {
            base,
            x: x.clone(),
            s,
            r,
            int_power,
        }
    }

    fn bracket(&self, m: usize) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let e = &self.x + BigRational::from_integer(m.into());
        let top = one - self.base.qpow(&e)?;
        let bottom = one - self.base.value();
        Ok(top / bottom)
    }

    /// `[m + x]_q^{-s}` on the principal branch.
    fn bracket_power(&self, index: &[usize], m: usize) -> Result<Complex64> {
        let b = self.bracket(m)?;
        let is_zero = b.re == 0.0 && b.im == 0.0;
        match self.int_power {
            Some(k) if k >= 0 => Ok(b.powi(k)),
            Some(_) if is_zero => Err(Error::Domain(format!(
                "[{}]_q = 0 raised to a negative power at index {index:?}",
                m as i64 + self.x.to_integer().to_i64().unwrap_or(0)
            ))),
            Some(k) => Ok(b.powi(k)),
            None if is_zero => Err(Error::Domain(format!(
                "[m + x]_q = 0 at index {index:?}"
            ))),
            None if b.im == 0.0 && b.re < 0.0 => Err(Error::BranchCut {
                index: index.to_vec(),
                value: b.to_string(),
            }),
            None => Ok((-self.s * b.ln()).exp()),
        }
    }

    fn prefactor(&self) -> Complex64 {
        (Complex64::new(1.0, 0.0) + self.base.value()).powu(self.r)
    }

    /// Bound on `sup_{m >= m0} |[m + x]_q^{-s}|`, or `None` while the
    /// brackets are not yet confined to a disc in the right half-plane.
    fn bracket_sup_from(&self, m0: usize) -> Option<f64> {
        let q = self.base.value();
        let one = Complex64::new(1.0, 0.0);
        let limit = one / (one - q);
        let rho = q.norm();
        let qx = (self.x.to_f64()? * self.base.log().re).exp();
        let delta = qx * rho.powi(m0.min(i32::MAX as usize) as i32) / (one - q).norm();
        if !(delta < limit.re) {
            return None;
        }
        let l = limit.norm();
        let (lo, hi) = (l - delta, l + delta);
        let spread = (delta / l).asin();
        let arg = limit.arg();
        let (sigma, tau) = (self.s.re, self.s.im);
        let modulus = (-sigma * lo.ln()).max(-sigma * hi.ln());
        let angle = (tau * (arg - spread)).max(tau * (arg + spread));
        Some((modulus + angle).exp())
    }

    /// Bound on the discarded tail `sum_{m >= m0}` of the single-index form.
    pub fn single_tail_bound(&self, m0: usize) -> f64 {
        if self.r == 0 {
            return if m0 == 0 { f64::INFINITY } else { 0.0 };
        }
        let rho = self.base.value().norm();
        let r = self.r as f64;
        let ratio = rho * (m0 as f64 + r) / (m0 as f64 + 1.0);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let Some(sup) = self.bracket_sup_from(m0) else {
            return f64::INFINITY;
        };
        let weight = binomial_f64(m0 as u64 + self.r as u64 - 1, m0 as u64);
        let lead = weight * rho.powi(m0.min(i32::MAX as usize) as i32);
        self.prefactor().norm() * sup * lead / (1.0 - ratio)
    }

    fn alternating_power(&self, m: usize) -> Result<Complex64> {
        let p = self.base.qpow_int(m as i64)?;
        Ok(if m % 2 == 0 { p } else { -p })
    }

    /// `[2]_q^r sum_m C(m + r - 1, m) (-q)^m [m + x]_q^{-s}`.
    pub fn single_sum(&self, ctrl: &SeriesControl) -> Result<SeriesValue> {
        if self.r == 0 {
            let v = self.bracket_power(&[], 0)?;
            return Ok(SeriesValue {
                value: v,
                tail_bound: 0.0,
                terms: 1,
            });
        }
        let mut sum = Neumaier::default();
        let mut best = f64::INFINITY;
        for m in 0..ctrl.max_terms {
            best = best.min(self.single_tail_bound(m));
            if ctrl.use_tail_bound {
                if best <= ctrl.abs_tol {
                    return Ok(SeriesValue {
                        value: sum.value() * self.prefactor(),
                        tail_bound: best,
                        terms: m,
                    });
                }
            }
            let w = binomial_f64(m as u64 + self.r as u64 - 1, m as u64);
            let term = self.alternating_power(m)? * self.bracket_power(&[m], m)? * w;
            sum.add(term);
        }
        best = best.min(self.single_tail_bound(ctrl.max_terms));
        if ctrl.use_tail_bound && best > ctrl.abs_tol {
            return Err(Error::NotConverged {
                terms: ctrl.max_terms,
                bound: best,
                tol: ctrl.abs_tol,
            });
        }
        Ok(SeriesValue {
            value: sum.value() * self.prefactor(),
            tail_bound: best,
            terms: ctrl.max_terms,
        })
    }

    /// `[2]_q^r sum_{m_1..m_r} (-q)^{m_1+..+m_r} [m_1+..+m_r + x]_q^{-s}`
    /// over every tuple with `m_1 + .. + m_r < N`, `N` chosen from the tail
    /// bound. The discarded tuples are exactly the single-index tail at `N`.
    pub fn multisum(&self, ctrl: &SeriesControl) -> Result<SeriesValue> {
        if self.r == 0 {
            return self.single_sum(ctrl);
        }
        let cap = if ctrl.use_tail_bound {
            let mut n = 1;
            loop {
                if self.single_tail_bound(n) <= ctrl.abs_tol {
                    break n;
                }
                if n >= ctrl.max_terms {
                    return Err(Error::NotConverged {
                        terms: ctrl.max_terms,
                        bound: self.single_tail_bound(n),
                        tol: ctrl.abs_tol,
                    });
                }
                n += 1;
            }
        } else {
            ctrl.max_terms
        };
        let r = self.r as usize;
        let mut idx = vec![0usize; r];
        let mut total = 0usize;
        let mut sum = Neumaier::default();
        'outer: loop {
            sum.add(self.alternating_power(total)? * self.bracket_power(&idx, total)?);
            for k in 0..r {
                idx[k] += 1;
                total += 1;
                if total < cap {
                    continue 'outer;
                }
                total -= idx[k];
                idx[k] = 0;
            }
            break;
        }
        Ok(SeriesValue {
            value: sum.value() * self.prefactor(),
            tail_bound: self.single_tail_bound(cap),
            terms: cap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn geometric_case_has_closed_value() {
        // r = 1, s = 0: [2]_q sum (-q)^m = 1
        let b = FloatBase::real(0.5).unwrap();
        let s = AlternatingSeries::new(&b, &rat(1, 1), Complex64::new(0.0, 0.0), 1);
        let v = s.single_sum(&SeriesControl::default()).unwrap();
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(v.tail_bound <= 1e-14);
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        let b = FloatBase::new(Complex64::new(0.5, 0.2)).unwrap();
        let s = AlternatingSeries::new(&b, &rat(1, 2), Complex64::new(1.5, -0.7), 2);
        let full = s.single_sum(&SeriesControl::with_tol(1e-15)).unwrap();
        for m0 in [5usize, 10, 20, 40] {
            let part = s
                .single_sum(&SeriesControl::new(m0, 0.0, false).unwrap())
                .unwrap();
            let actual = (full.value - part.value).norm();
            assert!(actual <= s.single_tail_bound(m0) + 1e-14, "m0={m0}");
        }
    }

    #[test]
    fn reported_tail_is_monotone_in_max_terms() {
        let b = FloatBase::real(0.6).unwrap();
        let s = AlternatingSeries::new(&b, &rat(1, 1), Complex64::new(2.0, 1.0), 3);
        let mut last = f64::INFINITY;
        for n in [1usize, 2, 5, 10, 20, 50, 100] {
            let v = s.single_sum(&SeriesControl::new(n, 0.0, false).unwrap()).unwrap();
            assert!(v.tail_bound <= last);
            last = v.tail_bound;
        }
    }

    #[test]
    fn not_converged_when_cap_too_small() {
        let b = FloatBase::real(0.9).unwrap();
        let s = AlternatingSeries::new(&b, &rat(1, 1), Complex64::new(-3.0, 0.0), 2);
        let err = s.single_sum(&SeriesControl::new(10, 1e-12, true).unwrap());
        assert!(matches!(err, Err(Error::NotConverged { terms: 10, .. })));
    }

    #[test]
    fn branch_cut_is_rejected() {
        // x = -1/2, real q: [-1/2]_q < 0, non-integer s
        let b = FloatBase::real(0.5).unwrap();
        let s = AlternatingSeries::new(&b, &rat(-1, 2), Complex64::new(0.5, 0.0), 1);
        let err = s.single_sum(&SeriesControl::default());
        assert!(matches!(err, Err(Error::BranchCut { ref index, .. }) if index == &vec![0]));
    }

    #[test]
    fn invalid_controls() {
        assert!(SeriesControl::new(0, 1e-10, true).is_err());
        assert!(SeriesControl::new(10, -1.0, true).is_err());
        assert!(SeriesControl::new(10, f64::NAN, true).is_err());
    }
}
