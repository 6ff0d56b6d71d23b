//! Symmetric identities under exchange of the odd parameters `a` and `b`.
//!
//! Each verifier evaluates one "side" as a function of `(a, b)`; the other
//! side is the same function at `(b, a)`. Sums over `j_1..j_r in [0, a-1]`
//! depend only on `T = j_1 + .. + j_r`, so they are collapsed onto `T` with
//! composition counts.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::qbasics::{binomial, q_int, q_number};
use crate::qeuler::qeuler_closed;
use crate::report::IdentityReport;
use crate::scalar::{ExactBase, FieldElem, FloatBase, QBackend, QBase, Scalar};
use crate::series::SeriesControl;
use crate::zeta::{as_negative_integer, check_argument, ZetaBackend};

/// Parameters shared by the three symmetric identities.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryParams {
    a: u32,
    b: u32,
    r: u32,
    x: BigRational,
}

impl SymmetryParams {
    /// Odd `a`, `b` and `r >= 1`.
    pub fn new(a: u32, b: u32, r: u32, x: BigRational) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if v % 2 == 0 {
                return Err(Error::InvalidParameter(format!("{name} must be odd, got {v}")));
            }
        }
        Self::new_unchecked(a, b, r, x)
    }

    /// Skips the parity check, for experiments with even `a` or `b`.
    pub fn new_unchecked(a: u32, b: u32, r: u32, x: BigRational) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParameter("a and b must be >= 1".into()));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("order r must be >= 1".into()));
        }
        Ok(SymmetryParams { a, b, r, x })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn swapped(&self) -> Self {
        SymmetryParams {
            a: self.b,
            b: self.a,
            ..self.clone()
        }
    }

    fn to_json(&self) -> serde_json::Value {
        json!({ "a": self.a, "b": self.b, "r": self.r, "x": self.x.to_string() })
    }
}

/// Number of tuples `(j_1..j_r)` with `0 <= j_l < a` and sum `T`, indexed by `T`.
pub fn composition_counts(r: u32, a: u32) -> Vec<BigInt> {
    let mut counts = vec![BigInt::one()];
    for _ in 0..r {
        let mut next = vec![BigInt::zero(); counts.len() + a as usize - 1];
        for (t, c) in counts.iter().enumerate() {
            for j in 0..a as usize {
                next[t + j] += c;
            }
        }
        counts = next;
    }
    counts
}

fn signed_counts<E: FieldElem>(r: u32, a: u32) -> Vec<E> {
    composition_counts(r, a)
        .into_iter()
        .enumerate()
        .map(|(t, c)| {
            let c = if t % 2 == 0 { c } else { -c };
            E::from_ratio(&BigRational::from_integer(c))
        })
        .collect()
}

fn check_s_sum(n: u32, i: u32, a: u32) -> Result<()> {
    if i > n {
        return Err(Error::InvalidParameter(format!("need i <= n, got i = {i}, n = {n}")));
    }
    if a == 0 {
        return Err(Error::InvalidParameter("a must be >= 1".into()));
    }
    Ok(())
}

/// `S_{n,i}^{(r)}(a) = sum_{j_1..j_r = 0}^{a-1} (-1)^T p^{(n-i+1) T} [T]_p^i`
/// with `T = j_1 + .. + j_r`, where `p` is the given base; collapsed over `T`.
pub fn s_sum<B: QBackend>(n: u32, i: u32, r: u32, a: u32, base: &B) -> Result<B::Elem> {
    check_s_sum(n, i, a)?;
    let weights = signed_counts::<B::Elem>(r, a);
    let mut terms = Vec::with_capacity(weights.len());
    for (t, w) in weights.iter().enumerate() {
        let t = t as i64;
        terms.push(
            w.times(&base.qpow_int((n - i + 1) as i64 * t)?)
                .times(&q_int(t, base)?.pow_n(i)),
        );
    }
    Ok(B::Elem::sum_all(&terms))
}

/// The same sum over all `a^r` tuples, term by term.
pub fn s_sum_direct<B: QBackend>(n: u32, i: u32, r: u32, a: u32, base: &B) -> Result<B::Elem> {
    check_s_sum(n, i, a)?;
    let mut terms = Vec::new();
    let mut j = vec![0u32; r as usize];
    loop {
        let t: i64 = j.iter().map(|&v| v as i64).sum();
        let sign = if t % 2 == 0 { B::Elem::one() } else { B::Elem::one().negated() };
        terms.push(
            sign.times(&base.qpow_int((n - i + 1) as i64 * t)?)
                .times(&q_int(t, base)?.pow_n(i)),
        );
        let Some(pos) = j.iter().position(|&v| v + 1 < a) else {
            break;
        };
        j[pos] += 1;
        j[..pos].iter_mut().for_each(|v| *v = 0);
    }
    Ok(B::Elem::sum_all(&terms))
}

/// A tuple in `[0, a-1]^r` with the given sum, for error messages.
fn tuple_with_sum(mut t: u32, r: u32, a: u32) -> Vec<u32> {
    (0..r)
        .map(|_| {
            let j = t.min(a - 1);
            t -= j;
            j
        })
        .collect()
}

/// Argument `b x + (b/a) T` of the zeta and polynomial terms.
fn shifted_argument(x: &BigRational, a: u32, b: u32, t: usize) -> BigRational {
    x * BigInt::from(b) + BigRational::new(BigInt::from(b as u64 * t as u64), BigInt::from(a))
}

/// `[2]_{q^b}^r [b]_q^s sum_j (-1)^T q^{bT} zeta_{q^a,r}(s, b x + (b/a) T)`.
fn zeta_symmetry_side<B: ZetaBackend>(
    a: u32,
    b: u32,
    r: u32,
    x: &BigRational,
    s: &B::Exponent,
    base: &B,
    ctrl: &SeriesControl,
) -> Result<B::Elem> {
    let base_a = base.rebase(a);
    let weights = signed_counts::<B::Elem>(r, a);
    let mut terms = Vec::with_capacity(weights.len());
    for (t, w) in weights.iter().enumerate() {
        let y = shifted_argument(x, a, b, t);
        check_argument(&y).map_err(|_| {
            Error::Domain(format!(
                "zeta argument {y} is a nonpositive integer at j = {:?}",
                tuple_with_sum(t as u32, r, a)
            ))
        })?;
        let z = base_a.zeta_value(s, r, &y, ctrl)?;
        terms.push(w.times(&base.qpow_int(b as i64 * t as i64)?).times(&z));
    }
    let two = q_int(2, &base.rebase(b))?.pow_n(r);
    let scale = base.elem_pow(&q_int(b as i64, base)?, s)?;
    Ok(two.times(&scale).times(&B::Elem::sum_all(&terms)))
}

/// Both sides of the zeta-level symmetry.
pub fn zeta_symmetry_sides<B: ZetaBackend>(
    p: &SymmetryParams,
    s: &B::Exponent,
    base: &B,
    ctrl: &SeriesControl,
) -> Result<(B::Elem, B::Elem)> {
    let lhs = zeta_symmetry_side(p.a, p.b, p.r, &p.x, s, base, ctrl)?;
    let rhs = zeta_symmetry_side(p.b, p.a, p.r, &p.x, s, base, ctrl)?;
    Ok((lhs, rhs))
}

/// `[2]_{q^b}^r [a]_q^n sum_j (-1)^T q^{bT} E_{n,q^a}^{(r)}(b x + (b/a) T)`.
fn poly_symmetry_side<B: QBackend>(a: u32, b: u32, r: u32, x: &BigRational, n: u32, base: &B) -> Result<B::Elem> {
    let base_a = base.rebase(a);
    let weights = signed_counts::<B::Elem>(r, a);
    let mut terms = Vec::with_capacity(weights.len());
    for (t, w) in weights.iter().enumerate() {
        let y = shifted_argument(x, a, b, t);
        let e = qeuler_closed(n, r, &y, &base_a)?;
        terms.push(w.times(&base.qpow_int(b as i64 * t as i64)?).times(&e));
    }
    let two = q_int(2, &base.rebase(b))?.pow_n(r);
    let scale = q_int(a as i64, base)?.pow_n(n);
    Ok(two.times(&scale).times(&B::Elem::sum_all(&terms)))
}

/// Both sides of the polynomial-level symmetry.
pub fn poly_symmetry_sides<B: QBackend>(p: &SymmetryParams, n: u32, base: &B) -> Result<(B::Elem, B::Elem)> {
    let lhs = poly_symmetry_side(p.a, p.b, p.r, &p.x, n, base)?;
    let rhs = poly_symmetry_side(p.b, p.a, p.r, &p.x, n, base)?;
    Ok((lhs, rhs))
}

/// `[2]_{q^b}^r sum_i C(n,i) [a]_q^{n-i} [b]_q^i E_{n-i,q^a}^{(r)}(b x) S_{n,i,q^b}^{(r)}(a)`.
fn ssum_symmetry_side<B: QBackend>(a: u32, b: u32, r: u32, x: &BigRational, n: u32, base: &B) -> Result<B::Elem> {
    let base_a = base.rebase(a);
    let base_b = base.rebase(b);
    let bracket_a = q_int(a as i64, base)?;
    let bracket_b = q_int(b as i64, base)?;
    let bx = x * BigInt::from(b);
    let mut terms = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let c = B::Elem::from_ratio(&BigRational::from_integer(binomial(n as u64, i as u64)));
        terms.push(
            c.times(&bracket_a.pow_n(n - i))
                .times(&bracket_b.pow_n(i))
                .times(&qeuler_closed(n - i, r, &bx, &base_a)?)
                .times(&s_sum(n, i, r, a, &base_b)?),
        );
    }
    let two = q_number(&BigRational::from_integer(2.into()), &base_b)?.pow_n(r);
    Ok(two.times(&B::Elem::sum_all(&terms)))
}

/// Both sides of the convolution-level symmetry.
pub fn ssum_symmetry_sides<B: QBackend>(p: &SymmetryParams, n: u32, base: &B) -> Result<(B::Elem, B::Elem)> {
    let lhs = ssum_symmetry_side(p.a, p.b, p.r, &p.x, n, base)?;
    let rhs = ssum_symmetry_side(p.b, p.a, p.r, &p.x, n, base)?;
    Ok((lhs, rhs))
}

/// Zeta-level report. The exact backend accepts only `s = 0, -1, -2, ...`.
pub fn zeta_symmetry_report(
    p: &SymmetryParams,
    s: Complex64,
    q: &QBase,
    ctrl: &SeriesControl,
    tol: f64,
) -> Result<IdentityReport> {
    let (lhs, rhs): (Scalar, Scalar) = match q {
        QBase::Float(b) => {
            let (l, r) = zeta_symmetry_sides::<FloatBase>(p, &s, b, ctrl)?;
            (l.into(), r.into())
        }
        QBase::Exact(b) => {
            let n = as_negative_integer(s).ok_or_else(|| Error::Unsupported {
                backend: "exact",
                what: format!("zeta at s = {s} (only s = 0, -1, -2, ...)"),
            })?;
            let (l, r) = zeta_symmetry_sides::<ExactBase>(p, &-(n as i64), b, ctrl)?;
            (l.into(), r.into())
        }
    };
    let mut params = p.to_json();
    params["s"] = crate::scalar::complex_json(s);
    params["q"] = q.to_json();
    params["max_terms"] = json!(ctrl.max_terms);
    params["abs_tol"] = json!(ctrl.abs_tol);
    Ok(IdentityReport::new("zeta-symmetry", params, lhs, rhs, tol))
}

fn polynomial_report(
    identity: &str,
    p: &SymmetryParams,
    n: u32,
    q: &QBase,
    tol: f64,
    sides: fn(&SymmetryParams, u32, &QBase) -> Result<(Scalar, Scalar)>,
) -> Result<IdentityReport> {
    let (lhs, rhs) = sides(p, n, q)?;
    let mut params = p.to_json();
    params["n"] = json!(n);
    params["q"] = q.to_json();
    Ok(IdentityReport::new(identity, params, lhs, rhs, tol))
}

/// Polynomial-level report.
pub fn poly_symmetry_report(p: &SymmetryParams, n: u32, q: &QBase, tol: f64) -> Result<IdentityReport> {
    polynomial_report("poly-symmetry", p, n, q, tol, |p, n, q| match q {
        QBase::Float(b) => poly_symmetry_sides(p, n, b).map(|(l, r)| (l.into(), r.into())),
        QBase::Exact(b) => poly_symmetry_sides(p, n, b).map(|(l, r)| (l.into(), r.into())),
    })
}

/// Convolution-level report.
pub fn ssum_symmetry_report(p: &SymmetryParams, n: u32, q: &QBase, tol: f64) -> Result<IdentityReport> {
    polynomial_report("ssum-symmetry", p, n, q, tol, |p, n, q| match q {
        QBase::Float(b) => ssum_symmetry_sides(p, n, b).map(|(l, r)| (l.into(), r.into())),
        QBase::Exact(b) => ssum_symmetry_sides(p, n, b).map(|(l, r)| (l.into(), r.into())),
    })
}

/// Dynamic S-sum at base `q^base_mult`.
pub fn s_sum_value(n: u32, i: u32, r: u32, a: u32, q: &QBase) -> Result<Scalar> {
    crate::with_backend!(q, |b| s_sum(n, i, r, a, b))
}
