//! Scalar backends: complex floating point and exact rational functions.
//!
//! Algorithms are written once against [`QBackend`] and run on either
//! [`FloatBase`] (values are `Complex64`) or [`ExactBase`] (values are
//! [`RatFunc`] in `t` with `q = t^D`). [`Scalar`] and [`QBase`] are the
//! dynamically tagged forms used at API boundaries such as the CLI and
//! identity reports.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

/// Field operations shared by both backends.
pub trait FieldElem: Clone + fmt::Debug + PartialEq + Send + Sync + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(v: &BigRational) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_div(&self, rhs: &Self) -> Result<Self>;
    /// Integer power with `0^0 = 1`.
    fn pow_n(&self, n: u32) -> Self;
    fn is_exact_zero(&self) -> bool;

    fn sum_all<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        terms.into_iter().fold(Self::zero(), |acc, x| acc.plus(x))
    }
}

impl FieldElem for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(v: &BigRational) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.re == 0.0 && rhs.im == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn pow_n(&self, n: u32) -> Self {
        self.powu(n)
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl FieldElem for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::from_int(v)
    }
    fn from_ratio(v: &BigRational) -> Self {
        RatFunc::from_rational(v.clone())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn pow_n(&self, n: u32) -> Self {
        self.pow(n)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn sum_all<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        RatFunc::sum_of(terms)
    }
}

/// A value of `q` (possibly rebased to `q^a`) together with its arithmetic.
pub trait QBackend: Clone + fmt::Debug + Send + Sync {
    type Elem: FieldElem;
    const NAME: &'static str;

    /// `base^e` for a rational exponent, where `base` is the current
    /// (possibly rebased) value of q.
    fn qpow(&self, e: &BigRational) -> Result<Self::Elem>;

    /// The base `q^a` in place of `q`.
    fn rebase(&self, a: u32) -> Self;

    fn approx_eq(a: &Self::Elem, b: &Self::Elem, tol: f64) -> bool;

    fn into_scalar(e: Self::Elem) -> Scalar;

    fn qpow_int(&self, e: i64) -> Result<Self::Elem> {
        self.qpow(&BigRational::from_integer(BigInt::from(e)))
    }
}

/// Complex floating-point q with `|q| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatBase {
    q: Complex64,
    scale: u32,
}

impl FloatBase {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.norm() < 1.0) {
            return Err(Error::Domain(format!("|q| must be < 1, got |{q}| = {}", q.norm())));
        }
        Ok(FloatBase { q, scale: 1 })
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// The underlying (un-rebased) q.
    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// Multiplier `a` such that this base is `q^a`.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Current base value `q^a`.
    pub fn value(&self) -> Complex64 {
        self.q.powu(self.scale)
    }

    /// Principal logarithm of the current base, `a * Log q`.
    pub fn log(&self) -> Complex64 {
        self.q.ln() * self.scale as f64
    }
}

impl QBackend for FloatBase {
    type Elem = Complex64;
    const NAME: &'static str = "float";

    fn qpow(&self, e: &BigRational) -> Result<Complex64> {
        let e = e * BigInt::from(self.scale);
        let zero_base = self.q.re == 0.0 && self.q.im == 0.0;
        if zero_base {
            return match e.signum() {
                s if s.is_zero() => Ok(<Complex64 as FieldElem>::one()),
                s if s.is_positive() => Ok(<Complex64 as FieldElem>::zero()),
                _ => Err(Error::Domain(format!("0^{e} is undefined"))),
            };
        }
        if e.is_integer() {
            if let Some(n) = e.to_integer().to_i32() {
                return Ok(self.q.powi(n));
            }
        }
        let ef = e.to_f64().unwrap_or(f64::NAN);
        Ok((self.q.ln() * ef).exp())
    }

    fn rebase(&self, a: u32) -> Self {
        FloatBase {
            q: self.q,
            scale: self.scale * a,
        }
    }

    fn approx_eq(a: &Complex64, b: &Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
    }

    fn into_scalar(e: Complex64) -> Scalar {
        Scalar::Float(e)
    }
}

/// Exact q as a power of the indeterminate `t`: `q = t^D`.
///
/// The optional rational value of q is only used when evaluating results;
/// all arithmetic is formal in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactBase {
    q: Option<BigRational>,
    root_denom: u32,
    t_per_q: u32,
}

impl ExactBase {
    /// Numeric exact q with `0 < q < 1` and root denominator `D >= 1`.
    pub fn new(q: BigRational, root_denom: u32) -> Result<Self> {
        if root_denom == 0 {
            return Err(Error::InvalidParameter("root denominator D must be >= 1".into()));
        }
        if !(q.is_positive() && q < BigRational::one()) {
            return Err(Error::Domain(format!("exact q must satisfy 0 < q < 1, got {q}")));
        }
        Ok(ExactBase {
            q: Some(q),
            root_denom,
            t_per_q: root_denom,
        })
    }

    /// Purely formal q = t^D with no numeric value attached.
    pub fn formal(root_denom: u32) -> Result<Self> {
        if root_denom == 0 {
            return Err(Error::InvalidParameter("root denominator D must be >= 1".into()));
        }
        Ok(ExactBase {
            q: None,
            root_denom,
            t_per_q: root_denom,
        })
    }

    pub fn q(&self) -> Option<&BigRational> {
        self.q.as_ref()
    }

    pub fn root_denom(&self) -> u32 {
        self.root_denom
    }

    /// Exponent of `t` equal to the current base.
    pub fn t_per_q(&self) -> u32 {
        self.t_per_q
    }

    /// `t0 = q^(1/D)` when it is rational.
    pub fn t_value(&self) -> Option<BigRational> {
        let q = self.q.as_ref()?;
        let d = self.root_denom;
        let n = q.numer().nth_root(d);
        let m = q.denom().nth_root(d);
        let back = BigRational::new(num_traits::pow(n.clone(), d as usize), num_traits::pow(m.clone(), d as usize));
        (&back == q).then(|| BigRational::new(n, m))
    }

    /// `t0 = q^(1/D)` as a float.
    pub fn t_value_f64(&self) -> Option<f64> {
        let q = self.q.as_ref()?.to_f64()?;
        Some(q.powf(1.0 / self.root_denom as f64))
    }

    /// Evaluate an exact result at this base's numeric q.
    pub fn evaluate(&self, value: &RatFunc) -> Result<Complex64> {
        if let Some(t0) = self.t_value() {
            let v = value.eval_rational(&t0)?;
            return Ok(Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0));
        }
        let t0 = self
            .t_value_f64()
            .ok_or_else(|| Error::InvalidParameter("formal base has no numeric q".into()))?;
        let v = value.eval_complex(Complex64::new(t0, 0.0));
        // drop negative zeros
        Ok(Complex64::new(v.re + 0.0, v.im + 0.0))
    }
}

impl QBackend for ExactBase {
    type Elem = RatFunc;
    const NAME: &'static str = "exact";

    fn qpow(&self, e: &BigRational) -> Result<RatFunc> {
        let k = e * BigInt::from(self.t_per_q);
        if !k.is_integer() {
            return Err(Error::ExponentNotRepresentable {
                exponent: e.to_string(),
                scale: self.t_per_q,
            });
        }
        let k = k
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidParameter(format!("exponent {e} too large")))?;
        Ok(RatFunc::t_power(k))
    }

    fn rebase(&self, a: u32) -> Self {
        ExactBase {
            q: self.q.clone(),
            root_denom: self.root_denom,
            t_per_q: self.t_per_q * a,
        }
    }

    fn approx_eq(a: &RatFunc, b: &RatFunc, _tol: f64) -> bool {
        a == b
    }

    fn into_scalar(e: RatFunc) -> Scalar {
        Scalar::Exact(e)
    }
}

/// Dynamically tagged base.
#[derive(Clone, Debug, PartialEq)]
pub enum QBase {
    Float(FloatBase),
    Exact(ExactBase),
}

/// Run a backend-generic expression on whichever base is active, wrapping
/// the result into a [`Scalar`].
#[macro_export]
macro_rules! with_backend {
    ($base:expr, |$b:ident| $body:expr) => {
        match $base {
            $crate::scalar::QBase::Float($b) => ($body).map($crate::scalar::Scalar::from),
            $crate::scalar::QBase::Exact($b) => ($body).map($crate::scalar::Scalar::from),
        }
    };
}

impl QBase {
    pub fn backend_name(&self) -> &'static str {
        match self {
            QBase::Float(_) => FloatBase::NAME,
            QBase::Exact(_) => ExactBase::NAME,
        }
    }

    pub fn qpow(&self, e: &BigRational) -> Result<Scalar> {
        with_backend!(self, |b| b.qpow(e))
    }

    pub fn rebase(&self, a: u32) -> QBase {
        match self {
            QBase::Float(b) => QBase::Float(b.rebase(a)),
            QBase::Exact(b) => QBase::Exact(b.rebase(a)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            QBase::Float(b) => json!({
                "backend": "float",
                "q": complex_json(b.q()),
                "scale": b.scale(),
            }),
            QBase::Exact(b) => json!({
                "backend": "exact",
                "q": b.q().map(|q| q.to_string()),
                "root_denom": b.root_denom(),
                "t_per_q": b.t_per_q(),
            }),
        }
    }
}

impl From<FloatBase> for QBase {
    fn from(b: FloatBase) -> Self {
        QBase::Float(b)
    }
}

impl From<ExactBase> for QBase {
    fn from(b: ExactBase) -> Self {
        QBase::Exact(b)
    }
}

/// A value under one of the two backends.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Float(Complex64),
    Exact(RatFunc),
}

impl From<Complex64> for Scalar {
    fn from(v: Complex64) -> Self {
        Scalar::Float(v)
    }
}

impl From<RatFunc> for Scalar {
    fn from(v: RatFunc) -> Self {
        Scalar::Exact(v)
    }
}

impl Scalar {
    pub fn backend_name(&self) -> &'static str {
        match self {
            Scalar::Float(_) => FloatBase::NAME,
            Scalar::Exact(_) => ExactBase::NAME,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::BackendMismatch(self.backend_name(), other.backend_name())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a + b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a - b)),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a - b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a * b)),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a * b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a.try_div(b).map(Scalar::Float),
            (Scalar::Exact(a), Scalar::Exact(b)) => a.checked_div(b).map(Scalar::Exact),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Float(a) => Scalar::Float(-a),
            Scalar::Exact(a) => Scalar::Exact(a.neg_ref()),
        }
    }

    pub fn as_float(&self) -> Option<Complex64> {
        match self {
            Scalar::Float(v) => Some(*v),
            Scalar::Exact(_) => None,
        }
    }

    pub fn as_exact(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Exact(v) => Some(v),
            Scalar::Float(_) => None,
        }
    }

    /// Exact value at `t = t0`.
    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational> {
        match self {
            Scalar::Exact(v) => v.eval_rational(t0),
            Scalar::Float(_) => Err(Error::Unsupported {
                backend: "float",
                what: "eval_at".into(),
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Float(v) => complex_json(*v),
            Scalar::Exact(v) => json!({ "exact": v.canonical_string() }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Float(v) if v.im == 0.0 => write!(f, "{}", v.re),
            Scalar::Float(v) => write!(f, "{}{:+}i", v.re, v.im),
            Scalar::Exact(v) => write!(f, "{v}"),
        }
    }
}

/// `{"re": .., "im": ..}` with shortest round-trip decimals.
pub fn complex_json(v: Complex64) -> serde_json::Value {
    json!({ "re": v.re, "im": v.im })
}

/// Equality up to `tol * max(1, |a|, |b|)` on floats; exact equality on
/// rational functions. Mixed backends compare unequal.
pub fn approx_eq(a: &Scalar, b: &Scalar, tol: f64) -> bool {
    match (a, b) {
        (Scalar::Float(x), Scalar::Float(y)) => FloatBase::approx_eq(x, y, tol),
        (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
        _ => false,
    }
}

/// Exact value of an exact scalar at `t = t0`.
pub fn eval_at(a: &Scalar, t0: &BigRational) -> Result<BigRational> {
    a.eval_at(t0)
}
