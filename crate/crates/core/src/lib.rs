//! Higher-order q-Euler polynomials, multiple q-Euler zeta functions and
//! their symmetric identities, over an exact rational-function backend and a
//! complex floating-point backend.

pub mod classical;
pub mod error;
pub mod poly;
pub mod qbasics;
pub mod qeuler;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod series;
pub mod symmetry;
pub mod zeta;

pub use error::{Error, Result};
pub use ratfunc::RatFunc;
pub use report::{IdentityReport, REPORT_SCHEMA};
pub use scalar::{approx_eq, ExactBase, FieldElem, FloatBase, QBackend, QBase, Scalar};
pub use series::{SeriesControl, SeriesValue};
pub use symmetry::SymmetryParams;

pub use num_complex::Complex64;
pub use num_rational::BigRational;
