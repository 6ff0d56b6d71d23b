use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;

use qeuler_core::{ExactBase, FloatBase, QBase, SeriesControl};

use crate::args::{Backend, GlobalArgs};
use crate::error::CliError;
use crate::parse::{parse_complex, parse_rational};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_Q: &str = "1/2";

/// Settings readable from a `--config` TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub backend: Option<Backend>,
    pub q: Option<String>,
    pub root_denom: Option<u32>,
    pub max_terms: Option<usize>,
    pub abs_tol: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Resolved settings: command-line flags (or `QEULER_TOL`) over the config
/// file over built-in defaults.
#[derive(Debug, Clone)]
pub struct Context {
    pub backend: Backend,
    pub q: String,
    pub root_denom: Option<u32>,
    pub ctrl: SeriesControl,
    pub tol: f64,
    pub seed: u64,
}

impl Context {
    pub fn resolve(g: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &g.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let defaults = SeriesControl::default();
        let ctrl = SeriesControl::new(
            g.max_terms.or(file.max_terms).unwrap_or(defaults.max_terms),
            g.abs_tol.or(file.abs_tol).unwrap_or(defaults.abs_tol),
            true,
        )?;
        let tol = g.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(CliError::Usage(format!("tolerance must be finite and >= 0, got {tol}")));
        }
        Ok(Context {
            backend: g.backend.or(file.backend).unwrap_or(Backend::Float),
            q: g.q.clone().or(file.q).unwrap_or_else(|| DEFAULT_Q.to_string()),
            root_denom: g.root_denom.or(file.root_denom),
            ctrl,
            tol,
            seed: g.seed.or(file.seed).unwrap_or(0),
        })
    }

    /// Tolerance recorded in reports; exact verdicts do not use one.
    pub fn report_tol(&self) -> f64 {
        match self.backend {
            Backend::Float => self.tol,
            Backend::Exact => 0.0,
        }
    }

    /// The base for a computation whose rational arguments are `args`.
    pub fn base<'a>(&self, args: impl IntoIterator<Item = &'a BigRational>) -> Result<QBase, CliError> {
        match self.backend {
            Backend::Float => Ok(QBase::Float(FloatBase::new(parse_complex(&self.q)?)?)),
            Backend::Exact => {
                let q = parse_rational(&self.q)
                    .map_err(|_| CliError::Usage(format!("exact backend needs a rational q, got {:?}", self.q)))?;
                let d = match self.root_denom {
                    Some(d) => d,
                    None => auto_root_denom(args)?,
                };
                Ok(QBase::Exact(ExactBase::new(q, d)?))
            }
        }
    }
}

/// Least common multiple of the denominators.
pub fn auto_root_denom<'a>(args: impl IntoIterator<Item = &'a BigRational>) -> Result<u32, CliError> {
    let l = args
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    l.to_u32()
        .ok_or_else(|| CliError::Usage(format!("root denominator {l} is too large")))
}
