use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent not representable: {exponent} times t-scale {scale} is not an integer")]
    ExponentNotRepresentable { exponent: String, scale: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at evaluation point t = {0}")]
    Pole(String),

    #[error("series not converged after {terms} terms: tail bound {bound:e} exceeds tolerance {tol:e}")]
    NotConverged { terms: usize, bound: f64, tol: f64 },

    #[error("branch cut hit at index {index:?}: bracket value {value}")]
    BranchCut { index: Vec<usize>, value: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{backend} backend does not support {what}")]
    Unsupported { backend: &'static str, what: String },
}

impl Error {
    /// Short machine-readable tag used in structured output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BackendMismatch(..) => "backend_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::ExponentNotRepresentable { .. } => "exponent_not_representable",
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::NotConverged { .. } => "not_converged",
            Error::BranchCut { .. } => "branch_cut",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Unsupported { .. } => "unsupported",
        }
    }
}
