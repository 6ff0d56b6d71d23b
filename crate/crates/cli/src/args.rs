use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qeuler",
    version,
    about = "Evaluate q-Euler polynomials and zeta functions and verify their identities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GlobalArgs {
    /// Arithmetic backend [default: float]
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,

    /// q as a complex literal (`0.4+0.3i`), decimal or fraction (`1/2`) [default: 1/2]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,

    /// Exact backend: q = t^D. Defaults to the lcm of the denominators of x and y
    #[arg(long, global = true)]
    pub root_denom: Option<u32>,

    /// Series term cap [default: 5000]
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,

    /// Series tail bound target [default: 1e-14]
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Relative tolerance for float identity checks [default: 1e-9]
    #[arg(long, global = true, env = "QEULER_TOL")]
    pub tol: Option<f64>,

    /// Seed for `--sample` [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// TOML file with any of: backend, q, root_denom, max_terms, abs_tol, tol, seed
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Exact,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a single value
    #[command(subcommand)]
    Eval(EvalKind),
    /// Check an identity over a parameter grid; one JSON report per point
    Verify(VerifyArgs),
    /// Tabulate values over a parameter grid as CSV or JSON
    Table(TableArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Closed,
    Single,
    Multi,
}

#[derive(Subcommand, Debug)]
pub enum EvalKind {
    /// Higher-order q-Euler polynomial E_{n,q}^{(r)}(x)
    Qeuler {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
    },
    /// Multiple q-Euler zeta function zeta_{q,r}(s, x)
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// `single` or `multi`
        #[arg(long, value_enum, default_value_t = Method::Single)]
        method: Method,
    },
    /// Alternating sum S_{n,i}^{(r)}(a) at base q^base_mult
    Ssum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        base_mult: u32,
    },
    /// Classical Euler polynomial of order r, optionally evaluated at x
    EulerClassical {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// zeta-level symmetry in (a, b)
    #[value(alias = "thm1")]
    ZetaSymmetry,
    /// polynomial-level symmetry in (a, b)
    #[value(alias = "thm2")]
    PolySymmetry,
    /// symmetry of the convolution with S-sums in (a, b)
    #[value(alias = "thm3")]
    SsumSymmetry,
    /// zeta_{q,r}(-n, x) = E_{n,q}^{(r)}(x)
    #[value(alias = "eq5")]
    Interpolation,
    /// E_n(x + y) expanded in powers of [x]_q
    #[value(alias = "eq9")]
    Addition,
    /// two-index sum with weights q^{(k+n)x}
    #[value(alias = "eq15")]
    ShiftSum,
    /// two-index sum with weights q^{kx} and q^{-kx}
    #[value(alias = "eq16")]
    ReflectedShiftSum,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::ZetaSymmetry => "zeta-symmetry",
            Identity::PolySymmetry => "poly-symmetry",
            Identity::SsumSymmetry => "ssum-symmetry",
            Identity::Interpolation => "interpolation",
            Identity::Addition => "addition",
            Identity::ShiftSum => "shift-sum",
            Identity::ReflectedShiftSum => "reflected-shift-sum",
        }
    }
}

/// Grid axes. Integer axes take lists and inclusive ranges (`0..4,7`);
/// `x`, `y` take rationals (`0,1/2,2`); `s` takes complex literals.
#[derive(Args, Debug, Default, Clone)]
pub struct GridArgs {
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub i: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Add this amount to every right-hand side before judging
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<f64>,

    /// Check only N grid points chosen at random (see --seed)
    #[arg(long)]
    pub sample: Option<usize>,

    /// Allow even a or b
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Qeuler,
    Zeta,
    Ssum,
    EulerClassical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,

    /// Output file; standard output when omitted
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
