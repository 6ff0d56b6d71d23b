use serde_json::{json, Value};

use qeuler_core::classical::euler_poly;
use qeuler_core::qeuler::{qeuler, qeuler_multisum, qeuler_single_sum};
use qeuler_core::scalar::complex_json;
use qeuler_core::symmetry::s_sum_value;
use qeuler_core::zeta::{zeta, zeta_multisum, zeta_single_sum};
use qeuler_core::{QBase, Scalar, SeriesValue};

use crate::args::{EvalKind, Method};
use crate::config::Context;
use crate::error::CliError;
use crate::parse::{parse_complex, parse_rational};

pub const VALUE_SCHEMA: &str = "qeuler.value/v1";

/// The value at the numeric q: a fraction when `q^(1/D)` is rational.
pub fn at_q(v: &Scalar, base: &QBase) -> Value {
    match (v, base) {
        (Scalar::Exact(f), QBase::Exact(b)) => match b.t_value() {
            Some(t0) => f.eval_rational(&t0).map(|r| json!(r.to_string())).unwrap_or(Value::Null),
            None => b.evaluate(f).map(complex_json).unwrap_or(Value::Null),
        },
        _ => Value::Null,
    }
}

fn float_only(base: &QBase, what: &str) -> Result<qeuler_core::FloatBase, CliError> {
    match base {
        QBase::Float(b) => Ok(b.clone()),
        QBase::Exact(_) => Err(CliError::Usage(format!("{what} needs the float backend"))),
    }
}

fn series_json(v: SeriesValue) -> (Scalar, Value) {
    (Scalar::Float(v.value), json!({ "tail_bound": v.tail_bound, "terms": v.terms }))
}

pub fn run(ctx: &Context, kind: &EvalKind) -> Result<Value, CliError> {
    let (name, params, value, base, extra) = match kind {
        EvalKind::Qeuler { n, r, x, method } => {
            let x = parse_rational(x)?;
            let base = ctx.base([&x])?;
            let (v, extra) = match method {
                Method::Closed => (qeuler(*n, *r, &x, &base)?, Value::Null),
                Method::Single => series_json(qeuler_single_sum(*n, *r, &x, &float_only(&base, "--method single")?, &ctx.ctrl)?),
                Method::Multi => series_json(qeuler_multisum(*n, *r, &x, &float_only(&base, "--method multi")?, &ctx.ctrl)?),
            };
            let params = json!({ "n": n, "r": r, "x": x.to_string(), "method": format!("{method:?}").to_lowercase() });
            ("qeuler", params, v, Some(base), extra)
        }
        EvalKind::Zeta { s, r, x, method } => {
            let s = parse_complex(s)?;
            let x = parse_rational(x)?;
            let base = ctx.base([&x])?;
            let (v, extra) = match (method, &base) {
                (Method::Closed, _) => return Err(CliError::Usage("zeta has no closed form; use single or multi".into())),
                (Method::Single, QBase::Float(b)) => series_json(zeta_single_sum(s, *r, &x, b, &ctx.ctrl)?),
                (Method::Single, QBase::Exact(_)) => (zeta(s, *r, &x, &base, &ctx.ctrl)?, Value::Null),
                (Method::Multi, _) => series_json(zeta_multisum(s, *r, &x, &float_only(&base, "--method multi")?, &ctx.ctrl)?),
            };
            let params = json!({ "s": complex_json(s), "r": r, "x": x.to_string(), "method": format!("{method:?}").to_lowercase() });
            ("zeta", params, v, Some(base), extra)
        }
        EvalKind::Ssum { n, i, r, a, base_mult } => {
            if *base_mult == 0 {
                return Err(CliError::Usage("--base-mult must be >= 1".into()));
            }
            let base = ctx.base([])?;
            let v = s_sum_value(*n, *i, *r, *a, &base.rebase(*base_mult))?;
            let params = json!({ "n": n, "i": i, "r": r, "a": a, "base_mult": base_mult });
            ("ssum", params, v, Some(base), Value::Null)
        }
        EvalKind::EulerClassical { n, r, x } => {
            let p = euler_poly(*n as usize, *r);
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            let mut out = json!({
                "schema": VALUE_SCHEMA,
                "kind": "euler-classical",
                "params": { "n": n, "r": r },
                "polynomial": p.to_string(),
                "coefficients": coeffs,
            });
            if let Some(x) = x {
                let x = parse_rational(x)?;
                out["params"]["x"] = json!(x.to_string());
                out["value"] = json!(p.eval(&x).to_string());
            }
            return Ok(out);
        }
    };
    let mut out = json!({
        "schema": VALUE_SCHEMA,
        "kind": name,
        "backend": value.backend_name(),
        "params": params,
        "value": value.to_json(),
    });
    if let Some(base) = base {
        out["params"]["q"] = base.to_json();
        if matches!(value, Scalar::Exact(_)) {
            out["at_q"] = at_q(&value, &base);
        }
    }
    if !extra.is_null() {
        out["series"] = extra;
        out["params"]["max_terms"] = json!(ctx.ctrl.max_terms);
        out["params"]["abs_tol"] = json!(ctx.ctrl.abs_tol);
    }
    Ok(out)
}
