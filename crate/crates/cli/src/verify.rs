use std::io::Write;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use qeuler_core::qeuler::{shift_sum_report, reflected_shift_sum_report, qeuler_addition};
use qeuler_core::scalar::complex_json;
use qeuler_core::symmetry::{zeta_symmetry_report, poly_symmetry_report, ssum_symmetry_report};
use qeuler_core::zeta::interpolation_check;
use qeuler_core::{IdentityReport, QBase, SymmetryParams};

use crate::args::{Identity, VerifyArgs};
use crate::config::Context;
use crate::error::CliError;
use crate::grid::{self, Axis, Point};

pub const SUMMARY_SCHEMA: &str = "qeuler.summary/v1";

pub fn axes(identity: Identity) -> &'static [Axis] {
    match identity {
        Identity::ZetaSymmetry => &[Axis::A, Axis::B, Axis::R, Axis::X, Axis::S],
        Identity::PolySymmetry | Identity::SsumSymmetry => &[Axis::A, Axis::B, Axis::N, Axis::R, Axis::X],
        Identity::Interpolation => &[Axis::N, Axis::R, Axis::X],
        Identity::Addition => &[Axis::N, Axis::R, Axis::X, Axis::Y],
        Identity::ShiftSum | Identity::ReflectedShiftSum => &[Axis::M, Axis::N, Axis::R, Axis::X, Axis::Y],
    }
}

fn point_json(p: &Point, axes: &[Axis]) -> Value {
    let mut out = serde_json::Map::new();
    for &axis in axes {
        let v = match axis {
            Axis::A => json!(p.a),
            Axis::B => json!(p.b),
            Axis::M => json!(p.m),
            Axis::N => json!(p.n),
            Axis::I => json!(p.i),
            Axis::R => json!(p.r),
            Axis::X => json!(p.x.to_string()),
            Axis::Y => json!(p.y.to_string()),
            Axis::S => complex_json(p.s),
        };
        out.insert(axis.name().to_string(), v);
    }
    Value::Object(out)
}

fn check_point(identity: Identity, p: &Point, base: &QBase, ctx: &Context, unchecked: bool) -> Result<IdentityReport, CliError> {
    let tol = ctx.report_tol();
    let sym = || {
        if unchecked {
            SymmetryParams::new_unchecked(p.a, p.b, p.r, p.x.clone())
        } else {
            SymmetryParams::new(p.a, p.b, p.r, p.x.clone())
        }
    };
    let report = match identity {
        Identity::ZetaSymmetry => zeta_symmetry_report(&sym()?, p.s, base, &ctx.ctrl, tol)?,
        Identity::PolySymmetry => poly_symmetry_report(&sym()?, p.n, base, tol)?,
        Identity::SsumSymmetry => ssum_symmetry_report(&sym()?, p.n, base, tol)?,
        Identity::Interpolation => interpolation_check(p.n, p.r, &p.x, base, &ctx.ctrl, tol)?,
        Identity::Addition => qeuler_addition(p.n, p.r, &p.x, &p.y, base, tol)?,
        Identity::ShiftSum => shift_sum_report(p.m, p.n, p.r, &p.x, &p.y, base, tol)?,
        Identity::ReflectedShiftSum => reflected_shift_sum_report(p.m, p.n, p.r, &p.x, &p.y, base, tol)?,
    };
    Ok(report)
}

/// Emit one line per grid point and a summary; returns the exit code.
pub fn run(ctx: &Context, args: &VerifyArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let axes = axes(args.identity);
    let mut points = grid::build(&args.grid, axes)?;
    if let Some(k) = args.sample {
        points = grid::sample(points, k, ctx.seed);
    }
    let rationals: Vec<&BigRational> = points.iter().flat_map(|p| [&p.x, &p.y]).collect();
    let base = ctx.base(rationals)?;

    let results: Vec<Result<IdentityReport, CliError>> = points
        .par_iter()
        .map(|p| {
            let rep = check_point(args.identity, p, &base, ctx, args.unchecked)?;
            Ok(match args.perturb {
                Some(d) => rep.perturbed(d),
                None => rep,
            })
        })
        .collect();

    let (mut passed, mut failed, mut errors) = (0usize, 0usize, 0usize);
    let mut max_diff: Option<f64> = None;
    for (p, res) in points.iter().zip(&results) {
        let line = match res {
            Ok(rep) => {
                if rep.pass {
                    passed += 1;
                } else {
                    failed += 1;
                }
                if let Some(d) = rep.abs_diff {
                    max_diff = Some(max_diff.map_or(d, |m: f64| m.max(d)));
                }
                rep.to_json()
            }
            Err(e) => {
                errors += 1;
                let mut v = e.to_json();
                v["identity"] = json!(args.identity.name());
                v["params"] = point_json(p, axes);
                v
            }
        };
        writeln!(out, "{line}")?;
    }
    let summary = json!({
        "schema": SUMMARY_SCHEMA,
        "identity": args.identity.name(),
        "backend": base.backend_name(),
        "q": base.to_json(),
        "points": points.len(),
        "passed": passed,
        "failed": failed,
        "errors": errors,
        "max_abs_diff": max_diff,
        "perturb": args.perturb,
        "pass": failed == 0 && errors == 0,
    });
    writeln!(out, "{summary}")?;
    Ok(if errors > 0 {
        2
    } else if failed > 0 {
        1
    } else {
        0
    })
}
