use std::io::Write;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use qeuler_core::classical::euler_poly;
use qeuler_core::qeuler::qeuler;
use qeuler_core::symmetry::s_sum_value;
use qeuler_core::zeta::zeta;
use qeuler_core::{QBase, Scalar};

use crate::args::{Format, TableArgs, TableKind};
use crate::config::Context;
use crate::error::CliError;
use crate::eval::at_q;
use crate::grid::{self, Axis, Point};

pub const TABLE_SCHEMA: &str = "qeuler.table/v1";

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u32),
    Num(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            // shortest representation that reads back to the same f64
            Cell::Num(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json!(v),
        }
    }
}

fn axes(kind: TableKind) -> &'static [Axis] {
    match kind {
        TableKind::Qeuler | TableKind::EulerClassical => &[Axis::N, Axis::R, Axis::X],
        TableKind::Zeta => &[Axis::S, Axis::R, Axis::X],
        TableKind::Ssum => &[Axis::N, Axis::I, Axis::R, Axis::A, Axis::B],
    }
}

fn kind_name(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Qeuler => "qeuler",
        TableKind::Zeta => "zeta",
        TableKind::Ssum => "ssum",
        TableKind::EulerClassical => "euler-classical",
    }
}

fn columns(kind: TableKind, base: Option<&QBase>) -> Vec<&'static str> {
    let mut cols = match base {
        Some(QBase::Float(_)) => vec!["backend", "q_re", "q_im"],
        Some(QBase::Exact(_)) => vec!["backend", "q", "root_denom"],
        None => vec![],
    };
    cols.extend(match kind {
        TableKind::Qeuler | TableKind::EulerClassical => vec!["n", "r", "x"],
        TableKind::Zeta => vec!["s_re", "s_im", "r", "x"],
        TableKind::Ssum => vec!["n", "i", "r", "a", "base_mult"],
    });
    cols.extend(match base {
        Some(QBase::Float(_)) => vec!["re", "im"],
        Some(QBase::Exact(_)) => vec!["value", "at_q"],
        None => vec!["value"],
    });
    cols
}

fn base_cells(base: Option<&QBase>) -> Vec<Cell> {
    match base {
        Some(QBase::Float(b)) => vec![Cell::Text("float".into()), Cell::Num(b.q().re), Cell::Num(b.q().im)],
        Some(QBase::Exact(b)) => vec![
            Cell::Text("exact".into()),
            Cell::Text(b.q().map(|q| q.to_string()).unwrap_or_default()),
            Cell::Int(b.root_denom()),
        ],
        None => vec![],
    }
}

fn value_cells(v: &Scalar, base: &QBase) -> Vec<Cell> {
    match v {
        Scalar::Float(z) => vec![Cell::Num(z.re), Cell::Num(z.im)],
        Scalar::Exact(f) => {
            let at = match at_q(v, base) {
                Value::String(s) => s,
                Value::Object(z) => match (z["re"].as_f64(), z["im"].as_f64()) {
                    (Some(re), Some(im)) if im == 0.0 => re.to_string(),
                    (Some(re), Some(im)) => format!("{re}{im:+}i"),
                    _ => String::new(),
                },
                _ => String::new(),
            };
            vec![Cell::Text(f.canonical_string()), Cell::Text(at)]
        }
    }
}

fn row(kind: TableKind, p: &Point, base: Option<&QBase>, ctx: &Context) -> Result<Vec<Cell>, CliError> {
    let mut cells = base_cells(base);
    let x = || Cell::Text(p.x.to_string());
    match kind {
        TableKind::EulerClassical => {
            cells.extend([Cell::Int(p.n), Cell::Int(p.r), x()]);
            let v = euler_poly(p.n as usize, p.r).eval(&p.x);
            cells.push(Cell::Text(v.to_string()));
            return Ok(cells);
        }
        TableKind::Qeuler => cells.extend([Cell::Int(p.n), Cell::Int(p.r), x()]),
        TableKind::Zeta => cells.extend([Cell::Num(p.s.re), Cell::Num(p.s.im), Cell::Int(p.r), x()]),
        TableKind::Ssum => cells.extend([p.n, p.i, p.r, p.a, p.b].map(Cell::Int)),
    }
    let base = base.expect("q-dependent tables have a base");
    let v = match kind {
        TableKind::Qeuler => qeuler(p.n, p.r, &p.x, base)?,
        TableKind::Zeta => zeta(p.s, p.r, &p.x, base, &ctx.ctrl)?,
        TableKind::Ssum => s_sum_value(p.n, p.i, p.r, p.a, &base.rebase(p.b))?,
        TableKind::EulerClassical => unreachable!(),
    };
    cells.extend(value_cells(&v, base));
    Ok(cells)
}

pub fn build(ctx: &Context, args: &TableArgs) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
    let axes = axes(args.kind);
    let mut grid_args = args.grid.clone();
    if args.kind == TableKind::Ssum && grid_args.b.is_none() {
        grid_args.b = Some("1".into());
    }
    let mut points = grid::build(&grid_args, axes)?;
    if args.kind == TableKind::Ssum {
        points.retain(|p| p.i <= p.n);
    }
    let base = match args.kind {
        TableKind::EulerClassical => None,
        _ => {
            let xs: Vec<&BigRational> = points.iter().map(|p| &p.x).collect();
            Some(ctx.base(xs)?)
        }
    };
    let rows = points
        .par_iter()
        .map(|p| row(args.kind, p, base.as_ref(), ctx))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((columns(args.kind, base.as_ref()), rows))
}

pub fn write(kind: TableKind, format: Format, cols: &[&str], rows: &[Vec<Cell>], out: &mut impl Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(cols).map_err(io)?;
            for r in rows {
                w.write_record(r.iter().map(Cell::csv)).map_err(io)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
            let doc = json!({ "schema": TABLE_SCHEMA, "kind": kind_name(kind), "columns": cols, "rows": rows });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(())
}

pub fn run(ctx: &Context, args: &TableArgs) -> Result<(), CliError> {
    let (cols, rows) = build(ctx, args)?;
    match &args.output {
        Some(path) => {
            let mut buf = Vec::new();
            write(args.kind, args.format, &cols, &rows, &mut buf)?;
            std::fs::write(path, buf).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        None => write(args.kind, args.format, &cols, &rows, &mut std::io::stdout().lock())?,
    }
    Ok(())
}
