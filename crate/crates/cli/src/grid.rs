//! Cartesian parameter grids in a fixed nesting order.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::args::GridArgs;
use crate::error::CliError;
use crate::parse::{parse_complex_axis, parse_int_axis, parse_rational_axis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
    M,
    N,
    I,
    R,
    X,
    Y,
    S,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::A => "a",
            Axis::B => "b",
            Axis::M => "m",
            Axis::N => "n",
            Axis::I => "i",
            Axis::R => "r",
            Axis::X => "x",
            Axis::Y => "y",
            Axis::S => "s",
        }
    }

    fn default_spec(self) -> &'static str {
        match self {
            Axis::A => "1",
            Axis::B => "3",
            Axis::M => "0..2",
            Axis::N => "0..4",
            Axis::I => "0..4",
            Axis::R => "1",
            Axis::X => "1",
            Axis::Y => "0",
            Axis::S => "2",
        }
    }
}

/// One grid point; axes not in use keep their defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    pub n: u32,
    pub i: u32,
    pub r: u32,
    pub x: BigRational,
    pub y: BigRational,
    pub s: Complex64,
}

impl Default for Point {
    fn default() -> Self {
        Point {
            a: 1,
            b: 3,
            m: 0,
            n: 0,
            i: 0,
            r: 1,
            x: BigRational::from_integer(1.into()),
            y: BigRational::from_integer(0.into()),
            s: Complex64::new(2.0, 0.0),
        }
    }
}

enum Values {
    Int(Vec<u32>),
    Rat(Vec<BigRational>),
    Cpx(Vec<Complex64>),
}

impl Values {
    fn len(&self) -> usize {
        match self {
            Values::Int(v) => v.len(),
            Values::Rat(v) => v.len(),
            Values::Cpx(v) => v.len(),
        }
    }
}

fn spec<'a>(g: &'a GridArgs, axis: Axis) -> Option<&'a String> {
    match axis {
        Axis::A => g.a.as_ref(),
        Axis::B => g.b.as_ref(),
        Axis::M => g.m.as_ref(),
        Axis::N => g.n.as_ref(),
        Axis::I => g.i.as_ref(),
        Axis::R => g.r.as_ref(),
        Axis::X => g.x.as_ref(),
        Axis::Y => g.y.as_ref(),
        Axis::S => g.s.as_ref(),
    }
}

fn set(p: &mut Point, axis: Axis, values: &Values, k: usize) {
    match (axis, values) {
        (Axis::A, Values::Int(v)) => p.a = v[k],
        (Axis::B, Values::Int(v)) => p.b = v[k],
        (Axis::M, Values::Int(v)) => p.m = v[k],
        (Axis::N, Values::Int(v)) => p.n = v[k],
        (Axis::I, Values::Int(v)) => p.i = v[k],
        (Axis::R, Values::Int(v)) => p.r = v[k],
        (Axis::X, Values::Rat(v)) => p.x = v[k].clone(),
        (Axis::Y, Values::Rat(v)) => p.y = v[k].clone(),
        (Axis::S, Values::Cpx(v)) => p.s = v[k],
        _ => unreachable!("axis kinds are fixed by parse"),
    }
}

/// Reject flags for axes the command does not use.
fn check_unused(g: &GridArgs, axes: &[Axis]) -> Result<(), CliError> {
    let all = [Axis::A, Axis::B, Axis::M, Axis::N, Axis::I, Axis::R, Axis::X, Axis::Y, Axis::S];
    for axis in all {
        if spec(g, axis).is_some() && !axes.contains(&axis) {
            return Err(CliError::Usage(format!("--{} is not used here", axis.name())));
        }
    }
    Ok(())
}

/// All points over `axes`, the first axis varying slowest.
pub fn build(g: &GridArgs, axes: &[Axis]) -> Result<Vec<Point>, CliError> {
    check_unused(g, axes)?;
    let mut lists = Vec::with_capacity(axes.len());
    for &axis in axes {
        let text = spec(g, axis).map(String::as_str).unwrap_or(axis.default_spec());
        let values = match axis {
            Axis::X | Axis::Y => Values::Rat(parse_rational_axis(axis.name(), text)?),
            Axis::S => Values::Cpx(parse_complex_axis(axis.name(), text)?),
            _ => Values::Int(parse_int_axis(axis.name(), text)?),
        };
        lists.push(values);
    }
    let total: usize = lists.iter().map(Values::len).try_fold(1usize, |acc, l| acc.checked_mul(l))
        .filter(|&t| t <= 1_000_000)
        .ok_or_else(|| CliError::Usage("grid has more than 1000000 points".into()))?;
    let mut points = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        let mut p = Point::default();
        for (k, &axis) in axes.iter().enumerate() {
            set(&mut p, axis, &lists[k], idx[k]);
        }
        points.push(p);
        for k in (0..axes.len()).rev() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(points)
}

/// `count` points chosen uniformly without replacement, kept in grid order.
pub fn sample(points: Vec<Point>, count: usize, seed: u64) -> Vec<Point> {
    if count >= points.len() {
        return points;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut keep = rand::seq::index::sample(&mut rng, points.len(), count).into_vec();
    keep.sort_unstable();
    keep.into_iter().map(|k| points[k].clone()).collect()
}
