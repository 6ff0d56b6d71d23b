//! Literals and grid axes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::CliError;

/// `3`, `-1/2` or a plain decimal such as `0.25`, read exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    if s.contains('/') {
        let v = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(v);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(numer, denom);
    Ok(if neg { -v } else { v })
}

/// A complex literal such as `0.4+0.3i`, `1i`, `2`, or a fraction `1/2`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    if let Ok(r) = parse_rational(s) {
        return r
            .to_f64()
            .map(|v| Complex64::new(v, 0.0))
            .ok_or_else(|| CliError::Usage(format!("out of range: {s:?}")));
    }
    let v = Complex64::from_str(s.trim()).map_err(|_| CliError::Usage(format!("not a complex number: {s:?}")))?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(CliError::Usage(format!("not a finite complex number: {s:?}")));
    }
    Ok(v)
}

/// `0..4,7,9..10` as an ordered, duplicate-free list (ranges are inclusive).
pub fn parse_int_axis(name: &str, s: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let bad = || CliError::Usage(format!("--{name}: cannot read {item:?}"));
        let (lo, hi) = match item.split_once("..") {
            Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
            None => {
                let v = item.parse::<u32>().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(CliError::Usage(format!("--{name}: empty range {item:?}")));
        }
        if hi - lo > 10_000 {
            return Err(CliError::Usage(format!("--{name}: range {item:?} is too long")));
        }
        for v in lo..=hi {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

pub fn parse_rational_axis(name: &str, s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(|item| parse_rational(item).map_err(|e| CliError::Usage(format!("--{name}: {e}"))))
        .collect()
}

pub fn parse_complex_axis(name: &str, s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',')
        .map(|item| parse_complex(item).map_err(|e| CliError::Usage(format!("--{name}: {e}"))))
        .collect()
}
