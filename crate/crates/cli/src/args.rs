//! Parsers for the compact flag syntaxes: comma-separated vectors,
//! `min:max:step` ranges and `p/q` rationals.

use std::path::Path;

use anyhow::{bail, Context, Result};
use effham_core::io::potential_from_json;
use effham_core::TrigPotential;
use num_rational::Rational64;

pub fn read_potential(path: &Path) -> Result<TrigPotential> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    potential_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            let x: f64 = s.parse().with_context(|| format!("not a number: {s:?}"))?;
            if !x.is_finite() {
                bail!("not a finite number: {s:?}");
            }
            Ok(x)
        })
        .collect()
}

pub fn rationals(text: &str) -> Result<Vec<Rational64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Rational64>()
                .with_context(|| format!("not an integer or p/q rational: {s:?}"))
        })
        .collect()
}

/// `min:max:step`, with `step > 0` and `min ≤ max`.
pub fn range(text: &str) -> Result<(f64, f64, f64)> {
    let parts = floats(&text.replace(':', ","))
        .with_context(|| format!("range {text:?} must read min:max:step"))?;
    let [lo, hi, step] = parts[..] else {
        bail!("range {text:?} must read min:max:step");
    };
    if step <= 0.0 {
        bail!("range {text:?} needs a positive step");
    }
    if lo > hi {
        bail!("range {text:?} has min above max");
    }
    Ok((lo, hi, step))
}

/// One range for every coordinate, or one per coordinate separated by commas.
pub fn ranges(text: &str, dim: usize) -> Result<Vec<(f64, f64, f64)>> {
    let parts: Vec<(f64, f64, f64)> = text.split(',').map(range).collect::<Result<_>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0]; dim]),
        n if n == dim => Ok(parts),
        n => bail!("{n} ranges given for a {dim}-dimensional potential"),
    }
}

pub fn expect_len<T>(values: Vec<T>, dim: usize, what: &str) -> Result<Vec<T>> {
    if values.len() != dim {
        bail!("{what} has {} components, the potential has dimension {dim}", values.len());
    }
    Ok(values)
}
