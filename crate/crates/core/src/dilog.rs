//! Real dilogarithms on `(-inf, 1]`.
//!
//! Every evaluation is reduced to the power series of `Li2` on
//! `|z| <= 1/2` through one of the classical functional equations:
//!
//! | range            | reduction                                  |
//! |------------------|--------------------------------------------|
//! | `[-1/2, 1/2]`    | series                                     |
//! | `(1/2, 1]`       | `L(z) = pi^2/6 - L(1 - z)`                 |
//! | `[-1, -1/2)`     | `L(z) = -L(z / (z - 1))`                   |
//! | `(-inf, -1)`     | `L(z) = -pi^2/6 - L(1 / z)`                |
//!
//! `L` is the Rogers dilogarithm, normalised so that
//! `L(z) = Li2(z) + log|z| log(1 - z) / 2`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// `L(1) = pi^2 / 6`.
pub const ROGERS_L_ONE: f64 = PI * PI / 6.0;

const SERIES_EPS: f64 = 1e-17;
const SERIES_CAP: usize = 200;

/// `sum z^n / n^2` for `|z| <= 1/2`.
fn li2_series(z: f64) -> f64 {
    debug_assert!(z.abs() <= 0.5);
    let mut power = z;
    let mut sum = 0.0;
    for n in 1..=SERIES_CAP {
        let term = power / (n * n) as f64;
        sum += term;
        if term.abs() < SERIES_EPS {
            break;
        }
        power *= z;
    }
    sum
}

/// `log|z| * log(1 - z) / 2`, with `log(1 - z)` through `ln_1p`.
fn normalisation(z: f64) -> f64 {
    0.5 * z.abs().ln() * (-z).ln_1p()
}

fn check_arg(func: &'static str, z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(domain(func, format!("non-finite argument {z}")));
    }
    if z > 1.0 {
        return Err(domain(func, format!("argument {z} > 1")));
    }
    Ok(())
}

fn rogers_unchecked(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else if z == 1.0 {
        ROGERS_L_ONE
    } else if z.abs() <= 0.5 {
        li2_series(z) + normalisation(z)
    } else if z > 0.5 {
        // 1 - z is exact here
        ROGERS_L_ONE - rogers_unchecked(1.0 - z)
    } else if z >= -1.0 {
        -rogers_unchecked(z / (z - 1.0))
    } else {
        -ROGERS_L_ONE - rogers_unchecked(1.0 / z)
    }
}

/// The Rogers dilogarithm `L(z)` for `z <= 1`.
///
/// Monotone nondecreasing, with `L(0) = 0`, `L(1/2) = pi^2/12`,
/// `L(1) = pi^2/6` and `L(z) -> -pi^2/6` as `z -> -inf`.
pub fn rogers_l(z: f64) -> Result<f64> {
    check_arg("rogers_l", z)?;
    Ok(rogers_unchecked(z))
}

/// Like [`rogers_l`], but returns the limit `-pi^2/6` for every input
/// strictly below `floor` (including `-inf`).
pub fn rogers_l_with_floor(z: f64, floor: f64) -> Result<f64> {
    if z < floor {
        return Ok(-ROGERS_L_ONE);
    }
    rogers_l(z)
}

/// The ordinary dilogarithm `Li2(z)`, analytically continued to `z <= 1`.
pub fn li2(z: f64) -> Result<f64> {
    check_arg("li2", z)?;
    Ok(if z == 0.0 {
        0.0
    } else if z == 1.0 {
        ROGERS_L_ONE
    } else if z.abs() <= 0.5 {
        li2_series(z)
    } else {
        rogers_unchecked(z) - normalisation(z)
    })
}

/// The lasso function
/// `La(x, y) = L(y) + L((1 - y)/(1 - xy)) - L((1 - x)/(1 - xy))`
/// on the closed unit square minus the corner `x = y = 1`.
pub fn lasso(x: f64, y: f64) -> Result<f64> {
    for (name, v) in [("x", x), ("y", y)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(domain("lasso", format!("{name} = {v} outside [0, 1]")));
        }
    }
    let denom = 1.0 - x * y;
    if denom == 0.0 {
        return Err(Error::Singular { x, y });
    }
    // Both ratios are <= 1 exactly; rounding may nudge them past it.
    let u = ((1.0 - y) / denom).min(1.0);
    let v = ((1.0 - x) / denom).min(1.0);
    Ok(rogers_unchecked(y) + rogers_unchecked(u) - rogers_unchecked(v))
}
