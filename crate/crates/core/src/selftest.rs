//! A battery of numerical self-checks, driven by a seed.
//!
//! Each check reports the worst residual it saw against a fixed
//! tolerance. The battery covers the dilogarithm functional equations,
//! the two four-holed-sphere forms, the torus/four-holed-sphere
//! correspondence of orthogeodesics, and the tree-versus-word trace
//! oracle.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dilog::{rogers_l, ROGERS_L_ONE};
use crate::error::Result;
use crate::identities::{term_four, FourArgs};
use crate::moduli::{length_from_trace, FenchelNielsen};
use crate::pants::{foursphere_ortho, tanh_sq_half, torus_ortho};
use crate::spectrum::{brute_force_trace, enumerate, farey_count, primitive_slopes, Slope};

/// Grid shared by the four-holed-sphere and correspondence checks.
pub const GRID_C: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
pub const GRID_A: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, worst: f64, tolerance: f64, samples: usize) -> Self {
        Self {
            name: name.to_string(),
            worst,
            tolerance,
            samples,
            passed: worst <= tolerance,
        }
    }
}

fn worst_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<(f64, usize)> {
    let mut worst = 0.0_f64;
    let mut n = 0;
    for r in it {
        let r = r?.abs();
        // NaN must fail the check
        worst = if r.is_nan() {
            f64::INFINITY
        } else {
            worst.max(r)
        };
        n += 1;
    }
    Ok((worst, n))
}

pub fn special_values() -> Result<Check> {
    let cases = [
        (0.0, 0.0),
        (0.5, PI * PI / 12.0),
        (1.0, PI * PI / 6.0),
        (-1.0, -PI * PI / 12.0),
    ];
    let (worst, n) = worst_of(cases.iter().map(|&(z, v)| Ok(rogers_l(z)? - v)))?;
    Ok(Check::new("dilog special values", worst, 1e-13, n))
}

/// Euler, inversion, Landen and pentagon residuals at `samples` random
/// points each.
pub fn functional_equations(seed: u64, samples: usize, tolerance: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = rogers_l;

    let xs: Vec<f64> = (0..samples).map(|_| rng.gen_range(0.0..=1.0)).collect();
    let (euler, n) = worst_of(xs.iter().map(|&x| Ok(l(x)? + l(1.0 - x)? - ROGERS_L_ONE)))?;

    let xs: Vec<f64> = (0..samples)
        .map(|_| 10f64.powf(rng.gen_range(-6.0..6.0)))
        .collect();
    let (inversion, _) = worst_of(xs.iter().map(|&x| Ok(l(-x)? + l(-1.0 / x)? + ROGERS_L_ONE)))?;

    let xs: Vec<f64> = (0..samples)
        .map(|_| rng.gen_range(0.0..=1.0 - 1e-8))
        .collect();
    let (landen, _) = worst_of(xs.iter().map(|&x| Ok(l(-x / (1.0 - x))? + l(x)?)))?;

    let pts: Vec<(f64, f64)> = (0..samples)
        .map(|_| {
            (
                rng.gen_range(f64::EPSILON..1.0),
                rng.gen_range(f64::EPSILON..1.0),
            )
        })
        .collect();
    let (pentagon, _) = worst_of(pts.iter().map(|&(x, y)| {
        let d = 1.0 - x * y;
        Ok(l(x)? + l(y)? + l((1.0 - x) / d)? + l((1.0 - y) / d)? - l(x * y)? - PI * PI / 3.0)
    }))?;

    let mut zs: Vec<f64> = (0..samples).map(|_| rng.gen_range(-50.0..=1.0)).collect();
    zs.sort_by(f64::total_cmp);
    let values = zs.iter().map(|&z| l(z)).collect::<Result<Vec<_>>>()?;
    let drops = values.windows(2).filter(|w| w[1] < w[0]).count();

    Ok(vec![
        Check::new("dilog Euler relation", euler, tolerance, n),
        Check::new("dilog inversion relation", inversion, tolerance, n),
        Check::new("dilog Landen identity", landen, tolerance, n),
        Check::new("dilog pentagon relation", pentagon, tolerance, n),
        Check::new("dilog monotonicity (violations)", drops as f64, 0.0, n),
    ])
}

/// Orthogeodesic form against length form of the four-holed-sphere
/// bracket on the fixed grid.
pub fn four_sphere_forms() -> Result<Check> {
    let cells = GRID_C
        .iter()
        .flat_map(|&c| GRID_A.iter().map(move |&a| (c, a)));
    let (worst, n) = worst_of(cells.map(|(c, a)| {
        let o = foursphere_ortho(c, a)?;
        Ok(term_four(c, FourArgs::Ortho { m: o.m, p: o.p })?
            - term_four(c, FourArgs::Simple { a })?)
    }))?;
    Ok(Check::new(
        "four-holed sphere: orthogeodesic vs length form",
        worst,
        1e-9,
        n,
    ))
}

/// First summand only: `L(tanh^2(p_A/2))` against the first term of the
/// length form. The other two summands agree only as a bracket.
pub fn four_sphere_first_term() -> Result<Check> {
    let cells = GRID_C
        .iter()
        .flat_map(|&c| GRID_A.iter().map(move |&a| (c, a)));
    let (worst, n) = worst_of(cells.map(|(c, a)| {
        let o = foursphere_ortho(c, a)?;
        let lhs = rogers_l(tanh_sq_half(o.p))?;
        let rhs = rogers_l((c.cosh() + 1.0) / (c.cosh() + (0.5 * a).cosh()))?;
        Ok(lhs - rhs)
    }))?;
    Ok(Check::new(
        "four-holed sphere: first summand termwise",
        worst,
        1e-12,
        n,
    ))
}

/// `m_A = m_B`, `p_A = q_B`, `q_A = p_B` at `c = k/2`, `a = 2b`, plus the
/// two closed forms for `tanh^2(p_A/2)` and `tanh^2(q_B/2)`.
pub fn covering_correspondence() -> Result<Check> {
    let cells = GRID_C
        .iter()
        .flat_map(|&c| GRID_A.iter().map(move |&a| (c, a)));
    let mut residuals = Vec::new();
    for (c, a) in cells {
        let four = foursphere_ortho(c, a)?;
        let torus = torus_ortho(2.0 * c, 0.5 * a)?;
        residuals.push(four.m - torus.m);
        residuals.push(four.p - torus.q);
        residuals.push(four.q - torus.p);
        let closed_p = (c.cosh() + 1.0) / (c.cosh() + (0.5 * a).cosh());
        residuals.push(tanh_sq_half(four.p) - closed_p);
        let (k, b) = (2.0 * c, 0.5 * a);
        let closed_q = ((0.5 * k).cosh() + 1.0) / ((0.5 * k).cosh() + b.cosh());
        residuals.push(tanh_sq_half(torus.q) - closed_q);
        residuals.push(if (-c).exp() < tanh_sq_half(four.m) {
            0.0
        } else {
            1.0
        });
    }
    let (worst, n) = worst_of(residuals.into_iter().map(Ok))?;
    Ok(Check::new(
        "torus / four-holed sphere correspondence",
        worst,
        1e-10,
        n,
    ))
}

/// Random Fenchel-Nielsen point with `b in [0.5, 3]`, `t in [0, b]`,
/// `k in [0.2, 4]`.
pub fn random_fenchel_nielsen(rng: &mut impl Rng) -> FenchelNielsen {
    let b = rng.gen_range(0.5..=3.0);
    let t = rng.gen_range(0.0..=b);
    let k = rng.gen_range(0.2..=4.0);
    FenchelNielsen { b, t, k }
}

/// Largest relative gap between tree traces and explicit word traces for
/// all enumerated slopes with `q <= max_q` and length `<= cutoff`.
pub fn tree_trace_gap(point: &FenchelNielsen, cutoff: f64, max_q: i64) -> Result<(f64, usize)> {
    let tri = point.trace_triple()?;
    let records = enumerate(&tri, cutoff)?;
    worst_of(records.iter().filter(|r| r.slope.q <= max_q).map(|r| {
        let brute = brute_force_trace(point, r.slope)?;
        Ok((r.trace - brute) / brute)
    }))
}

/// Set of enumerated slopes with `max(|p|, q) <= n` against the direct
/// list, using a cutoff just above the longest of those slopes.
pub fn slope_completeness(point: &FenchelNielsen, n: i64) -> Result<bool> {
    let expected = primitive_slopes(n);
    let mut longest = 0.0_f64;
    for &s in &expected {
        longest = longest.max(length_from_trace(brute_force_trace(point, s)?)?);
    }
    let tri = point.trace_triple()?;
    let got: BTreeSet<Slope> = enumerate(&tri, longest * (1.0 + 1e-9))?
        .into_iter()
        .map(|r| r.slope)
        .filter(|s| s.p.abs() <= n && s.q <= n)
        .collect();
    Ok(got.into_iter().eq(expected))
}

pub fn enumeration_oracle(seed: u64, points: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut n = 0;
    let mut complete = true;
    for _ in 0..points {
        let fnc = random_fenchel_nielsen(&mut rng);
        let (gap, count) = tree_trace_gap(&fnc, 14.0, 8)?;
        worst = worst.max(gap);
        n += count;
        complete &= slope_completeness(&fnc, 5)?;
    }
    let in_unit = primitive_slopes(5)
        .into_iter()
        .filter(|s| s.q >= 1 && (0..=s.q).contains(&s.p))
        .count() as u64;
    let totient_ok = in_unit == farey_count(5) && farey_count(5) == 11;
    Ok(vec![
        Check::new("tree traces vs word traces (q <= 8)", worst, 1e-9, n),
        Check::new(
            "slope completeness and Farey count (failures)",
            if complete && totient_ok { 0.0 } else { 1.0 },
            0.0,
            points,
        ),
    ])
}

/// The whole battery.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut checks = vec![special_values()?];
    checks.extend(functional_equations(seed, 1000, 1e-11)?);
    checks.push(four_sphere_forms()?);
    checks.push(four_sphere_first_term()?);
    checks.push(covering_correspondence()?);
    checks.extend(enumeration_oracle(seed, 5)?);
    Ok(checks)
}
