//! Term functions of the dilogarithm identities and their evaluation over
//! the simple length spectrum.
//!
//! Every torus identity has the shape `sum_B term(B) = pi^2 / 2`, except
//! McShane's `sum_B 1/(1 + e^b) = 1/2`. The four-holed-sphere identities
//! are summed over the torus spectrum through the covering correspondence
//! `c = k/2`, `l(A) = 2 l(B)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dilog::{lasso, rogers_l};
use crate::error::{domain, Error, Result};
use crate::moduli::TraceTriple;
use crate::pants::{
    foursphere_ortho, sech_sq_half, tanh_sq_half, torus_ortho, PantsGeometry, MIN_LENGTH,
};
use crate::spectrum::{enumerate_with_cap, GeodesicRecord, Slope, DEFAULT_RECORD_CAP};
use crate::summation::CompensatedSum;

/// `pi^2 / 2`.
pub const TARGET_DILOG: f64 = PI * PI / 2.0;
/// McShane's right-hand side.
pub const TARGET_MCSHANE: f64 = 0.5;

/// Beyond this geodesic length the signed torus brackets are replaced by
/// their limit `0`.
pub const LARGE_LENGTH: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityKind {
    /// One-holed torus with geodesic boundary, in lengths.
    #[serde(rename = "thm11")]
    Thm11,
    /// Once-punctured torus, in lengths.
    #[serde(rename = "thm12")]
    Thm12,
    /// Once-punctured torus, in squared traces.
    #[serde(rename = "thm15")]
    Thm15,
    /// One-holed torus, in orthogeodesics and the lasso function.
    #[serde(rename = "thm31")]
    Thm31,
    /// Four-holed sphere with equal boundaries, in orthogeodesics.
    #[serde(rename = "four")]
    Four,
    /// Four-holed sphere with equal boundaries, in `l(A)` and `c`.
    #[serde(rename = "four-simple")]
    FourSimple,
    /// Four-times-punctured sphere.
    #[serde(rename = "four-cusped")]
    FourCusped,
    #[serde(rename = "mcshane")]
    McShane,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::Thm11,
        IdentityKind::Thm12,
        IdentityKind::Thm15,
        IdentityKind::Thm31,
        IdentityKind::Four,
        IdentityKind::FourSimple,
        IdentityKind::FourCusped,
        IdentityKind::McShane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Thm11 => "thm11",
            IdentityKind::Thm12 => "thm12",
            IdentityKind::Thm15 => "thm15",
            IdentityKind::Thm31 => "thm31",
            IdentityKind::Four => "four",
            IdentityKind::FourSimple => "four-simple",
            IdentityKind::FourCusped => "four-cusped",
            IdentityKind::McShane => "mcshane",
        }
    }

    pub fn target(self) -> f64 {
        match self {
            IdentityKind::McShane => TARGET_MCSHANE,
            _ => TARGET_DILOG,
        }
    }

    /// Whether the identity lives on a surface with cusps (`k = 0`) rather
    /// than geodesic boundary.
    pub fn is_cusped(self) -> bool {
        matches!(
            self,
            IdentityKind::Thm12
                | IdentityKind::Thm15
                | IdentityKind::FourCusped
                | IdentityKind::McShane
        )
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| domain("IdentityKind", format!("unknown identity '{s}'")))
    }
}

fn check_positive(func: &'static str, name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < MIN_LENGTH {
        return Err(domain(func, format!("{name} = {v} must be positive")));
    }
    Ok(())
}

/// Relative slack on the lasso guard. For geodesics longer than about 35
/// the true gap `tanh^2(m/2) - x` is `O(e^{-b})` and drowns in rounding.
const GUARD_SLACK: f64 = 1e-13;

fn lasso_guard(func: &'static str, x: f64, t: f64) -> Result<()> {
    if !(x < t * (1.0 + GUARD_SLACK)) {
        return Err(domain(
            func,
            format!("lasso guard violated: {x} >= tanh^2(m/2) = {t}"),
        ));
    }
    Ok(())
}

/// `L(u) - L(v)` of the second and third terms, doubled.
fn signed_pair(u: f64, v: f64) -> Result<f64> {
    Ok(2.0 * (rogers_l(u)? - rogers_l(v)?))
}

/// Summand for a one-holed torus with boundary `k` and a simple closed
/// geodesic of length `b`:
///
/// `L((cosh(k/2)+1)/(cosh(k/2)+cosh b)) + 2L(cosh(k/4+b/2)/(cosh(k/4)e^{b/2}))
///  - 2L(2 sinh(b/2)/((1+e^{-k/2})e^{b/2}))`
pub fn term_thm11(k: f64, b: f64) -> Result<f64> {
    check_positive("term_thm11", "k", k)?;
    check_positive("term_thm11", "b", b)?;
    if b > LARGE_LENGTH {
        return Ok(0.0);
    }
    let ch = (0.5 * k).cosh();
    let first = (ch + 1.0) / (ch + b.cosh());
    // cosh(k/4 + b/2) / (cosh(k/4) e^{b/2}) with the exponential divided out
    let q = 0.25 * k;
    let u = (q.exp() + (-q - b).exp()) / (2.0 * q.cosh());
    // 2 sinh(b/2) / e^{b/2} = 1 - e^{-b}
    let v = -(-b).exp_m1() / (1.0 + (-0.5 * k).exp());
    Ok(rogers_l(first)? + signed_pair(u, v)?)
}

/// Summand for a once-punctured torus:
/// `L(sech^2(b/2)) + 2L((1+e^{-b})/2) - 2L((1-e^{-b})/2)`.
pub fn term_thm12(b: f64) -> Result<f64> {
    check_positive("term_thm12", "b", b)?;
    if b > LARGE_LENGTH {
        return Ok(0.0);
    }
    let e = (-b).exp();
    let u = 0.5 * (1.0 + e);
    let v = -0.5 * (-b).exp_m1();
    Ok(rogers_l(sech_sq_half(b))? + signed_pair(u, v)?)
}

/// The once-punctured summand written in `x = tr^2`:
/// `L(4/x) + 2L(x/(x+sqrt(x^2-4x))) - 2L(sqrt(x^2-4x)/(x+sqrt(x^2-4x)))`.
pub fn term_thm15(xsq: f64) -> Result<f64> {
    if !xsq.is_finite() || xsq <= 4.0 {
        return Err(domain(
            "term_thm15",
            format!("squared trace {xsq} must exceed 4"),
        ));
    }
    let root = xsq.sqrt() * (xsq - 4.0).sqrt();
    let denom = xsq + root;
    Ok(rogers_l(4.0 / xsq)? + signed_pair(xsq / denom, root / denom)?)
}

/// Summand in orthogeodesic form:
/// `L(tanh^2(q_B/2)) + 2L(tanh^2(m_B/2)) - 2La(e^{-k/2}, tanh^2(m_B/2))`.
pub fn term_thm31(k: f64, m_b: f64, q_b: f64) -> Result<f64> {
    check_positive("term_thm31", "k", k)?;
    let t = tanh_sq_half(m_b);
    let x = (-0.5 * k).exp();
    lasso_guard("term_thm31", x, t)?;
    Ok(rogers_l(tanh_sq_half(q_b))? + 2.0 * rogers_l(t)? - 2.0 * lasso(x, t)?)
}

/// Data for one summand of a four-holed-sphere identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FourArgs {
    /// Orthogeodesic lengths `m_A`, `p_A`.
    Ortho { m: f64, p: f64 },
    /// Length `a = l(A)`.
    Simple { a: f64 },
    /// Length `a = l(A)`; the boundary length is ignored.
    Cusped { a: f64 },
}

/// One bracket of a four-holed-sphere identity with boundary length `c`.
pub fn term_four(c: f64, args: FourArgs) -> Result<f64> {
    match args {
        FourArgs::Ortho { m, p } => {
            check_positive("term_four", "c", c)?;
            let t = tanh_sq_half(m);
            let x = (-c).exp();
            lasso_guard("term_four", x, t)?;
            Ok(rogers_l(tanh_sq_half(p))? + 2.0 * rogers_l(t)? - 2.0 * lasso(x, t)?)
        }
        FourArgs::Simple { a } => {
            check_positive("term_four", "c", c)?;
            check_positive("term_four", "a", a)?;
            if a > 2.0 * LARGE_LENGTH {
                return Ok(0.0);
            }
            let ch = c.cosh();
            let first = (ch + 1.0) / (ch + (0.5 * a).cosh());
            // cosh(c/2 + a/4) / (cosh(c/2) e^{a/4})
            let h = 0.5 * c;
            let u = (h.exp() + (-h - 0.5 * a).exp()) / (2.0 * h.cosh());
            // 2 sinh(a/4) / e^{a/4} = 1 - e^{-a/2}
            let v = -(-0.5 * a).exp_m1() / (1.0 + (-c).exp());
            Ok(rogers_l(first)? + signed_pair(u, v)?)
        }
        FourArgs::Cusped { a } => {
            check_positive("term_four", "a", a)?;
            if a > 2.0 * LARGE_LENGTH {
                return Ok(0.0);
            }
            let quarter = 0.25 * a;
            let sech_sq = 1.0 / quarter.cosh().powi(2);
            let u = 0.5 * (1.0 + (-0.5 * a).exp());
            let v = -0.5 * (-0.5 * a).exp_m1();
            Ok(rogers_l(sech_sq)? + signed_pair(u, v)?)
        }
    }
}

/// McShane's summand `1 / (1 + e^b)`.
pub fn term_mcshane(b: f64) -> f64 {
    1.0 / (1.0 + b.exp())
}

/// The dilogarithm function of an embedded pair of pants, closed form:
/// `8[sum_i (L(tanh^2(m_i/2)) - L(sech^2(p_i/2))) - sum_{i!=j} La(e^{-l_i}, tanh^2(m_j/2))]`.
pub fn f1(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    let g = PantsGeometry::new(l1, l2, l3)?;
    let mut acc = CompensatedSum::new();
    for i in 0..3 {
        acc.add(rogers_l(tanh_sq_half(g.ortho[i]))?);
        acc.add(-rogers_l(sech_sq_half(g.self_ortho[i]))?);
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                acc.add(-lasso((-g.boundary[i]).exp(), tanh_sq_half(g.ortho[j]))?);
            }
        }
    }
    Ok(8.0 * acc.value())
}

/// The same function in its `4 pi^2 - ...` form:
/// `4pi^2 - 8[sum_i (L(sech^2(m_i/2)) + L(sech^2(p_i/2))) + sum_{i!=j} La(e^{-l_i}, tanh^2(m_j/2))]`.
pub fn f1_complement_form(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    let g = PantsGeometry::new(l1, l2, l3)?;
    let mut acc = CompensatedSum::new();
    for i in 0..3 {
        acc.add(rogers_l(sech_sq_half(g.ortho[i]))?);
        acc.add(rogers_l(sech_sq_half(g.self_ortho[i]))?);
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                acc.add(lasso((-g.boundary[i]).exp(), tanh_sq_half(g.ortho[j]))?);
            }
        }
    }
    Ok(4.0 * PI * PI - 8.0 * acc.value())
}

/// The function of a quasi-embedded pair of pants determined by a one-holed
/// torus with boundary `k` and an interior geodesic of length `b`.
pub fn f2(k: f64, b: f64, m_b: f64, p_b: f64, q_b: f64) -> Result<f64> {
    check_positive("f2", "k", k)?;
    check_positive("f2", "b", b)?;
    let t = tanh_sq_half(m_b);
    let xb = (-b).exp();
    let xk = (-0.5 * k).exp();
    lasso_guard("f2", xb, t)?;
    lasso_guard("f2", xk, t)?;
    let mut acc = CompensatedSum::new();
    acc.add(rogers_l(tanh_sq_half(q_b))?);
    acc.add(2.0 * rogers_l(t)?);
    acc.add(-rogers_l(sech_sq_half(p_b))?);
    acc.add(-2.0 * lasso(xb, t)?);
    acc.add(-2.0 * lasso(xk, t)?);
    Ok(8.0 * acc.value())
}

/// [`f2`] for a spectrum record, orthogeodesics from [`torus_ortho`].
pub fn f2_for_length(k: f64, b: f64) -> Result<f64> {
    let o = torus_ortho(k, b)?;
    f2(k, b, o.m, o.p, o.q)
}

/// `sum_B f2` over the given records.
pub fn sum_f2(k: f64, records: &[GeodesicRecord]) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for r in records {
        acc.add(f2_for_length(k, r.length)?);
    }
    Ok(acc.value())
}

/// The torus function truncated to the given records:
/// `4pi^2 - sum_B 8[2La(e^{-l(B)}, tanh^2(m_B/2)) + L(sech^2(p_B/2))]`.
pub fn g_partial(k: f64, records: &[GeodesicRecord]) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    acc.add(4.0 * PI * PI);
    for r in records {
        let o = torus_ortho(k, r.length)?;
        let t = tanh_sq_half(o.m);
        let xb = (-r.length).exp();
        lasso_guard("g_partial", xb, t)?;
        acc.add(-16.0 * lasso(xb, t)?);
        acc.add(-8.0 * rogers_l(sech_sq_half(o.p))?);
    }
    Ok(acc.value())
}

/// Summand of `kind` for one geodesic of a torus with boundary `k`.
pub fn term_for_record(kind: IdentityKind, k: f64, record: &GeodesicRecord) -> Result<f64> {
    let b = record.length;
    match kind {
        IdentityKind::Thm11 => term_thm11(k, b),
        IdentityKind::Thm12 => term_thm12(b),
        IdentityKind::Thm15 => term_thm15(record.trace * record.trace),
        IdentityKind::Thm31 => {
            let o = torus_ortho(k, b)?;
            term_thm31(k, o.m, o.q)
        }
        IdentityKind::Four => {
            let c = 0.5 * k;
            let o = foursphere_ortho(c, 2.0 * b)?;
            term_four(c, FourArgs::Ortho { m: o.m, p: o.p })
        }
        IdentityKind::FourSimple => term_four(0.5 * k, FourArgs::Simple { a: 2.0 * b }),
        IdentityKind::FourCusped => term_four(0.0, FourArgs::Cusped { a: 2.0 * b }),
        IdentityKind::McShane => Ok(term_mcshane(b)),
    }
}

/// Heuristic size of the omitted tail beyond cutoff `L`:
/// `4 (cosh(k/2) + 1) e^{-L} (1 + L)`. Reported only, never used for
/// acceptance.
pub fn tail_estimate(k: f64, cutoff: f64) -> f64 {
    4.0 * ((0.5 * k).cosh() + 1.0) * (-cutoff).exp() * (1.0 + cutoff)
}

fn check_point(kind: IdentityKind, point: &TraceTriple) -> Result<()> {
    if kind.is_cusped() && !point.is_cusped() {
        return Err(domain(
            "evaluate",
            format!(
                "{kind} needs a cusped torus, got boundary length {}",
                point.k
            ),
        ));
    }
    if !kind.is_cusped() && point.k < MIN_LENGTH {
        return Err(domain(
            "evaluate",
            format!("{kind} needs a positive boundary length, got {}", point.k),
        ));
    }
    Ok(())
}

/// One row of a term table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermRow {
    pub slope: Slope,
    pub length: f64,
    pub term: f64,
    pub partial_sum: f64,
}

/// Summands over the enumerated spectrum, with running compensated sums.
pub fn term_table(kind: IdentityKind, point: &TraceTriple, cutoff: f64) -> Result<Vec<TermRow>> {
    check_point(kind, point)?;
    let records = enumerate_with_cap(point, cutoff, DEFAULT_RECORD_CAP)?;
    rows_for_records(kind, point.k, &records)
}

fn rows_for_records(
    kind: IdentityKind,
    k: f64,
    records: &[GeodesicRecord],
) -> Result<Vec<TermRow>> {
    let mut acc = CompensatedSum::new();
    records
        .iter()
        .map(|r| {
            let term = term_for_record(kind, k, r)?;
            acc.add(term);
            Ok(TermRow {
                slope: r.slope,
                length: r.length,
                term,
                partial_sum: acc.value(),
            })
        })
        .collect()
}

/// Outcome of summing one identity up to a length cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub parameters: BTreeMap<String, f64>,
    pub cutoff: f64,
    pub term_count: usize,
    pub partial_sum: f64,
    pub target: f64,
    /// `target - partial_sum`.
    pub defect: f64,
    pub tail_estimate: f64,
}

pub fn evaluate(kind: IdentityKind, point: &TraceTriple, cutoff: f64) -> Result<IdentityReport> {
    evaluate_with_cap(kind, point, cutoff, DEFAULT_RECORD_CAP)
}

pub fn evaluate_with_cap(
    kind: IdentityKind,
    point: &TraceTriple,
    cutoff: f64,
    cap: usize,
) -> Result<IdentityReport> {
    check_point(kind, point)?;
    let records = enumerate_with_cap(point, cutoff, cap)?;
    let mut acc = CompensatedSum::new();
    for r in &records {
        acc.add(term_for_record(kind, point.k, r)?);
    }
    let partial_sum = acc.value();
    let target = kind.target();

    let mut parameters = BTreeMap::new();
    parameters.insert("x".to_string(), point.x);
    parameters.insert("y".to_string(), point.y);
    parameters.insert("z".to_string(), point.z);
    parameters.insert("k".to_string(), point.k);
    if matches!(kind, IdentityKind::Four | IdentityKind::FourSimple) {
        parameters.insert("c".to_string(), 0.5 * point.k);
    }

    Ok(IdentityReport {
        kind,
        parameters,
        cutoff,
        term_count: records.len(),
        partial_sum,
        target,
        defect: target - partial_sum,
        tail_estimate: tail_estimate(point.k, cutoff),
    })
}
