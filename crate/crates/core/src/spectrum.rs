//! Simple closed geodesics of a one-holed torus.
//!
//! Essential simple closed curves are indexed by primitive slopes `p/q`.
//! Three slopes pairwise at intersection number one form a triangle of the
//! Farey tessellation, and the traces on a triangle are a trace triple.
//! Crossing an edge `{u, v}` away from `w` produces the slope `u +- v`
//! (whichever is not `w`) with trace `tr(u) tr(v) - tr(w)`. The
//! triangles form a tree, and traces grow monotonically away from the
//! triangle that minimises the largest trace, which lets a breadth-first
//! walk prune whole subtrees once a trace exceeds the cutoff.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::moduli::{length_from_trace, FenchelNielsen, Mat2, TraceTriple};

pub const DEFAULT_RECORD_CAP: usize = 10_000_000;

/// Largest `|p|` or `q` accepted by [`brute_force_trace`].
pub const BRUTE_FORCE_MAX: i64 = 50;

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A primitive slope `p/q` in canonical form: `q >= 1`, or `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ONE: Slope = Slope { p: 1, q: 1 };

    /// Canonicalises the sign; errors if `(p, q)` is not primitive.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(domain("Slope", format!("{p}/{q} is not primitive")));
        }
        Ok(Self::canonical(p, q))
    }

    /// Sign normalisation for an already primitive pair.
    fn canonical(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// One simple closed geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicRecord {
    pub slope: Slope,
    pub trace: f64,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    X,
    Y,
    Z,
}

impl Coordinate {
    fn index(self) -> usize {
        match self {
            Coordinate::X => 0,
            Coordinate::Y => 1,
            Coordinate::Z => 2,
        }
    }
}

/// Replace the chosen coordinate by the product of the other two minus
/// itself. Preserves `kappa`.
pub fn markov_child(traces: [f64; 3], position: Coordinate) -> [f64; 3] {
    let i = position.index();
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let mut out = traces;
    out[i] = traces[j] * traces[k] - traces[i];
    out
}

/// A triangle of the Farey tree with its traces.
#[derive(Debug, Clone, Copy)]
struct MarkedTriangle {
    slopes: [Slope; 3],
    traces: [f64; 3],
}

/// Slope across the edge `{u, v}` from `w`.
fn flip_slope(u: Slope, v: Slope, w: Slope) -> Result<Slope> {
    let sum = (
        u.p.checked_add(v.p).ok_or(Error::SlopeOverflow)?,
        u.q.checked_add(v.q).ok_or(Error::SlopeOverflow)?,
    );
    let sum = Slope::canonical(sum.0, sum.1);
    if sum != w {
        return Ok(sum);
    }
    let diff = (
        u.p.checked_sub(v.p).ok_or(Error::SlopeOverflow)?,
        u.q.checked_sub(v.q).ok_or(Error::SlopeOverflow)?,
    );
    Ok(Slope::canonical(diff.0, diff.1))
}

impl MarkedTriangle {
    fn root(triple: &TraceTriple) -> Self {
        Self {
            slopes: [Slope::ZERO, Slope::INFINITY, Slope::ONE],
            traces: triple.traces(),
        }
    }

    fn flip(&self, i: usize) -> Result<Self> {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut out = *self;
        out.slopes[i] = flip_slope(self.slopes[j], self.slopes[k], self.slopes[i])?;
        out.traces[i] = self.traces[j] * self.traces[k] - self.traces[i];
        Ok(out)
    }

    /// Walk downhill until no move lowers the largest trace.
    fn reduce(mut self) -> Result<Self> {
        loop {
            let i = (0..3)
                .max_by(|&a, &b| self.traces[a].total_cmp(&self.traces[b]))
                .unwrap();
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let replaced = self.traces[j] * self.traces[k] - self.traces[i];
            if replaced < self.traces[i] {
                self = self.flip(i)?;
            } else {
                return Ok(self);
            }
        }
    }
}

/// The locally minimal triple reached by trace-decreasing Markov moves.
pub fn reduce_to_minimal(triple: &TraceTriple) -> Result<TraceTriple> {
    let t = MarkedTriangle::root(triple).reduce()?;
    TraceTriple::with_boundary(t.traces[0], t.traces[1], t.traces[2], triple.k)
}

/// All simple closed geodesics of length `<= length_cutoff`.
///
/// Slopes are read in the marking of `triple`: `x`, `y`, `z` are the
/// traces of `0/1`, `1/0` and `1/1`. Records are sorted by length, then
/// slope.
pub fn enumerate(triple: &TraceTriple, length_cutoff: f64) -> Result<Vec<GeodesicRecord>> {
    enumerate_with_cap(triple, length_cutoff, DEFAULT_RECORD_CAP)
}

pub fn enumerate_with_cap(
    triple: &TraceTriple,
    length_cutoff: f64,
    cap: usize,
) -> Result<Vec<GeodesicRecord>> {
    if !(length_cutoff > 0.0) || !length_cutoff.is_finite() {
        return Err(domain(
            "enumerate",
            format!("cutoff {length_cutoff} must be positive and finite"),
        ));
    }
    let root = MarkedTriangle::root(triple).reduce()?;
    let mut records = Vec::new();
    let push = |slope: Slope, trace: f64, records: &mut Vec<GeodesicRecord>| -> Result<()> {
        let length = length_from_trace(trace)?;
        if length <= length_cutoff {
            if records.len() >= cap {
                return Err(Error::TooManyRecords { cap });
            }
            records.push(GeodesicRecord {
                slope,
                trace,
                length,
            });
        }
        Ok(())
    };
    for i in 0..3 {
        push(root.slopes[i], root.traces[i], &mut records)?;
    }

    // Queue entries are (triangle, vertex to flip). The root is flipped at
    // all three vertices, every later triangle at the two vertices other
    // than the one it just created.
    let mut queue: VecDeque<(MarkedTriangle, usize)> = (0..3).map(|i| (root, i)).collect();
    while let Some((tri, i)) = queue.pop_front() {
        let child = tri.flip(i)?;
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let new_trace = child.traces[i];
        push(child.slopes[i], new_trace, &mut records)?;
        let grows = new_trace >= tri.traces[j] && new_trace >= tri.traces[k];
        if grows && length_from_trace(new_trace)? > length_cutoff {
            continue;
        }
        queue.push_back((child, j));
        queue.push_back((child, k));
    }

    records.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.slope.cmp(&b.slope)));
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    A,
    B,
}

/// Christoffel word with `a_count` letters `A` and `b_count` letters `B`,
/// built by descending the Stern-Brocot tree and concatenating the words
/// of the two parents.
fn christoffel_word(a_count: i64, b_count: i64) -> Vec<Letter> {
    let mut left = (1_i64, 0_i64, vec![Letter::A]);
    let mut right = (0_i64, 1_i64, vec![Letter::B]);
    if (a_count, b_count) == (1, 0) {
        return left.2;
    }
    if (a_count, b_count) == (0, 1) {
        return right.2;
    }
    loop {
        let (ma, mb) = (left.0 + right.0, left.1 + right.1);
        let mut word = left.2.clone();
        word.extend_from_slice(&right.2);
        if (ma, mb) == (a_count, b_count) {
            return word;
        }
        // compare b_count/a_count with mb/ma
        if b_count * ma < mb * a_count {
            right = (ma, mb, word);
        } else {
            left = (ma, mb, word);
        }
    }
}

/// `|tr|` of the primitive word with slope `p/q` in the generators of the
/// Fenchel-Nielsen recipe, multiplied out explicitly.
///
/// Slope `p/q` has `q` letters `A` and `|p|` letters `B^sign(p)`.
pub fn brute_force_trace(fenchel_nielsen: &FenchelNielsen, slope: Slope) -> Result<f64> {
    let Slope { p, q } = slope;
    if gcd(p, q) != 1 || q < 0 || (q == 0 && p != 1) {
        return Err(domain(
            "brute_force_trace",
            format!("{p}/{q} is not a canonical primitive slope"),
        ));
    }
    if p.abs() > BRUTE_FORCE_MAX || q > BRUTE_FORCE_MAX {
        return Err(domain(
            "brute_force_trace",
            format!("{p}/{q} exceeds the oracle range {BRUTE_FORCE_MAX}"),
        ));
    }
    let (a, b) = fenchel_nielsen.generators();
    let b = if p < 0 { b.inverse() } else { b };
    let product = christoffel_word(q, p.abs())
        .into_iter()
        .fold(Mat2::IDENTITY, |acc, letter| match letter {
            Letter::A => acc * a,
            Letter::B => acc * b,
        });
    Ok(product.trace().abs())
}

/// Every canonical primitive slope with `max(|p|, q) <= n`, sorted.
pub fn primitive_slopes(n: i64) -> Vec<Slope> {
    let mut out = Vec::new();
    if n >= 1 {
        out.push(Slope::INFINITY);
    }
    for q in 1..=n {
        for p in -n..=n {
            if gcd(p, q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out.sort();
    out
}

/// Number of reduced fractions in `[0, 1]` with denominator `<= n`.
pub fn farey_count(n: u64) -> u64 {
    1 + (1..=n).map(totient).sum::<u64>()
}

fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            while m % f == 0 {
                m /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
