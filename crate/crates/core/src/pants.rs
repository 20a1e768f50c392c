//! Hyperbolic trigonometry of three-holed spheres.
//!
//! A pair of pants with boundary lengths `a1, a2, a3` is glued from two
//! congruent right-angled hexagons with alternate sides `a_i / 2`. The
//! three remaining sides are the orthogeodesics `m_i` joining the two
//! boundaries other than `i`. Cutting a hexagon along the common
//! perpendicular from side `a_i / 2` to side `m_i` gives two right-angled
//! pentagons; twice that perpendicular is the simple orthogeodesic `d_i`
//! from boundary `i` to itself.
//!
//! With `C_i = cosh(a_i/2)` and `S_i = sinh(a_i/2)`:
//!
//! ```text
//! cosh(m_i) - 1   = (C_i + cosh((a_j - a_k)/2)) / (S_j S_k)
//! sinh^2(d_i / 2) = (C_j^2 + C_k^2 + 2 C_i C_j C_k) / S_i^2
//! ```
//!
//! Both are written so that no subtraction of nearly equal quantities
//! happens for long boundaries.

use serde::Serialize;

use crate::error::{domain, Result};

/// Lengths below this are treated as degenerate and rejected.
pub const MIN_LENGTH: f64 = 1e-12;

/// `arccosh(x)` as `log(x + sqrt((x - 1)(x + 1)))`.
pub fn arccosh(x: f64) -> f64 {
    (x + ((x - 1.0) * (x + 1.0)).sqrt()).ln()
}

/// `arccosh(1 + excess)`, accurate when `excess` is tiny.
pub fn arccosh_from_excess(excess: f64) -> f64 {
    (excess + (excess * (excess + 2.0)).sqrt()).ln_1p()
}

/// `tanh^2(len / 2)`.
#[inline]
pub fn tanh_sq_half(len: f64) -> f64 {
    let t = (0.5 * len).tanh();
    t * t
}

/// `sech^2(len / 2)`.
#[inline]
pub fn sech_sq_half(len: f64) -> f64 {
    let c = (0.5 * len).cosh();
    1.0 / (c * c)
}

fn check_length(func: &'static str, name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < MIN_LENGTH {
        return Err(domain(
            func,
            format!("{name} = {v} is not a positive length"),
        ));
    }
    Ok(())
}

/// All boundary and simple orthogeodesic lengths of a pair of pants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PantsGeometry {
    /// Boundary lengths `a_i`.
    pub boundary: [f64; 3],
    /// `ortho[i]` joins the two boundaries other than `i`.
    pub ortho: [f64; 3],
    /// `self_ortho[i]` runs from boundary `i` back to itself, separating
    /// the other two.
    pub self_ortho: [f64; 3],
}

impl PantsGeometry {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let boundary = [a1, a2, a3];
        for (i, &a) in boundary.iter().enumerate() {
            check_length("pants_geometry", ["a1", "a2", "a3"][i], a)?;
        }
        let c = boundary.map(|a| (0.5 * a).cosh());
        let s = boundary.map(|a| (0.5 * a).sinh());

        let mut ortho = [0.0; 3];
        let mut self_ortho = [0.0; 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let excess = (c[i] + (0.5 * (boundary[j] - boundary[k])).cosh()) / (s[j] * s[k]);
            ortho[i] = arccosh_from_excess(excess);
            let sinh_half = (c[j] * c[j] + c[k] * c[k] + 2.0 * c[i] * c[j] * c[k]).sqrt() / s[i];
            self_ortho[i] = 2.0 * sinh_half.asinh();
        }
        Ok(Self {
            boundary,
            ortho,
            self_ortho,
        })
    }
}

/// Orthogeodesics on a half of a four-holed sphere with boundary lengths
/// `(c, c, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FoursphereOrtho {
    /// From a length-`c` boundary to the length-`a` curve.
    pub m: f64,
    /// From the length-`a` curve to itself.
    pub p: f64,
    /// Between the two length-`c` boundaries.
    pub q: f64,
}

pub fn foursphere_ortho(c: f64, a: f64) -> Result<FoursphereOrtho> {
    let g = PantsGeometry::new(c, c, a)?;
    Ok(FoursphereOrtho {
        m: g.ortho[1],
        p: g.self_ortho[2],
        q: g.ortho[2],
    })
}

/// Orthogeodesics on a one-holed torus with boundary `k` cut open along a
/// simple closed geodesic of length `b`, i.e. on pants `(k, b, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusOrtho {
    /// From the boundary `K` to `B`.
    pub m: f64,
    /// From `K` to itself, disjoint from `B`.
    pub p: f64,
    /// From `B` to itself, crossing the torus.
    pub q: f64,
}

pub fn torus_ortho(k: f64, b: f64) -> Result<TorusOrtho> {
    let g = PantsGeometry::new(k, b, b)?;
    Ok(TorusOrtho {
        m: g.ortho[2],
        p: g.self_ortho[0],
        q: g.ortho[0],
    })
}

/// The unique `t > 0` with `sinh(t) * sinh(half_param) = 1`.
///
/// Pass `c / 2` for the four-holed sphere bound and `k / 4` for the torus.
pub fn guard_threshold(half_param: f64) -> Result<f64> {
    check_length("guard_threshold", "half_param", half_param)?;
    Ok((1.0 / half_param.sinh()).asinh())
}
