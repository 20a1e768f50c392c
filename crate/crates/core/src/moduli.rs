//! Hyperbolic one-holed tori as points of the relative character variety.
//!
//! A marked structure is recorded by the traces `(x, y, z) = (tr A, tr B,
//! tr AB)` of a generating pair. The commutator satisfies
//! `tr[A, B] = x^2 + y^2 + z^2 - xyz - 2 = -2 cosh(k/2)`, so the level set
//! `kappa = x^2 + y^2 + z^2 - xyz = 2 - 2 cosh(k/2)` fixes the boundary
//! length `k`. `kappa = 0` is the once-punctured torus.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::pants::{arccosh_from_excess, MIN_LENGTH};

/// Relative tolerance (against `xyz`) under which a positive `kappa` is
/// attributed to rounding and read as a cusp.
pub const CUSP_KAPPA_TOL: f64 = 1e-12;

/// Error-free product: `a * b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `x^2 + y^2 + z^2 - xyz`, evaluated with error-free products so that the
/// cancellation between the squares and the triple product costs nothing
/// beyond the rounding of the inputs themselves.
pub fn kappa(x: f64, y: f64, z: f64) -> f64 {
    let (xx, exx) = two_prod(x, x);
    let (yy, eyy) = two_prod(y, y);
    let (zz, ezz) = two_prod(z, z);
    let (xy, exy) = two_prod(x, y);
    let (xyz, exyz) = two_prod(xy, z);
    let (exy_z, eexy_z) = two_prod(exy, z);
    let terms = [xx, yy, zz, -xyz, exx, eyy, ezz, -exyz, -exy_z, -eexy_z];
    let acc: crate::summation::CompensatedSum = terms.into_iter().collect();
    acc.value()
}

fn hyperbolic_boundary(x: f64, y: f64, z: f64, kap: f64) -> Result<f64> {
    if kap < 0.0 {
        // cosh(k/2) - 1 = -kappa/2
        Ok(2.0 * arccosh_from_excess(-0.5 * kap))
    } else if kap <= CUSP_KAPPA_TOL * (x * y * z).abs() {
        Ok(0.0)
    } else {
        Err(Error::NotHyperbolic {
            x,
            y,
            z,
            kappa: kap,
        })
    }
}

/// Boundary length `k = 2 arccosh((2 - kappa)/2)` of the torus with traces
/// `(x, y, z)`.
pub fn boundary_length(x: f64, y: f64, z: f64) -> Result<f64> {
    hyperbolic_boundary(x, y, z, kappa(x, y, z))
}

/// Length `2 arccosh(tr/2)` of the closed geodesic of an element with
/// trace `tr`.
pub fn length_from_trace(tr: f64) -> Result<f64> {
    if !(tr > 2.0) || !tr.is_finite() {
        return Err(Error::NotHyperbolicElement { trace: tr });
    }
    Ok(2.0 * arccosh_from_excess(0.5 * tr - 1.0))
}

/// A marked hyperbolic one-holed (or once-punctured) torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// `x^2 + y^2 + z^2 - xyz` of the stored coordinates.
    pub kappa: f64,
    /// Boundary length; `0` for a cusp.
    pub k: f64,
}

impl TraceTriple {
    /// Validates `x, y, z > 2`, `kappa <= 0` and derives `k` from `kappa`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::check_traces(x, y, z)?;
        let kap = kappa(x, y, z);
        let k = hyperbolic_boundary(x, y, z, kap)?;
        Ok(Self {
            x,
            y,
            z,
            kappa: kap,
            k,
        })
    }

    /// As [`TraceTriple::new`] but trusts a boundary length that is known
    /// exactly from the construction.
    pub fn with_boundary(x: f64, y: f64, z: f64, k: f64) -> Result<Self> {
        Self::check_traces(x, y, z)?;
        if !(k >= 0.0) || !k.is_finite() {
            return Err(domain("TraceTriple", format!("boundary length {k} < 0")));
        }
        Ok(Self {
            x,
            y,
            z,
            kappa: kappa(x, y, z),
            k,
        })
    }

    fn check_traces(x: f64, y: f64, z: f64) -> Result<()> {
        for (name, v) in [("x", x), ("y", y), ("z", z)] {
            if !v.is_finite() || v <= 2.0 {
                return Err(domain(
                    "TraceTriple",
                    format!("{name} = {v}: every trace must exceed 2"),
                ));
            }
        }
        Ok(())
    }

    pub fn is_cusped(&self) -> bool {
        self.k == 0.0
    }

    pub fn traces(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Solve `z^2 - xyz + (x^2 + y^2 - kappa) = 0` for the smaller root, where
/// `kappa = 2 - 2 cosh(k/2)`.
pub fn from_traces(x: f64, y: f64, k: f64) -> Result<TraceTriple> {
    for (name, v) in [("x", x), ("y", y)] {
        if !v.is_finite() || v <= 2.0 {
            return Err(domain("from_traces", format!("{name} = {v} must exceed 2")));
        }
    }
    if !(k >= 0.0) || !k.is_finite() {
        return Err(domain("from_traces", format!("k = {k} must be >= 0")));
    }
    let kap = 2.0 - 2.0 * (0.5 * k).cosh();
    let constant = x * x + y * y - kap;
    let xy = x * y;
    let discriminant = xy * xy - 4.0 * constant;
    if discriminant < 0.0 {
        return Err(Error::NoRealStructure { discriminant });
    }
    // Vieta for the small root avoids cancelling xy against the square root
    let large = 0.5 * (xy + discriminant.sqrt());
    let z = constant / large;
    if z <= 2.0 {
        return Err(Error::InvalidStructure(format!(
            "smaller root z = {z} is not > 2"
        )));
    }
    TraceTriple::with_boundary(x, y, nearest_root(x, y, z, k), k)
}

/// Among the few floats around `z`, the one whose boundary length is
/// closest to `k`. Each ulp of `z` moves the length by about
/// `xy ulp(z) / sinh(k/2)`, so this is the best a stored triple can do.
fn nearest_root(x: f64, y: f64, z: f64, k: f64) -> f64 {
    let miss = |z: f64| match boundary_length(x, y, z) {
        Ok(l) => (l - k).abs(),
        Err(_) => f64::INFINITY,
    };
    let mut best = (miss(z), z);
    let (mut down, mut up) = (z, z);
    for _ in 0..4 {
        down = next_down(down);
        up = next_up(up);
        for c in [down, up] {
            let m = miss(c);
            if m < best.0 && c > 2.0 {
                best = (m, c);
            }
        }
    }
    best.1
}

fn next_up(v: f64) -> f64 {
    f64::from_bits(v.to_bits() + 1)
}

fn next_down(v: f64) -> f64 {
    f64::from_bits(v.to_bits() - 1)
}

/// 2x2 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn diag(a: f64, d: f64) -> Self {
        Mat2([[a, 0.0], [0.0, d]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2([[d, -b], [-c, a]])
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2([
            [a * e + b * g, a * f + b * h],
            [c * e + d * g, c * f + d * h],
        ])
    }
}

/// Fenchel-Nielsen coordinates relative to a simple closed geodesic `B`
/// (here realised by the generator `A`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FenchelNielsen {
    /// Length of the cutting curve.
    pub b: f64,
    /// Twist, in length units. A twist by `b` is a Dehn twist.
    pub t: f64,
    /// Boundary length; `0` for a cusp.
    pub k: f64,
}

impl FenchelNielsen {
    pub fn new(b: f64, t: f64, k: f64) -> Result<Self> {
        if !b.is_finite() || b < MIN_LENGTH {
            return Err(domain("FenchelNielsen", format!("b = {b} must be > 0")));
        }
        if !t.is_finite() {
            return Err(domain("FenchelNielsen", format!("twist {t} is not finite")));
        }
        if !k.is_finite() || !(k >= 0.0) {
            return Err(domain("FenchelNielsen", format!("k = {k} must be >= 0")));
        }
        Ok(Self { b, t, k })
    }

    /// `sinh(s)` of the half-distance parameter of `B_0`, chosen so that
    /// `sinh(b/2) sinh(s) = cosh(k/4)`, which makes `tr[A, B] = -2 cosh(k/2)`.
    fn crossing_sinh(&self) -> f64 {
        (0.25 * self.k).cosh() / (0.5 * self.b).sinh()
    }

    /// The generators `(A, B)`.
    ///
    /// `A` translates by `b` along the imaginary axis. `B_0` is the symmetric
    /// hyperbolic matrix whose axis crosses that of `A` perpendicularly, and
    /// the twist is applied as `B = B_0 A_t` with `A_t` the translation by `t`
    /// along the axis of `A`.
    pub fn generators(&self) -> (Mat2, Mat2) {
        let half_b = 0.5 * self.b;
        let a = Mat2::diag(half_b.exp(), (-half_b).exp());
        let sh = self.crossing_sinh();
        let ch = (1.0 + sh * sh).sqrt();
        let b0 = Mat2([[ch, sh], [sh, ch]]);
        let half_t = 0.5 * self.t;
        let twist = Mat2::diag(half_t.exp(), (-half_t).exp());
        (a, b0 * twist)
    }

    /// Closed-form traces of `(A, B, AB)`.
    pub fn trace_triple(&self) -> Result<TraceTriple> {
        let sh = self.crossing_sinh();
        let ch = (1.0 + sh * sh).sqrt();
        let x = 2.0 * (0.5 * self.b).cosh();
        let y = 2.0 * ch * (0.5 * self.t).cosh();
        let z = 2.0 * ch * (0.5 * (self.b + self.t)).cosh();
        TraceTriple::with_boundary(x, y, z, self.k)
    }
}

pub fn from_fenchel_nielsen(fenchel_nielsen: FenchelNielsen) -> Result<TraceTriple> {
    fenchel_nielsen.trace_triple()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_length_examples() {
        assert_eq!(boundary_length(3.0, 3.0, 3.0).unwrap(), 0.0);
        assert_eq!(boundary_length(3.0, 3.0, 6.0).unwrap(), 0.0);
        let k = boundary_length(3.0, 3.0, 4.0).unwrap();
        assert!((k - 2.0 * 2.0_f64.acosh()).abs() < 1e-15);
        assert!(matches!(
            boundary_length(3.0, 3.0, 2.5),
            Err(Error::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn from_traces_examples() {
        let t = from_traces(3.0, 3.0, 2.0 * 2.0_f64.acosh()).unwrap();
        assert!((t.z - 4.0).abs() < 1e-14);
        let t = from_traces(3.0, 3.0, 0.0).unwrap();
        assert!((t.z - 3.0).abs() < 1e-14);
        let t = from_traces(4.0, 4.0, 0.0).unwrap();
        let want = (16.0 - 128.0_f64.sqrt()) / 2.0;
        assert!((t.z - want).abs() < 1e-14);
        // oracle: the Markov-type cusp equation
        assert!((16.0 + 16.0 + t.z * t.z - 16.0 * t.z).abs() < 1e-12);
    }

    #[test]
    fn from_traces_errors() {
        assert!(matches!(
            from_traces(2.1, 2.1, 1.0),
            Err(Error::NoRealStructure { .. })
        ));
        assert!(from_traces(2.0, 5.0, 1.0).is_err());
        assert!(from_traces(3.0, 3.0, -1.0).is_err());
    }

    #[test]
    fn markov_pair_of_roots() {
        let t = from_traces(3.5, 7.0, 1.3).unwrap();
        let other = t.x * t.y - t.z;
        assert!((kappa(t.x, t.y, other) - t.kappa).abs() < 1e-10 * t.x * t.y * other);
        let kap = 2.0 - 2.0 * (0.65_f64).cosh();
        let disc = (t.x * t.y).powi(2) - 4.0 * (t.x * t.x + t.y * t.y - kap);
        let large = 0.5 * (t.x * t.y + disc.sqrt());
        assert!((other - large).abs() < 1e-10);
    }

    #[test]
    fn length_from_trace_examples() {
        assert!((length_from_trace(3.0).unwrap() - 1.924_847_300_238_487).abs() < 1e-13);
        assert!((length_from_trace(2.0 * 5.0_f64.cosh()).unwrap() - 10.0).abs() < 1e-13);
        let small = length_from_trace(2.0 + 1e-12).unwrap();
        assert!(small > 0.0 && small < 1e-5);
        assert!(matches!(
            length_from_trace(2.0),
            Err(Error::NotHyperbolicElement { .. })
        ));
        assert!(length_from_trace(-3.0).is_err());
    }

    #[test]
    fn fenchel_nielsen_cusp_relation() {
        let fnc = FenchelNielsen::new(1.3, 0.0, 0.0).unwrap();
        let t = fnc.trace_triple().unwrap();
        assert_eq!(t.x, 2.0 * (0.65_f64).cosh());
        let rel = (t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z).abs();
        assert!(rel < 1e-12 * t.x * t.y * t.z);
        assert!(t.is_cusped());
    }

    #[test]
    fn twist_by_length_is_markov_move() {
        let p = FenchelNielsen::new(1.1, 0.4, 0.8).unwrap();
        let q = FenchelNielsen::new(1.1, 1.5, 0.8).unwrap();
        let (s, u) = (p.trace_triple().unwrap(), q.trace_triple().unwrap());
        assert!((u.y - s.z).abs() < 1e-12);
        assert!((u.z - (s.x * s.z - s.y)).abs() < 1e-11);
    }

    #[test]
    fn zero_twist_minimises_y() {
        let base = FenchelNielsen::new(2.0, 0.0, 1.0)
            .unwrap()
            .trace_triple()
            .unwrap();
        for &t in &[-1.0, -0.1, 0.3, 2.0] {
            let other = FenchelNielsen::new(2.0, t, 1.0)
                .unwrap()
                .trace_triple()
                .unwrap();
            assert!(other.y > base.y);
        }
    }

    #[test]
    fn matrix_oracle() {
        for &(b, t, k) in &[
            (0.5, 0.2, 0.3),
            (1.7, -0.9, 2.5),
            (3.0, 3.0, 0.0),
            (2.2, 1.0, 4.0),
        ] {
            let fnc = FenchelNielsen::new(b, t, k).unwrap();
            let (a, bm) = fnc.generators();
            assert!((a.det() - 1.0).abs() < 1e-12);
            assert!((bm.det() - 1.0).abs() < 1e-12);
            let tri = fnc.trace_triple().unwrap();
            assert!((a.trace() - tri.x).abs() < 1e-12);
            assert!((bm.trace() - tri.y).abs() < 1e-12);
            assert!(((a * bm).trace() - tri.z).abs() < 1e-12);
            let ab_inv = (a * bm.inverse()).trace();
            assert!((a.trace() * bm.trace() - (a * bm).trace() - ab_inv).abs() < 1e-9);
            let comm = a * bm * a.inverse() * bm.inverse();
            assert!((comm.trace() - (tri.kappa - 2.0)).abs() < 1e-9);
            assert!((comm.trace() + 2.0 * (0.5 * k).cosh()).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(TraceTriple::new(2.0, 3.0, 3.0).is_err());
        assert!(TraceTriple::new(3.0, f64::NAN, 3.0).is_err());
        assert!(FenchelNielsen::new(0.0, 0.0, 1.0).is_err());
        assert!(FenchelNielsen::new(1.0, 0.0, -1.0).is_err());
    }
}
