use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the formula is defined.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// The lasso function was asked to evaluate at `x * y = 1`.
    #[error("lasso function is singular at x*y = 1 (x = {x}, y = {y})")]
    Singular { x: f64, y: f64 },

    /// The trace triple has `kappa > 0`, so the boundary is neither a
    /// geodesic nor a cusp.
    #[error("trace triple ({x}, {y}, {z}) has kappa = {kappa} > 0: boundary is not hyperbolic or cusped")]
    NotHyperbolic { x: f64, y: f64, z: f64, kappa: f64 },

    /// A group element with `|trace| <= 2` has no closed geodesic.
    #[error("trace {trace} <= 2 is not a hyperbolic element")]
    NotHyperbolicElement { trace: f64 },

    /// The character-variety quadratic for the third trace has no real root.
    #[error("no real structure: discriminant {discriminant} < 0")]
    NoRealStructure { discriminant: f64 },

    /// The solved triple is not a point of Teichmuller space.
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    /// Enumeration would produce more records than allowed.
    #[error("enumeration exceeded the record cap of {cap}")]
    TooManyRecords { cap: usize },

    /// Slope bookkeeping overflowed 64-bit integers.
    #[error("slope arithmetic overflowed")]
    SlopeOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
