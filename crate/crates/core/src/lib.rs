//! Dilogarithm identities over the simple length spectrum of hyperbolic
//! one-holed tori and four-holed spheres.
//!
//! The crate is organised bottom-up:
//!
//! - [`dilog`]: Rogers dilogarithm, `Li2` and the lasso function.
//! - [`pants`]: orthogeodesics of three-holed spheres.
//! - [`moduli`]: trace triples and Fenchel-Nielsen coordinates.
//! - [`spectrum`]: enumeration of simple closed geodesics by slope.
//! - [`identities`]: term functions and series evaluation.
//! - [`selftest`]: the property battery behind `torus-identities selftest`.

pub mod dilog;
pub mod error;
pub mod identities;
pub mod moduli;
pub mod pants;
pub mod selftest;
pub mod spectrum;
pub mod summation;

pub use error::{Error, Result};
pub use identities::{evaluate, IdentityKind, IdentityReport, TermRow};
pub use moduli::{FenchelNielsen, TraceTriple};
pub use pants::PantsGeometry;
pub use spectrum::{enumerate, GeodesicRecord, Slope};
