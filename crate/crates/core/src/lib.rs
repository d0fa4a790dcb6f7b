//! Verification toolkit for the Ionescu-Weitzenböck inequality
//! `a² + b² + c² ≥ 4√3·Δ`.
//!
//! The inequality is handled as an identity with an explicit defect term:
//! for vectors `u`, `v` of a Euclidean space,
//!
//! ```text
//! ‖u‖² + ‖v‖² + ‖u+v‖² = 2√3·(u∧v) + 2‖u + R(v)‖²
//! ```
//!
//! where `R` rotates by π/3 inside the plane spanned by `u` and `v`.
//! The crate computes both sides numerically and, for rational planar
//! inputs, exactly in `Q[√3]`. It also models triangles as points of the
//! `(I/2, 2Δ)` shape plane and checks the curvature identity for
//! unit-speed space curves.
//!
//! Modules:
//! - [`exact_field`]: rationals and the quadratic field `Q[√3]`.
//! - [`euclid`]: vectors, inner product, wedge, in-plane rotations.
//! - [`weitzenboeck`]: defect computations and triangle specialisation.
//! - [`shape_space`]: the half-disk model of triangle shapes.
//! - [`curve`]: unit-speed curve jets and the curvature identity.
//! - [`cli`]: the `wkit` command-line front end.

pub mod cli;
pub mod curve;
pub mod error;
pub mod euclid;
pub mod exact_field;
pub mod shape_space;
pub mod weitzenboeck;

pub use error::{Error, Result};
pub use euclid::{Scalar, SpanFrame, Vector};
pub use exact_field::{QSqrt3, Rational};

/// Default relative tolerance for numerical checks.
pub const DEFAULT_TOL: f64 = 1e-9;
