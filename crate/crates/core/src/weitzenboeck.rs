//! Ionescu-Weitzenböck as an identity.
//!
//! For `u`, `v` in a Euclidean space and `R` the rotation by π/3 of the
//! plane they span (oriented from `u` to `v`):
//!
//! ```text
//! ‖u‖² + ‖v‖² + ‖u+v‖² = 2√3·(u∧v) + 2‖u + R(v)‖²
//! ```
//!
//! The defect `2‖u + R(v)‖²` is computed two ways that share no code:
//! [`defect_intrinsic`] from inner product and wedge alone, and
//! [`defect_explicit`] by actually building `R(v)`. Each serves as an oracle
//! for the other. [`verify_exact`] checks the identity symbolically in
//! `Q[√3]` for rational planar vectors.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid::{inner, rotate_pi3, same_dim, wedge, wedge_signed, Vector};
use crate::exact_field::{rat, QSqrt3, Rational};

fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// `‖u‖² + ‖v‖² + ‖u+v‖²`.
pub fn lhs_sum(u: &Vector, v: &Vector) -> Result<f64> {
    let sum = u.checked_add(v)?;
    Ok(u.norm_sq() + v.norm_sq() + sum.norm_sq())
}

/// `2(‖u‖² + ‖v‖² + ⟨u,v⟩ − √3·u∧v)`; no rotation is constructed.
pub fn defect_intrinsic(u: &Vector, v: &Vector) -> Result<f64> {
    let uv = inner(u, v)?;
    let w = wedge(u, v)?;
    Ok(2.0 * (u.norm_sq() + v.norm_sq() + uv - sqrt3() * w))
}

/// `2‖u + R(v)‖²` with `R(v)` built explicitly. For `v = 0`, `R(0) = 0`.
pub fn defect_explicit(u: &Vector, v: &Vector) -> Result<f64> {
    same_dim(u, v)?;
    if v.is_zero() {
        return Ok(2.0 * u.norm_sq());
    }
    let rv = rotate_pi3(u, v)?;
    Ok(2.0 * (u + &rv).norm_sq())
}

/// Both sides of the identity for one pair of vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub lhs: f64,
    /// `2√3·u∧v`
    pub wedge_term: f64,
    pub defect_intrinsic: f64,
    pub defect_explicit: f64,
    /// `lhs − wedge_term − defect_explicit`
    pub residual: f64,
    pub equality_case: bool,
}

impl IdentityReport {
    /// `max(1, lhs)`, the scale all relative tolerances refer to.
    pub fn scale(&self) -> f64 {
        self.lhs.max(1.0)
    }

    /// Identity holds, both defect paths agree and the defect is nonnegative,
    /// all within `tol·max(1, lhs)`.
    pub fn passes(&self, tol: f64) -> bool {
        let bound = tol * self.scale();
        self.residual.abs() < bound
            && (self.defect_intrinsic - self.defect_explicit).abs() < bound
            && self.defect_intrinsic >= -bound
    }
}

/// Evaluates every term of the identity. `equality_case` is set when the
/// defect is at most `tol·max(1, lhs)`.
pub fn verify_identity(u: &Vector, v: &Vector, tol: f64) -> Result<IdentityReport> {
    same_dim(u, v)?;
    for x in [u, v] {
        if let Some(i) = x.coords().iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
    }
    let lhs = lhs_sum(u, v)?;
    let wedge_term = 2.0 * sqrt3() * wedge(u, v)?;
    let intrinsic = defect_intrinsic(u, v)?;
    let explicit = defect_explicit(u, v)?;
    Ok(IdentityReport {
        lhs,
        wedge_term,
        defect_intrinsic: intrinsic,
        defect_explicit: explicit,
        residual: lhs - wedge_term - explicit,
        equality_case: explicit <= tol * lhs.max(1.0),
    })
}

/// Exact residual `lhs − 2√3|w| − 2‖u + R(v)‖²` in `Q[√3]` for planar
/// rational `u`, `v`, where `w = u₀v₁ − u₁v₀`.
///
/// `R′(v) = ±(−v₁, v₀)` with the sign chosen so that `⟨u, R′(v)⟩ = −|w|`;
/// for `w = 0` the sign follows the same basis fallback as
/// [`crate::euclid::perp_rotate`]. The result is the exact zero for every
/// input.
pub fn verify_exact(u: &Vector<Rational>, v: &Vector<Rational>) -> Result<QSqrt3> {
    same_dim(u, v)?;
    let w = wedge_signed(u, v)?;
    let sum = u.checked_add(v)?;
    let lhs = u.norm_sq() + v.norm_sq() + sum.norm_sq();

    let (v0, v1) = (&v[0], &v[1]);
    let rv: [QSqrt3; 2] = if v.is_zero() {
        [QSqrt3::zero(), QSqrt3::zero()]
    } else {
        let sign = if w.is_positive() {
            rat(1, 1)
        } else if w.is_negative() {
            rat(-1, 1)
        } else if !v1.is_zero() {
            // e₀ is not parallel to v; its rejection points along sign(v₁)·(v₁, −v₀)
            if v1.is_positive() {
                rat(-1, 1)
            } else {
                rat(1, 1)
            }
        } else if v0.is_positive() {
            rat(1, 1)
        } else {
            rat(-1, 1)
        };
        let conormal = [-(v1 * &sign), v0 * &sign];
        let half = rat(1, 2);
        // R(v) = ½v + (√3/2)R′(v)
        [
            QSqrt3::new(v0 * &half, &conormal[0] * &half),
            QSqrt3::new(v1 * &half, &conormal[1] * &half),
        ]
    };

    let shifted = [
        &QSqrt3::from_rational(u[0].clone()) + &rv[0],
        &QSqrt3::from_rational(u[1].clone()) + &rv[1],
    ];
    let norm_sq = &(&shifted[0] * &shifted[0]) + &(&shifted[1] * &shifted[1]);
    let wedge_term = QSqrt3::new(Rational::zero(), rat(2, 1) * w.abs());
    let two = QSqrt3::from_rational(rat(2, 1));
    Ok(&(&QSqrt3::from_rational(lhs) - &wedge_term) - &(&two * &norm_sq))
}

/// Side lengths of a nondegenerate triangle; `c` is the base opposite the
/// angle between sides `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Triangle {
    a: f64,
    b: f64,
    c: f64,
}

impl Triangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if ![a, b, c].iter().all(|x| x.is_finite() && *x > 0.0) {
            return Err(Error::InvalidSide { a, b, c });
        }
        if !(a + b > c && b + c > a && c + a > b) {
            return Err(Error::TriangleInequality { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    pub fn equilateral(side: f64) -> Result<Self> {
        Self::new(side, side, side)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// `I = a² + b² + c²`.
    pub fn square_sum(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c
    }
}

/// Area from `16Δ² = 4a²b² − (a² + b² − c²)²`.
///
/// The radicand is evaluated in the factored form
/// `(a+b+c)(a+b−c)(c+a−b)(c−a+b)`, which is the same polynomial but does not
/// cancel catastrophically for needle-shaped triangles.
pub fn area_heron(t: &Triangle) -> Result<f64> {
    let [a, b, c] = t.sides();
    let radicand = (a + b + c) * (a + b - c) * (c + a - b) * (c - a + b);
    let scale = 4.0 * (a * b).powi(2);
    if radicand < 0.0 {
        if radicand < -1e-12 * scale {
            return Err(Error::NegativeRadicand(radicand));
        }
        return Ok(0.0);
    }
    Ok(radicand.sqrt() / 4.0)
}

/// `a² + b² + c² − 4√3·Δ`.
pub fn triangle_defect(t: &Triangle) -> Result<f64> {
    Ok(t.square_sum() - 4.0 * sqrt3() * area_heron(t)?)
}

/// Places `A = (0,0)`, `B = (c,0)` and `C` in the upper half-plane with
/// `‖BC‖ = a`, `‖CA‖ = b`, and returns `(u, v) = (B − A, C − B)`.
pub fn triangle_to_vectors(t: &Triangle) -> Result<(Vector, Vector)> {
    let [a, b, c] = t.sides();
    let cx = (b * b + c * c - a * a) / (2.0 * c);
    let cy = 2.0 * area_heron(t)? / c;
    let u = Vector::from_slice(&[c, 0.0])?;
    let v = Vector::from_slice(&[cx - c, cy])?;
    Ok((u, v))
}
