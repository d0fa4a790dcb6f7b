//! Euclidean vectors, the oriented wedge `u∧v` and the in-plane rotations
//! `R′` (by π/2) and `R` (by π/3).
//!
//! Both rotations act in the plane spanned by `u` and `v`, oriented from `u`
//! to `v`, so that `u∧v ≥ 0` and `⟨u, R′(v)⟩ = −u∧v`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::Num;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_field::Rational;

/// Relative Gram-Schmidt residual below which `u` and `v` count as collinear.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Coordinate type of a [`Vector`].
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug {
    fn is_finite(&self) -> bool;
}

impl Scalar for f64 {
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Rational {
    fn is_finite(&self) -> bool {
        true
    }
}

/// A vector of dimension at least 2 with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S = f64> {
    coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if let Some(i) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coords })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![S::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.coords
            .iter()
            .fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }
}

impl Vector<f64> {
    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Standard basis vector `e_k` (0-based).
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        let mut coords = vec![0.0; dim];
        coords[k] = 1.0;
        Self::new(coords)
    }
}

pub(crate) fn same_dim<S>(u: &Vector<S>, v: &Vector<S>) -> Result<()> {
    if u.coords.len() == v.coords.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: u.coords.len(),
            right: v.coords.len(),
        })
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

// Operator forms panic on dimension mismatch; use the `checked_*` methods
// for untrusted input.
impl<S: Scalar> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: &Vector<S>) -> Vector<S> {
        self.checked_add(rhs).expect("vector dimensions differ")
    }
}

impl<S: Scalar> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        self.checked_sub(rhs).expect("vector dimensions differ")
    }
}

impl Mul<&Vector<f64>> for f64 {
    type Output = Vector<f64>;
    fn mul(self, rhs: &Vector<f64>) -> Vector<f64> {
        rhs.scale(&self)
    }
}

impl<S: Scalar> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Serialize> Serialize for Vector<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.coords.serialize(serializer)
    }
}

impl fmt::Display for Vector<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Standard dot product.
pub fn inner<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<S> {
    same_dim(u, v)?;
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Unsigned area of the parallelogram spanned by `u` and `v`,
/// `√(‖u‖²‖v‖² − ⟨u,v⟩²)`.
///
/// Evaluated as the root of the sum of squared 2×2 minors
/// `u_i v_j − u_j v_i`, which equals the Gram form exactly in real
/// arithmetic but keeps absolute error at `O(ε‖u‖‖v‖)` for nearly collinear
/// inputs. Collinear inputs give exactly 0.
pub fn wedge(u: &Vector<f64>, v: &Vector<f64>) -> Result<f64> {
    same_dim(u, v)?;
    let (a, b) = (u.coords(), v.coords());
    // Scale out magnitudes so huge or tiny coordinates do not overflow.
    let su = a.iter().fold(0f64, |m, x| m.max(x.abs()));
    let sv = b.iter().fold(0f64, |m, x| m.max(x.abs()));
    if su == 0.0 || sv == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let minor = (a[i] / su) * (b[j] / sv) - (a[j] / su) * (b[i] / sv);
            sum += minor * minor;
        }
    }
    Ok(sum.max(0.0).sqrt() * (su * sv))
}

/// Same quantity through the Gram determinant with clamping at zero.
///
/// Loses accuracy near collinearity; kept as an independent cross-check of
/// [`wedge`].
pub fn wedge_gram(u: &Vector<f64>, v: &Vector<f64>) -> Result<f64> {
    let uv = inner(u, v)?;
    Ok((u.norm_sq() * v.norm_sq() - uv * uv).max(0.0).sqrt())
}

/// Planar determinant `u₀v₁ − u₁v₀`, positive when `v` is counterclockwise
/// from `u`.
pub fn wedge_signed<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<S> {
    same_dim(u, v)?;
    if u.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: u.dim(),
        });
    }
    Ok(u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone())
}

/// `v` together with `R′(v)`, its rotation by π/2 in the plane spanned by
/// `u` and `v` oriented from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanFrame {
    pub anchor: Vector<f64>,
    pub conormal: Vector<f64>,
    /// `u` and `v` were collinear; the conormal comes from the basis fallback.
    pub degenerate: bool,
}

/// Builds `R′(v)`: `‖R′(v)‖ = ‖v‖`, `⟨R′(v), v⟩ = 0` and
/// `⟨u, R′(v)⟩ = −u∧v`.
///
/// The conormal is `−(‖v‖/‖w‖)·w` with `w` the component of `u` orthogonal
/// to `v`. If `‖w‖ ≤ 1e-12·‖u‖` the pair is collinear and the conormal is
/// built from the first standard basis vector not parallel to `v`.
pub fn perp_rotate(u: &Vector<f64>, v: &Vector<f64>) -> Result<SpanFrame> {
    same_dim(u, v)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let v_norm = v.norm();
    let w = reject(u, v);
    let w_norm = w.norm();
    if w_norm > COLLINEAR_TOL * u.norm() {
        return Ok(SpanFrame {
            anchor: v.clone(),
            conormal: w.scale(&(-v_norm / w_norm)),
            degenerate: false,
        });
    }
    Ok(SpanFrame {
        anchor: v.clone(),
        conormal: fallback_conormal(v),
        degenerate: true,
    })
}

/// Component of `x` orthogonal to `v`, orthogonalised twice so the result
/// carries no residual `v` component even when it is tiny.
fn reject(x: &Vector<f64>, v: &Vector<f64>) -> Vector<f64> {
    let vv = v.norm_sq();
    let once = x - &v.scale(&(dot(x, v) / vv));
    &once - &v.scale(&(dot(&once, v) / vv))
}

fn dot(u: &Vector<f64>, v: &Vector<f64>) -> f64 {
    u.coords().iter().zip(v.coords()).map(|(a, b)| a * b).sum()
}

/// First `e_k` whose rejection from `v` is not negligible, rescaled to `‖v‖`.
fn fallback_conormal(v: &Vector<f64>) -> Vector<f64> {
    const NOT_PARALLEL: f64 = 1e-6;
    let v_norm = v.norm();
    let mut best: Option<Vector<f64>> = None;
    for k in 0..v.dim() {
        let e = Vector::basis(v.dim(), k).expect("dimension >= 2");
        let r = reject(&e, v);
        let r_norm = r.norm();
        if r_norm > NOT_PARALLEL {
            return r.scale(&(v_norm / r_norm));
        }
        if best.as_ref().is_none_or(|b| r_norm > b.norm()) {
            best = Some(r);
        }
    }
    // Unreachable for n ≥ 2: at most one basis vector can be within 1e-6 of v.
    let r = best.expect("dimension >= 2");
    let r_norm = r.norm();
    r.scale(&(v_norm / r_norm))
}

/// `R(v) = ½v + (√3/2)·R′(v)`, the rotation of `v` by π/3 in the plane
/// oriented from `u` to `v`.
pub fn rotate_pi3(u: &Vector<f64>, v: &Vector<f64>) -> Result<Vector<f64>> {
    let frame = perp_rotate(u, v)?;
    let half_root3 = 3f64.sqrt() / 2.0;
    Ok(&v.scale(&0.5) + &frame.conormal.scale(&half_root3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::rat;
    use proptest::prelude::*;

    fn vf(c: &[f64]) -> Vector {
        Vector::from_slice(c).unwrap()
    }

    fn close(a: &Vector, b: &[f64], tol: f64) -> bool {
        a.dim() == b.len() && a.coords().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Vector::from_slice(&[1.0]), Err(Error::DimensionTooSmall(1)));
        assert_eq!(
            Vector::from_slice(&[1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        );
        assert_eq!(
            Vector::from_slice(&[f64::INFINITY, 0.0]),
            Err(Error::NonFinite(0))
        );
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&vf(&[1., 0.]), &vf(&[0., 1.])).unwrap(), 0.0);
        assert_eq!(inner(&vf(&[1., 2.]), &vf(&[3., 4.])).unwrap(), 11.0);
        assert_eq!(inner(&vf(&[1., 0., 0.]), &vf(&[1., 1., 0.])).unwrap(), 1.0);
        assert_eq!(
            inner(&vf(&[1., 0.]), &vf(&[1., 0., 0.])),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inner_on_rationals() {
        let u = Vector::new(vec![rat(1, 2), rat(-1, 3)]).unwrap();
        let v = Vector::new(vec![rat(2, 1), rat(3, 1)]).unwrap();
        assert_eq!(inner(&u, &v).unwrap(), rat(0, 1));
        assert_eq!(wedge_signed(&u, &v).unwrap(), rat(13, 6));
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&vf(&[2., 0., 0.]), &vf(&[3., 0., 0.])).unwrap(), 0.0);
        assert_eq!(wedge(&vf(&[1., 0.]), &vf(&[0., 1.])).unwrap(), 1.0);
        assert_eq!(wedge(&vf(&[1., 0., 0.]), &vf(&[1., 1., 0.])).unwrap(), 1.0);
        assert_eq!(wedge(&vf(&[0., 0.]), &vf(&[1., 1.])).unwrap(), 0.0);
        assert!(wedge(&vf(&[1., 0.]), &vf(&[1., 0., 0.])).is_err());
    }

    #[test]
    fn wedge_near_collinear_keeps_precision() {
        let u = vf(&[1.0, 2.0, 3.0]);
        let v = vf(&[2.0, 4.0, 6.0 + 1e-9]);
        // exact value: ‖(1,2,3) × (0,0,1e-9)‖ = 1e-9·√5
        let expected = 1e-9 * 5f64.sqrt();
        let got = wedge(&u, &v).unwrap();
        assert!((got - expected).abs() < 1e-6 * expected, "{got} vs {expected}");
    }

    #[test]
    fn perp_rotate_examples() {
        let f = perp_rotate(&vf(&[1., 0.]), &vf(&[0., 1.])).unwrap();
        assert!(!f.degenerate);
        assert!(close(&f.conormal, &[-1., 0.], 1e-15));

        let f = perp_rotate(&vf(&[1., 0., 0.]), &vf(&[2., 0., 0.])).unwrap();
        assert!(f.degenerate);
        assert!(close(&f.conormal, &[0., 2., 0.], 1e-15));

        // orientation flips with argument order: ⟨u, c⟩ = −1 forces c = (0, −1)
        let f = perp_rotate(&vf(&[0., 1.]), &vf(&[1., 0.])).unwrap();
        assert!(close(&f.conormal, &[0., -1.], 1e-15));
        assert_eq!(inner(&vf(&[0., 1.]), &f.conormal).unwrap(), -1.0);
    }

    #[test]
    fn perp_rotate_errors_and_zero_u() {
        assert_eq!(
            perp_rotate(&vf(&[1., 0.]), &vf(&[0., 0.])),
            Err(Error::ZeroVector)
        );
        let f = perp_rotate(&vf(&[0., 0., 0.]), &vf(&[0., 3., 0.])).unwrap();
        assert!(f.degenerate);
        assert!(close(&f.conormal, &[3., 0., 0.], 1e-15));
    }

    #[test]
    fn rotate_pi3_examples() {
        let r = rotate_pi3(&vf(&[1., 0.]), &vf(&[0., 1.])).unwrap();
        assert!(close(&r, &[-3f64.sqrt() / 2.0, 0.5], 1e-15));
        let r = rotate_pi3(&vf(&[1., 0.]), &vf(&[2., 0.])).unwrap();
        assert!(close(&r, &[1.0, 3f64.sqrt()], 1e-15));
    }

    fn arb_pair() -> impl Strategy<Value = (Vector, Vector)> {
        (2usize..=8).prop_flat_map(|n| {
            (
                prop::collection::vec(-10.0f64..10.0, n),
                prop::collection::vec(-10.0f64..10.0, n),
            )
                .prop_map(|(a, b)| (Vector::new(a).unwrap(), Vector::new(b).unwrap()))
        })
    }

    fn rel(a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
    }

    proptest! {
        #[test]
        fn lagrange_identity((u, v) in arb_pair()) {
            let w = wedge(&u, &v).unwrap();
            let d = inner(&u, &v).unwrap();
            let scale = u.norm_sq() * v.norm_sq();
            prop_assert!(rel(w * w + d * d, scale, scale));
            let g = wedge_gram(&u, &v).unwrap();
            prop_assert!(rel(w * w, g * g, scale));
        }

        #[test]
        fn wedge_is_symmetric((u, v) in arb_pair()) {
            prop_assert_eq!(wedge(&u, &v).unwrap(), wedge(&v, &u).unwrap());
        }

        #[test]
        fn conormal_lemma((u, v) in arb_pair()) {
            prop_assume!(!v.is_zero());
            let f = perp_rotate(&u, &v).unwrap();
            let scale = u.norm() * v.norm();
            prop_assert!(rel(f.conormal.norm(), v.norm(), v.norm()));
            prop_assert!(rel(inner(&f.conormal, &v).unwrap(), 0.0, v.norm_sq()));
            if !f.degenerate {
                let lhs = inner(&u, &f.conormal).unwrap();
                prop_assert!(rel(lhs, -wedge(&u, &v).unwrap(), scale));
            }
        }

        #[test]
        fn rotation_is_isometric_and_in_span((u, v) in arb_pair()) {
            prop_assume!(!v.is_zero());
            let r = rotate_pi3(&u, &v).unwrap();
            prop_assert!(rel(r.norm(), v.norm(), v.norm()));
            // ⟨R(v), v⟩ = ‖v‖² cos(π/3)
            prop_assert!(rel(inner(&r, &v).unwrap(), 0.5 * v.norm_sq(), v.norm_sq()));
            // residual after projecting onto span(u, v)
            let f = perp_rotate(&u, &v).unwrap();
            if !f.degenerate {
                let vhat = v.scale(&(1.0 / v.norm()));
                let chat = f.conormal.scale(&(1.0 / f.conormal.norm()));
                let proj = &vhat.scale(&inner(&r, &vhat).unwrap())
                    + &chat.scale(&inner(&r, &chat).unwrap());
                prop_assert!((&r - &proj).norm() < 1e-9 * v.norm());
            }
        }

        #[test]
        fn planar_rotation_matches_matrix(
            u in prop::array::uniform2(-10.0f64..10.0),
            v in prop::array::uniform2(-10.0f64..10.0),
        ) {
            let (u, v) = (vf(&u), vf(&v));
            prop_assume!(wedge_signed(&u, &v).unwrap() > 1e-6);
            let (s, c) = (std::f64::consts::FRAC_PI_3).sin_cos();
            let expected = [c * v[0] - s * v[1], s * v[0] + c * v[1]];
            let r = rotate_pi3(&u, &v).unwrap();
            prop_assert!(close(&r, &expected, 1e-12 * v.norm().max(1.0)));
        }
    }
}
