//! The half-disk model of triangle shapes.
//!
//! A triangle with sides `a`, `b`, `c` maps to the point
//! `(x, y) = (I/2, 2Δ)` with `I = a² + b² + c²`. From
//! `ab·cos γ = (a² + b² − c²)/2` and `ab·sin γ = 2Δ` it follows that
//!
//! ```text
//! (x − (a² + b²))² + y² = a²b²
//! ```
//!
//! so for fixed `s = a² + b²` every triangle lies in the half-disk of
//! center `(s, 0)` and radius `s/2` (since `ab ≤ s/2`). The tangent from the
//! origin touches that half-disk at `T = (3s/4, √3·s/4)` with slope `1/√3`,
//! which is the inequality `y/x ≤ 1/√3`. The boundary half-circle holds the
//! isosceles triangles `a = b`, and `T` itself the equilateral one.
//!
//! All figures are parameterised by `s`; `c` is always the base side.

use std::f64::consts::{FRAC_PI_6, PI};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weitzenboeck::{area_heron, Triangle};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapePoint {
    /// `I/2`
    pub x: f64,
    /// `2Δ`
    pub y: f64,
}

/// Circle `(x − center_x)² + y² = radius²` on which all triangles with the
/// given `a² + b²` and `ab` lie.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeCircle {
    pub center_x: f64,
    pub radius: f64,
}

impl ShapeCircle {
    /// Circle for sides `a`, `b`: center `a² + b²`, radius `ab`.
    pub fn for_sides(a: f64, b: f64) -> Self {
        Self {
            center_x: a * a + b * b,
            radius: a * b,
        }
    }

    pub fn of(t: &Triangle) -> Self {
        Self::for_sides(t.a(), t.b())
    }
}

/// Half-disk of all triangles with `a² + b² = s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfDisk {
    pub center_x: f64,
    pub radius: f64,
}

impl HalfDisk {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidHalfDisk(s));
        }
        Ok(Self {
            center_x: s,
            radius: s / 2.0,
        })
    }

    pub fn of(t: &Triangle) -> Self {
        Self::new(t.a() * t.a() + t.b() * t.b()).expect("sides are positive")
    }

    pub fn s(&self) -> f64 {
        self.center_x
    }

    /// The limit half-circle bounding the disk.
    pub fn boundary(&self) -> ShapeCircle {
        ShapeCircle {
            center_x: self.center_x,
            radius: self.radius,
        }
    }

    /// The center `Ω = (s, 0)`.
    pub fn omega(&self) -> ShapePoint {
        ShapePoint {
            x: self.center_x,
            y: 0.0,
        }
    }
}

pub fn shape_point(t: &Triangle) -> Result<ShapePoint> {
    Ok(ShapePoint {
        x: t.square_sum() / 2.0,
        y: 2.0 * area_heron(t)?,
    })
}

/// `(x − center_x)² + y² − radius²`; zero on the circle.
pub fn circle_residual(p: &ShapePoint, c: &ShapeCircle) -> f64 {
    let dx = p.x - c.center_x;
    dx * dx + p.y * p.y - c.radius * c.radius
}

/// Membership in the open-quadrant half-disk. `tol` is relative to the
/// squared radius.
pub fn halfdisk_contains(p: &ShapePoint, d: &HalfDisk, tol: f64) -> bool {
    let dx = p.x - d.center_x;
    let r2 = d.radius * d.radius;
    p.x > 0.0 && p.y > 0.0 && dx * dx + p.y * p.y <= r2 + tol * r2
}

/// Slope of the tangent from the origin, `tan(π/6) = 1/√3`.
pub fn tangent_line_slope() -> f64 {
    3f64.sqrt() / 3.0
}

/// Angle `ΩOT` between the x-axis and the tangent, `π/6`.
pub fn tangent_angle() -> f64 {
    FRAC_PI_6
}

/// `sin(ΩOT) = |ΩT| / |ΩO| = (s/2)/s`, which is `1/2` for every `s`.
pub fn tangent_sine(d: &HalfDisk) -> f64 {
    d.radius / d.center_x
}

/// Contact point `T` of the tangent through the origin: at distance
/// `|OT| = √(s² − (s/2)²) = (√3/2)s` along the direction of angle π/6.
pub fn tangent_point(d: &HalfDisk) -> ShapePoint {
    let s = d.center_x;
    ShapePoint {
        x: 0.75 * s,
        y: 3f64.sqrt() / 4.0 * s,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Interior,
    IsoscelesLimit,
    EquilateralTangent,
}

impl ShapeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Interior => "interior",
            Self::IsoscelesLimit => "isosceles_limit",
            Self::EquilateralTangent => "equilateral_tangent",
        }
    }
}

/// Position of a triangle relative to the figure for `s = a² + b²`.
///
/// On the tangent line (relative slope gap ≤ `tol`) means equilateral; on
/// the boundary circle (residual ≤ `tol·(s/2)²`) means `a = b`. Both gaps
/// are quadratic in the side mismatch, so `tol = 1e-9` resolves side
/// differences down to roughly `3e-5` relative.
pub fn classify(t: &Triangle, tol: f64) -> Result<ShapeClass> {
    let p = shape_point(t)?;
    let slope = tangent_line_slope();
    if ((p.y / p.x) - slope).abs() <= tol * slope {
        return Ok(ShapeClass::EquilateralTangent);
    }
    let d = HalfDisk::of(t);
    if circle_residual(&p, &d.boundary()).abs() <= tol * d.radius * d.radius {
        return Ok(ShapeClass::IsoscelesLimit);
    }
    Ok(ShapeClass::Interior)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureRow {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

/// Sampled version of the half-disk figure for one value of `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure {
    pub s: f64,
    pub rows: Vec<FigureRow>,
}

/// Number of per-`(a, b)` circles drawn inside the half-disk.
pub const FIGURE_CIRCLES: usize = 4;

impl Figure {
    pub fn series<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a FigureRow> + 'a {
        self.rows.iter().filter(move |r| r.series == name)
    }

    /// Rows of every `circle:<a>:<b>` series; each is a realisable triangle.
    pub fn triangle_rows(&self) -> impl Iterator<Item = &FigureRow> {
        self.rows.iter().filter(|r| r.series.starts_with("circle:"))
    }

    /// CSV with header `series,x,y`; floats in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,x,y\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.series, r.x, r.y);
        }
        out
    }
}

/// Samples the figure for `s = a² + b²`:
///
/// - `boundary`: `samples` points of the limit half-circle, angle 0 to π;
/// - `tangent`: the origin, `T`, and the tangent line's point above `x = 3s/2`;
/// - `T` and `omega`: one point each;
/// - `circle:<a>:<b>`: for [`FIGURE_CIRCLES`] pairs with `a² + b² = s`,
///   `samples` triangles with base angle `γ` strictly inside `(0, π)`.
pub fn emit_figure(s: f64, samples: usize) -> Result<Figure> {
    let d = HalfDisk::new(s)?;
    if samples < 2 {
        return Err(Error::Parse(format!("figure needs at least 2 samples, got {samples}")));
    }
    let mut rows = Vec::new();
    let mut push = |series: &str, x: f64, y: f64| {
        rows.push(FigureRow {
            series: series.to_string(),
            x,
            y,
        })
    };

    for k in 0..samples {
        // mirror the upper half of the angles so both endpoints have y = 0 exactly
        let mirrored = 2 * k > samples - 1;
        let j = if mirrored { samples - 1 - k } else { k };
        let (sin, mut cos) = (PI * j as f64 / (samples - 1) as f64).sin_cos();
        if mirrored {
            cos = -cos;
        }
        push("boundary", d.center_x + d.radius * cos, d.radius * sin);
    }

    let t = tangent_point(&d);
    let slope = tangent_line_slope();
    push("tangent", 0.0, 0.0);
    push("tangent", t.x, t.y);
    push("tangent", 1.5 * s, 1.5 * s * slope);
    push("T", t.x, t.y);
    let omega = d.omega();
    push("omega", omega.x, omega.y);

    let root_s = s.sqrt();
    for k in 1..=FIGURE_CIRCLES {
        // a ≤ b; k = FIGURE_CIRCLES gives a = b, i.e. the boundary itself
        let phi = std::f64::consts::FRAC_PI_4 * k as f64 / FIGURE_CIRCLES as f64;
        let (a, b) = if k == FIGURE_CIRCLES {
            let side = (s / 2.0).sqrt();
            (side, side)
        } else {
            (root_s * phi.sin(), root_s * phi.cos())
        };
        let circle = ShapeCircle::for_sides(a, b);
        let name = format!("circle:{a}:{b}");
        for j in 0..samples {
            let gamma = PI * (j as f64 + 0.5) / samples as f64;
            let (sin, cos) = gamma.sin_cos();
            push(&name, circle.center_x - circle.radius * cos, circle.radius * sin);
        }
    }
    Ok(Figure { s, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weitzenboeck::triangle_defect;
    use proptest::prelude::*;

    const R3: f64 = 1.732_050_807_568_877_2;

    fn tri(a: f64, b: f64, c: f64) -> Triangle {
        Triangle::new(a, b, c).unwrap()
    }

    fn near(p: ShapePoint, x: f64, y: f64, tol: f64) -> bool {
        (p.x - x).abs() <= tol && (p.y - y).abs() <= tol
    }

    #[test]
    fn shape_point_examples() {
        assert!(near(shape_point(&tri(3., 4., 5.)).unwrap(), 25.0, 12.0, 1e-13));
        assert!(near(shape_point(&tri(1., 1., 1.)).unwrap(), 1.5, R3 / 2.0, 1e-15));
        assert!(near(shape_point(&tri(2., 2., 2.)).unwrap(), 6.0, 2.0 * R3, 1e-14));
    }

    #[test]
    fn circle_residual_examples() {
        let c = ShapeCircle { center_x: 25.0, radius: 12.0 };
        assert_eq!(circle_residual(&ShapePoint { x: 25.0, y: 12.0 }, &c), 0.0);
        let c = ShapeCircle { center_x: 2.0, radius: 1.0 };
        assert!(circle_residual(&ShapePoint { x: 1.5, y: R3 / 2.0 }, &c).abs() < 1e-15);
        assert_eq!(circle_residual(&ShapePoint { x: 3.0, y: 0.0 }, &c), 0.0);
        // the 3-4-5 triangle sits on its own circle
        let t = tri(3., 4., 5.);
        let c = ShapeCircle::of(&t);
        assert_eq!(c, ShapeCircle { center_x: 25.0, radius: 12.0 });
        assert!(circle_residual(&shape_point(&t).unwrap(), &c).abs() < 1e-12);
    }

    #[test]
    fn halfdisk_examples() {
        let d = HalfDisk::new(25.0).unwrap();
        assert!(halfdisk_contains(&ShapePoint { x: 25.0, y: 12.0 }, &d, 1e-9));
        assert!(!halfdisk_contains(&ShapePoint { x: 25.0, y: 13.0 }, &d, 1e-9));
        let d = HalfDisk::new(2.0).unwrap();
        let p = ShapePoint { x: 1.5, y: R3 / 2.0 };
        assert!(halfdisk_contains(&p, &d, 1e-9));
        assert!(circle_residual(&p, &d.boundary()).abs() < 1e-15);
        // open quadrant only
        assert!(!halfdisk_contains(&ShapePoint { x: 3.0, y: 0.0 }, &d, 1e-9));
        assert!(HalfDisk::new(0.0).is_err());
        assert!(HalfDisk::new(-1.0).is_err());
        assert!(HalfDisk::new(f64::NAN).is_err());
    }

    #[test]
    fn tangent_constants() {
        assert!((tangent_line_slope() - 0.577_350_269_189_625_8).abs() < 1e-15);
        assert!((tangent_angle().tan() - tangent_line_slope()).abs() < 1e-15);
        assert_eq!(tangent_sine(&HalfDisk::new(7.0).unwrap()), 0.5);
        assert!((tangent_angle().sin() - 0.5).abs() < 1e-15);
        let p = shape_point(&tri(1., 1., 1.)).unwrap();
        assert!((p.y / p.x - tangent_line_slope()).abs() < 1e-15);
        let p = shape_point(&tri(3., 4., 5.)).unwrap();
        assert!((p.y / p.x - 0.48).abs() < 1e-15);
        assert!(p.y / p.x < tangent_line_slope());
    }

    #[test]
    fn tangent_point_examples() {
        let d = HalfDisk::new(2.0).unwrap();
        let t = tangent_point(&d);
        let eq = shape_point(&tri(1., 1., 1.)).unwrap();
        assert!(near(t, eq.x, eq.y, 1e-15));
        assert!(near(tangent_point(&HalfDisk::new(4.0).unwrap()), 3.0, R3, 1e-15));
        for s in [0.01, 1.0, 2.0, 4.0, 1e6] {
            let d = HalfDisk::new(s).unwrap();
            let t = tangent_point(&d);
            let r2 = d.radius * d.radius;
            assert!(circle_residual(&t, &d.boundary()).abs() <= 1e-12 * r2);
            assert!((t.y / t.x - tangent_line_slope()).abs() <= 1e-12);
            // |OT| = (√3/2)s, and OT ⟂ ΩT
            assert!(((t.x.hypot(t.y)) - R3 / 2.0 * s).abs() <= 1e-12 * s);
            let dot = t.x * (t.x - d.center_x) + t.y * t.y;
            assert!(dot.abs() <= 1e-12 * s * s);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&tri(1., 1., 1.), 1e-9).unwrap(), ShapeClass::EquilateralTangent);
        assert_eq!(classify(&tri(2., 2., 3.), 1e-9).unwrap(), ShapeClass::IsoscelesLimit);
        assert_eq!(classify(&tri(3., 4., 5.), 1e-9).unwrap(), ShapeClass::Interior);
        // isosceles with base a is not on the limit circle for s = a² + b²
        assert_eq!(classify(&tri(3., 2., 2.), 1e-9).unwrap(), ShapeClass::Interior);
        assert_eq!(classify(&tri(5., 5., 5.), 1e-9).unwrap(), ShapeClass::EquilateralTangent);
    }

    #[test]
    fn figure_contents() {
        let f = emit_figure(2.0, 100).unwrap();
        let d = HalfDisk::new(2.0).unwrap();
        let boundary: Vec<_> = f.series("boundary").collect();
        assert_eq!(boundary.len(), 100);
        for r in &boundary {
            let p = ShapePoint { x: r.x, y: r.y };
            assert!(circle_residual(&p, &d.boundary()).abs() <= 1e-12);
        }
        let t: Vec<_> = f.series("T").collect();
        assert_eq!(t.len(), 1);
        assert!((t[0].x - 1.5).abs() < 1e-15 && (t[0].y - R3 / 2.0).abs() < 1e-15);
        let omega: Vec<_> = f.series("omega").collect();
        assert_eq!((omega[0].x, omega[0].y), (2.0, 0.0));
        assert_eq!(f.series("tangent").count(), 3);
        assert_eq!(f.triangle_rows().count(), 100 * FIGURE_CIRCLES);
        for r in f.triangle_rows() {
            assert!(halfdisk_contains(&ShapePoint { x: r.x, y: r.y }, &d, 1e-12));
        }
        assert!(emit_figure(0.0, 10).is_err());
        assert!(emit_figure(2.0, 1).is_err());
    }

    #[test]
    fn figure_csv_layout() {
        let csv = emit_figure(2.0, 2).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("series,x,y"));
        assert!(csv.contains("\nT,1.5,0.8660254037844386\n"));
        assert!(csv.contains("\nomega,2,0\n"));
        assert!(csv.contains("\ntangent,0,0\n"));
        for line in csv.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 3, "{line}");
            let x: f64 = cols[1].parse().unwrap();
            assert_eq!(x.to_string(), cols[1]);
        }
    }

    fn arb_triangle() -> impl Strategy<Value = Triangle> {
        (0.1f64..10.0, 0.1f64..10.0, 0.001f64..0.999).prop_map(|(a, b, t)| {
            let lo = (a - b).abs();
            tri(a, b, lo + (a + b - lo) * t)
        })
    }

    proptest! {
        #[test]
        fn every_triangle_is_on_its_circle(t in arb_triangle()) {
            let p = shape_point(&t).unwrap();
            let c = ShapeCircle::of(&t);
            prop_assert!(circle_residual(&p, &c).abs() <= 1e-9 * c.radius * c.radius);
            prop_assert!(halfdisk_contains(&p, &HalfDisk::of(&t), 1e-9));
            prop_assert!(p.y / p.x <= tangent_line_slope() + 1e-12);
        }

        #[test]
        fn shape_plane_matches_defect(t in arb_triangle()) {
            let p = shape_point(&t).unwrap();
            let d = triangle_defect(&t).unwrap();
            prop_assert!((d - (2.0 * p.x - 2.0 * R3 * p.y)).abs() <= 1e-9 * t.square_sum());
        }

        #[test]
        fn limit_circle_means_isosceles(a in 0.1f64..10.0, ratio in 0.5f64..2.0, base in 0.05f64..0.95) {
            let b = a * ratio;
            let lo = (a - b).abs();
            let t = tri(a, b, lo + (a + b - lo) * base);
            let class = classify(&t, 1e-9).unwrap();
            // boundary residual / r² = ((a² − b²)/(a² + b²))²
            let gap = ((a * a - b * b) / (a * a + b * b)).powi(2);
            if gap > 2e-9 {
                prop_assert_ne!(class, ShapeClass::IsoscelesLimit);
            }
            let t_iso = tri(a, a, 2.0 * a * base);
            let c = classify(&t_iso, 1e-9).unwrap();
            prop_assert!(c == ShapeClass::IsoscelesLimit || c == ShapeClass::EquilateralTangent);
        }
    }
}
