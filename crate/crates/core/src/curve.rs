//! Curvature of unit-speed space curves and its defect decomposition
//!
//! ```text
//! 2√3·K = 1 + ‖r̈‖² + ‖ṙ − r̈‖² − 2‖ṙ − R(r̈)‖²
//! ```
//!
//! with `R` the rotation by π/3 of the plane spanned by `ṙ` and `r̈`,
//! oriented from `r̈` to `ṙ`. This is the vector identity of
//! [`crate::weitzenboeck`] applied to `u = ṙ`, `v = −r̈`.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{inner, perp_rotate, wedge, Vector};

/// Unit-speed tolerance for closed-form jets.
pub const ANALYTIC_UNIT_SPEED_TOL: f64 = 1e-12;
/// Unit-speed tolerance for finite-difference jets.
pub const SAMPLED_UNIT_SPEED_TOL: f64 = 1e-6;

/// First and second derivative of a curve in R³ at parameter `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveJet {
    pub t: f64,
    pub d1: Vector,
    pub d2: Vector,
    /// `|‖d1‖ − 1|`
    pub unit_speed_residual: f64,
}

impl CurveJet {
    pub fn new(t: f64, d1: Vector, d2: Vector) -> Result<Self> {
        for d in [&d1, &d2] {
            if d.dim() != 3 {
                return Err(Error::WrongDimension {
                    expected: 3,
                    actual: d.dim(),
                });
            }
        }
        let unit_speed_residual = (d1.norm() - 1.0).abs();
        Ok(Self {
            t,
            d1,
            d2,
            unit_speed_residual,
        })
    }

    fn check_unit_speed(&self, tol: f64) -> Result<()> {
        if self.unit_speed_residual <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitSpeed {
                residual: self.unit_speed_residual,
                tol,
            })
        }
    }
}

fn cross(u: &Vector, v: &Vector) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// `K = ‖ṙ × r̈‖`, valid because `‖ṙ‖ = 1` is enforced up to `tol`.
pub fn curvature(j: &CurveJet, tol: f64) -> Result<f64> {
    j.check_unit_speed(tol)?;
    let [x, y, z] = cross(&j.d1, &j.d2);
    Ok((x * x + y * y + z * z).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem4Report {
    pub t: f64,
    pub curvature: f64,
    /// `‖ṙ‖² + ‖r̈‖² + ‖ṙ − r̈‖²`; `‖ṙ‖² = 1` up to the unit-speed tolerance
    pub rhs_bound: f64,
    /// `2‖ṙ − R(r̈)‖²` with `R` built in the plane oriented from `r̈` to `ṙ`
    pub defect: f64,
    /// `2(‖ṙ‖² + ‖r̈‖² − ⟨ṙ, r̈⟩ − √3·K)`, no rotation involved
    pub defect_intrinsic: f64,
    /// `2√3·K − rhs_bound + defect`
    pub residual: f64,
}

impl Theorem4Report {
    /// `2√3·K ≤ rhs_bound` up to `tol`.
    pub fn inequality_holds(&self, tol: f64) -> bool {
        2.0 * 3f64.sqrt() * self.curvature <= self.rhs_bound + tol
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residual.abs() < tol
            && (self.defect - self.defect_intrinsic).abs() < tol
            && self.inequality_holds(tol)
    }
}

/// Evaluates both sides of the curvature identity at one jet.
pub fn theorem4_report(j: &CurveJet, tol: f64) -> Result<Theorem4Report> {
    let k = curvature(j, tol)?;
    let (d1, d2) = (&j.d1, &j.d2);
    let root3 = 3f64.sqrt();
    let rhs_bound = d1.norm_sq() + d2.norm_sq() + (d1 - d2).norm_sq();

    let d1d2 = inner(d1, d2)?;
    let defect_intrinsic = 2.0 * (d1.norm_sq() + d2.norm_sq() - d1d2 - root3 * k);

    let defect = if d2.is_zero() {
        2.0 * d1.norm_sq()
    } else {
        // perp_rotate orients from its first argument to its second, so the
        // frame for "from r̈ to ṙ" applied to r̈ is the negated conormal.
        let frame = perp_rotate(d1, d2)?;
        let conormal = -&frame.conormal;
        let rotated = &d2.scale(&0.5) + &conormal.scale(&(root3 / 2.0));
        2.0 * (d1 - &rotated).norm_sq()
    };

    Ok(Theorem4Report {
        t: j.t,
        curvature: k,
        rhs_bound,
        defect,
        defect_intrinsic,
        residual: 2.0 * root3 * k - rhs_bound + defect,
    })
}

/// Gram-form curvature `√(‖ṙ‖²‖r̈‖² − ⟨ṙ,r̈⟩²)`, the same number as the
/// cross-product norm.
pub fn curvature_gram(j: &CurveJet) -> Result<f64> {
    wedge(&j.d1, &j.d2)
}

/// One sample of a curve: parameter and position.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub position: Vector,
}

/// Common spacing of `samples`, checked to be uniform within `1e-9` relative.
pub fn uniform_spacing(samples: &[Sample]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    for (row, w) in samples.windows(2).enumerate() {
        if w[1].t.partial_cmp(&w[0].t) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotIncreasing(row + 1));
        }
    }
    let n = samples.len();
    let h = (samples[n - 1].t - samples[0].t) / (n - 1) as f64;
    for (row, w) in samples.windows(2).enumerate() {
        if ((w[1].t - w[0].t) - h).abs() > 1e-9 * h {
            return Err(Error::NonUniformSpacing(row + 1));
        }
    }
    Ok(h)
}

/// Central-difference jet at interior sample `i`:
/// `ṙ ≈ (p₊ − p₋)/2h`, `r̈ ≈ (p₊ − 2p + p₋)/h²`.
///
/// The unit-speed residual is recorded, not enforced.
pub fn jets_from_samples(samples: &[Sample], i: usize) -> Result<CurveJet> {
    let h = uniform_spacing(samples)?;
    jet_at(samples, i, h)
}

/// Central-difference jets at every interior sample.
pub fn jets_from_all_samples(samples: &[Sample]) -> Result<Vec<CurveJet>> {
    let h = uniform_spacing(samples)?;
    (1..samples.len() - 1)
        .map(|i| jet_at(samples, i, h))
        .collect()
}

fn jet_at(samples: &[Sample], i: usize, h: f64) -> Result<CurveJet> {
    let max = samples.len() - 2;
    if i < 1 || i > max {
        return Err(Error::SampleIndex { index: i, max });
    }
    let (prev, here, next) = (
        &samples[i - 1].position,
        &samples[i].position,
        &samples[i + 1].position,
    );
    let d1 = next.checked_sub(prev)?.scale(&(1.0 / (2.0 * h)));
    let second = next.checked_sub(&here.scale(&2.0))?.checked_add(prev)?;
    let d2 = second.scale(&(1.0 / (h * h)));
    CurveJet::new(samples[i].t, d1, d2)
}

/// Closed-form unit-speed test curves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Curve {
    /// `(ρ cos(t/ρ), ρ sin(t/ρ), 0)`
    Circle { radius: f64 },
    /// `(a cos ωt, a sin ωt, bωt)` with `ω = 1/√(a² + b²)`
    Helix { a: f64, b: f64 },
    /// `t·direction`
    Line { direction: [f64; 3] },
}

impl Curve {
    pub fn circle(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidCurve(format!("circle radius must be > 0, got {radius}")));
        }
        Ok(Self::Circle { radius })
    }

    pub fn helix(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || (a == 0.0 && b == 0.0) {
            return Err(Error::InvalidCurve(format!("helix needs finite (a, b) != (0, 0), got ({a}, {b})")));
        }
        Ok(Self::Helix { a, b })
    }

    pub fn line(direction: [f64; 3]) -> Result<Self> {
        let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > ANALYTIC_UNIT_SPEED_TOL {
            return Err(Error::InvalidCurve(format!(
                "line direction must be a unit vector, got norm {norm}"
            )));
        }
        Ok(Self::Line { direction })
    }

    /// Closed-form curvature `1/ρ`, `a/(a² + b²)` or `0`.
    pub fn curvature(&self) -> f64 {
        match *self {
            Self::Circle { radius } => 1.0 / radius,
            Self::Helix { a, b } => a.abs() / (a * a + b * b),
            Self::Line { .. } => 0.0,
        }
    }

    pub fn position(&self, t: f64) -> [f64; 3] {
        match *self {
            Self::Circle { radius } => {
                let (s, c) = (t / radius).sin_cos();
                [radius * c, radius * s, 0.0]
            }
            Self::Helix { a, b } => {
                let w = helix_rate(a, b);
                let (s, c) = (w * t).sin_cos();
                [a * c, a * s, b * w * t]
            }
            Self::Line { direction: d } => [t * d[0], t * d[1], t * d[2]],
        }
    }

    /// Exact jet at `t`.
    pub fn jet(&self, t: f64) -> CurveJet {
        let (d1, d2) = match *self {
            Self::Circle { radius } => {
                let (s, c) = (t / radius).sin_cos();
                ([-s, c, 0.0], [-c / radius, -s / radius, 0.0])
            }
            Self::Helix { a, b } => {
                let w = helix_rate(a, b);
                let (s, c) = (w * t).sin_cos();
                (
                    [-a * w * s, a * w * c, b * w],
                    [-a * w * w * c, -a * w * w * s, 0.0],
                )
            }
            Self::Line { direction } => (direction, [0.0; 3]),
        };
        CurveJet::new(
            t,
            Vector::from_slice(&d1).expect("3 finite coords"),
            Vector::from_slice(&d2).expect("3 finite coords"),
        )
        .expect("dimension 3")
    }

    /// `n` uniformly spaced samples starting at `t0` with step `h`.
    pub fn sample(&self, t0: f64, h: f64, n: usize) -> Vec<Sample> {
        (0..n)
            .map(|k| {
                let t = t0 + h * k as f64;
                Sample {
                    t,
                    position: Vector::from_slice(&self.position(t)).expect("finite"),
                }
            })
            .collect()
    }
}

fn helix_rate(a: f64, b: f64) -> f64 {
    1.0 / a.hypot(b)
}

/// Jet of a built-in curve at `t`.
pub fn builtin_curve(kind: Curve, t: f64) -> CurveJet {
    kind.jet(t)
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
}

/// Reads curve samples from CSV with header `t,x,y,z`.
///
/// Error messages carry the 1-based data row.
pub fn read_samples_csv<R: Read>(reader: R) -> Result<Vec<Sample>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse(format!("bad CSV header: {e}")))?
        .clone();
    let expected = ["t", "x", "y", "z"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse(format!(
            "expected header t,x,y,z, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (k, rec) in rdr.deserialize::<SampleRow>().enumerate() {
        let row = rec.map_err(|e| Error::Parse(format!("row {}: {e}", k + 1)))?;
        let position = Vector::from_slice(&[row.x, row.y, row.z])
            .map_err(|e| Error::Parse(format!("row {}: {e}", k + 1)))?;
        if !row.t.is_finite() {
            return Err(Error::Parse(format!("row {}: non-finite t", k + 1)));
        }
        out.push(Sample { t: row.t, position });
    }
    Ok(out)
}
