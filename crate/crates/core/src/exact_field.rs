//! Exact arithmetic in `Q` and in the quadratic field `Q[√3]`.
//!
//! Rationals are arbitrary precision and always held in lowest terms with a
//! positive denominator, so structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

/// Builds `num / den` in canonical form. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an exact rational from `"7"`, `"-3/4"` or a finite decimal like `"0.125"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::NotRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.chars().all(|ch| ch.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let mantissa = BigInt::from_str(&joined).map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::NotRational(x.to_string()))
}

/// Nearest `f64` to a rational (saturating to ±inf on overflow).
pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The number `rat_part + root_part·√3` with rational coefficients.
///
/// Since `1` and `√3` are linearly independent over `Q`, the value is zero
/// exactly when both coefficients are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt3 {
    pub rat_part: Rational,
    pub root_part: Rational,
}

impl QSqrt3 {
    pub fn new(rat_part: Rational, root_part: Rational) -> Self {
        Self {
            rat_part,
            root_part,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    /// `√3`.
    pub fn sqrt3() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rat_part.is_zero() && self.root_part.is_zero()
    }

    /// Multiplies both coefficients by a rational.
    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.rat_part * k, &self.root_part * k)
    }

    /// Exact sign of `a + b√3`.
    ///
    /// When the coefficients share a sign (or one vanishes) the answer is
    /// immediate. Otherwise `a²` and `3b²` are compared and the larger term
    /// wins.
    pub fn sign(&self) -> i8 {
        let a = sign_of(&self.rat_part);
        let b = sign_of(&self.root_part);
        if a == 0 {
            return b;
        }
        if b == 0 || a == b {
            return a;
        }
        let a_sq = &self.rat_part * &self.rat_part;
        let three_b_sq = &self.root_part * &self.root_part * rat(3, 1);
        match a_sq.cmp(&three_b_sq) {
            Ordering::Greater => a,
            Ordering::Less => b,
            // a² = 3b² with a, b ≠ 0 would make √3 rational.
            Ordering::Equal => unreachable!("√3 is irrational"),
        }
    }

    /// Nearest float to `a + b√3`.
    ///
    /// Opposite-signed coefficients are evaluated as `(a² − 3b²)/(a − b√3)`,
    /// whose numerator is exact and whose denominator adds like-signed terms,
    /// so there is no cancellation.
    pub fn to_f64(&self) -> f64 {
        let a = &self.rat_part;
        let b = &self.root_part;
        let sqrt3 = 3f64.sqrt();
        if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
            return rational_to_f64(a) + rational_to_f64(b) * sqrt3;
        }
        let norm = a * a - b * b * rat(3, 1);
        let conj = rational_to_f64(a) - rational_to_f64(b) * sqrt3;
        rational_to_f64(&norm) / conj
    }
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, mag) = if self.root_part.is_negative() {
            ("-", -self.root_part.clone())
        } else {
            ("+", self.root_part.clone())
        };
        write!(f, "{} {} {}·√3", self.rat_part, op, mag)
    }
}

impl Add<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3::new(
            &self.rat_part + &rhs.rat_part,
            &self.root_part + &rhs.root_part,
        )
    }
}

impl Sub<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3::new(
            &self.rat_part - &rhs.rat_part,
            &self.root_part - &rhs.root_part,
        )
    }
}

impl Mul<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let (a, b) = (&self.rat_part, &self.root_part);
        let (c, d) = (&rhs.rat_part, &rhs.root_part);
        QSqrt3::new(a * c + b * d * rat(3, 1), a * d + b * c)
    }
}

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-&self.rat_part, -&self.root_part)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: QSqrt3) -> QSqrt3 {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: &QSqrt3) -> QSqrt3 {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        -&self
    }
}
