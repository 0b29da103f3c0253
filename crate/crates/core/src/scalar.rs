//! The numeric field used for weights, function values and ratios.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed};

/// An ordered field element. Exact for the rational types; the float
/// implementations compare with a small absolute tolerance.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Tolerance used by [`Scalar::approx_eq`]; zero for exact types.
    const TOLERANCE: f64 = 0.0;

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// `a ≤ b` up to the type's tolerance.
    fn approx_le(&self, other: &Self) -> bool {
        self <= other || self.approx_eq(other)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits") / Self::from_i64(den).expect("integer fits")
    }

    fn from_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("integer fits")
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a { b } else { a }
    }

    /// Parses `"p/q"`, `"p"` or (for floats) a decimal literal.
    fn parse_scalar(s: &str) -> Result<Self, String>;
}

fn split_ratio(s: &str) -> Result<(BigInt, BigInt), String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let d = BigInt::from_str(d).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok((n, d))
}

impl Scalar for BigRational {
    fn parse_scalar(s: &str) -> Result<Self, String> {
        let (n, d) = split_ratio(s)?;
        Ok(BigRational::new(n, d))
    }
}

impl Scalar for Rational64 {
    fn parse_scalar(s: &str) -> Result<Self, String> {
        let (n, d) = split_ratio(s)?;
        let n = i64::try_from(n).map_err(|e| e.to_string())?;
        let d = i64::try_from(d).map_err(|e| e.to_string())?;
        Ok(Rational64::new(n, d))
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const TOLERANCE: f64 = $tol;

            fn approx_eq(&self, other: &Self) -> bool {
                ((*self - *other).abs() as f64) <= Self::TOLERANCE
            }

            fn parse_scalar(s: &str) -> Result<Self, String> {
                let s = s.trim();
                match s.split_once('/') {
                    Some((n, d)) => {
                        let n: $t = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
                        let d: $t = d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
                        Ok(n / d)
                    }
                    None => s.parse().map_err(|e| format!("{s:?}: {e}")),
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);
