//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Inequality coefficients and Bell-expression values are generic over a
//! scalar type: `BigRational` where exactness matters (polytope facets,
//! classical and nonsignalling bounds) and `f64` in the quantum modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssign, Signed};
use std::fmt::{Debug, Display};

/// Minimal numeric interface needed for Bell-expression arithmetic.
pub trait Scalar:
    Num + NumAssign + Signed + FromPrimitive + PartialOrd + Clone + Debug + Display
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 conversion")
    }
}

impl Scalar for f64 {}
impl Scalar for BigRational {}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses "p/q" or plain integer strings.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// Renders a rational as a plain integer when possible, "p/q" otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize_rational<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn serialize_rationals<S: serde::Serializer>(
    v: &[BigRational],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&format_rational(r))?;
    }
    seq.end()
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of approximations for huge operands
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
