//! Exact rationals and their string form.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `"3/2"`, `"-1"`, `"7"`; the Unicode minus sign is accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned: String = s.trim().replace('\u{2212}', "-");
    let parsed = match cleaned.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            cleaned.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?,
        ),
    };
    Ok(parsed)
}

pub fn render_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Coefficients a tableau may carry: exact rationals or complex floats.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug {
    fn from_int(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Total order used for canonical row forms.
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Equality; exact for rationals, within a relative tolerance for floats.
    fn approx_eq(&self, other: &Self) -> bool;
    fn render(&self) -> String;
}

/// Tolerance used by `approx_eq` on complex scalars.
pub const COMPLEX_TOLERANCE: f64 = 1e-8;

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        int(n)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn render(&self) -> String {
        render_rational(self)
    }
}

impl Scalar for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.re.total_cmp(&other.re).then(self.im.total_cmp(&other.im))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= COMPLEX_TOLERANCE * scale
    }

    fn render(&self) -> String {
        format!("{}{:+}i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), int(-1));
        assert_eq!(parse_rational(" 4/8 ").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(render_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(render_rational(&int(5)), "5");
    }

    #[test]
    fn signs() {
        assert_eq!(sign_pow(3), int(-1));
        assert_eq!(sign_pow(-2), int(1));
    }
}
