//! Gaussian rationals: exact complex scalars `a + b i` with rational parts.
//!
//! This is the coefficient field for state amplitudes. The text grammar used
//! by state files and reports is
//!
//! ```text
//! RATIONAL := ['-'] DIGITS ['/' DIGITS]
//! GAUSS    := RATIONAL | [RATIONAL ('+'|'-')] RATIONAL 'i' | RATIONAL 'i'
//! ```
//!
//! so `3`, `-1/2`, `2i`, `-3/4i`, `1/2-3/4i` are all valid. [`fmt::Display`]
//! emits the canonical form of the same grammar and round-trips bit-exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{Conj, Ring};
use super::{BigRational, ExactError};

/// Exact complex scalar with arbitrary-precision rational real and imaginary
/// parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// A purely real value.
    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `z * conj(z)`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    /// Exact conversion to a complex `f64` pair `(re, im)`.
    ///
    /// Falls back to a quotient of big-integer approximations only through
    /// `num`'s own conversion; precision loss is the caller's concern (the
    /// exact pipeline never calls this).
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Conj for GaussianRational {
    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Ring for GaussianRational {
    fn from_int(n: i64) -> Self {
        GaussianRational::from_int(n)
    }

    fn exact_div(&self, rhs: &Self) -> Self {
        self.clone() / rhs.clone()
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::from_rational(re)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parses the `RATIONAL` production: optional sign, digits, optional
/// `/ DIGITS` with a nonzero denominator.
pub fn parse_rational(text: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::InvalidScalar(text.to_string());
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if num_str.is_empty()
        || den_str.is_empty()
        || !num_str.bytes().all(|b| b.is_ascii_digit())
        || !den_str.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = den_str.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(BigInt::from(sign) * num, den))
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::InvalidScalar(text.to_string());
        match text.strip_suffix('i') {
            None => Ok(Self::from_rational(parse_rational(text)?)),
            Some(body) => {
                if body.is_empty() {
                    return Err(bad());
                }
                // The split point between real and imaginary parts is a sign
                // at position >= 1; RATIONAL itself never contains an interior
                // '+' or '-'.
                let split = body
                    .char_indices()
                    .skip(1)
                    .find(|&(_, c)| c == '+' || c == '-')
                    .map(|(idx, _)| idx);
                match split {
                    None => Ok(Self::new(BigRational::zero(), parse_rational(body)?)),
                    Some(idx) => {
                        let re = parse_rational(&body[..idx])?;
                        let sign = if body.as_bytes()[idx] == b'+' { 1 } else { -1 };
                        let im_body = &body[idx + 1..];
                        if im_body.starts_with('-') {
                            return Err(bad());
                        }
                        let im = parse_rational(im_body)? * BigRational::from_integer(sign.into());
                        Ok(Self::new(re, im))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "0", "5", "-3/4", "2i", "-3/4i", "1/2-3/4i", "1+1i", "-2+5/7i",
        ] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s, "round trip of {s}");
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in [
            "", "i", "-i", "1/0", "1+2", "1++2i", "2.5", "1/2/3", "1-+i", "1+-2i",
        ] {
            assert!(s.parse::<GaussianRational>().is_err(), "should reject {s}");
        }
    }

    #[test]
    fn conjugation_involution() {
        let z = GaussianRational::new(ratio(3, 4), ratio(-2, 5));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn norm_is_real_nonnegative() {
        let z = GaussianRational::new(ratio(-3, 7), ratio(2, 3));
        let n = z.clone() * z.conj();
        assert!(n.is_real());
        assert!(n.re >= rat(0));
        assert_eq!(n.re, z.norm_sqr());
    }

    #[test]
    fn field_inverse() {
        let z = GaussianRational::new(rat(2), rat(1));
        let w = z.clone() * z.inv();
        assert_eq!(w, GaussianRational::one());
    }

    #[test]
    fn display_canonical_negative_imaginary() {
        let z = GaussianRational::new(rat(1), ratio(-1, 2));
        assert_eq!(z.to_string(), "1-1/2i");
        let back: GaussianRational = "1-1/2i".parse().unwrap();
        assert_eq!(back, z);
    }
}
