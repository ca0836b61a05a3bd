//! Gaussian integers: the denominator-cleared form of [`GaussianRational`]
//! used by the heavy integer pipelines, where plain `BigInt` arithmetic
//! avoids the per-operation gcd reductions of rational arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::ring::{Conj, Ring};
use super::BigRational;

/// Exact complex integer `a + b i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    /// Converts an integer-valued Gaussian rational; panics on a nontrivial
    /// denominator (callers clear denominators first).
    pub fn from_cleared(z: &GaussianRational) -> Self {
        assert!(
            z.re.denom().is_one() && z.im.denom().is_one(),
            "denominators must be cleared before integer conversion"
        );
        Self {
            re: z.re.numer().clone(),
            im: z.im.numer().clone(),
        }
    }

    pub fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div_exact_int(n: &BigInt, d: &BigInt) -> BigInt {
        let (q, r) = num_integer::Integer::div_rem(n, d);
        assert!(r.is_zero(), "inexact integer division");
        q
    }
}

impl Conj for GaussianInt {
    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }
}

impl Ring for GaussianInt {
    fn from_int(n: i64) -> Self {
        Self {
            re: n.into(),
            im: BigInt::zero(),
        }
    }

    /// Exact division in the Gaussian integers: `(z * conj(w)) / |w|^2`
    /// componentwise, valid exactly when `w` divides `z` in the ring.
    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact_div by zero Gaussian integer");
        let n = rhs.norm_sqr();
        let prod = self.clone() * rhs.conj();
        Self {
            re: Self::div_exact_int(&prod.re, &n),
            im: Self::div_exact_int(&prod.im, &n),
        }
    }
}

impl std::fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_gaussian_rational())
    }
}
