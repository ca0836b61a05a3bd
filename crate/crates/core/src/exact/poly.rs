//! Dense univariate polynomials over an exact coefficient domain.
//!
//! Coefficients are stored by ascending power with trailing zeros stripped on
//! construction, so the zero polynomial has an empty coefficient list and
//! equality is structural. A degree-0 polynomial compares equal regardless of
//! its indeterminate label, matching the rule that constants behave exactly
//! like their scalar value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::ring::{Conj, Ring};
use super::{BigInt, BigRational, ExactError};

const DEFAULT_VAR: &str = "x";

/// Univariate polynomial with coefficients in `T`, `coeffs[k]` multiplying the
/// k-th power of the named indeterminate.
#[derive(Clone, Debug)]
pub struct UniPoly<T> {
    var: String,
    coeffs: Vec<T>,
}

impl<T: Ring> UniPoly<T> {
    /// Builds a polynomial from ascending-power coefficients, stripping
    /// trailing zeros.
    pub fn new(var: impl Into<String>, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            var: var.into(),
            coeffs,
        }
    }

    pub fn constant(value: T) -> Self {
        Self::new(DEFAULT_VAR, vec![value])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(T::from_int(n))
    }

    /// The monomial `c * var^k`.
    pub fn monomial(var: impl Into<String>, c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Ascending-power coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of the k-th power (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// The constant represented by a degree-0 polynomial (zero for the zero
    /// polynomial); `None` if the degree is positive.
    pub fn as_constant(&self) -> Option<T> {
        match self.coeffs.len() {
            0 => Some(T::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Self::new(self.var.clone(), coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.var.clone(),
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    /// Renames the indeterminate.
    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    /// Long division; requires every leading-coefficient division performed
    /// along the way to be exact in `T` (always true over a field).
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let d = rhs.degree().unwrap();
        let lead = rhs.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let q = rem.last().unwrap().exact_div(lead);
            if !q.is_zero() {
                for (j, c) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
                }
                quot[k] = q;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (
            Self::new(self.var.clone(), quot),
            Self::new(self.var.clone(), rem),
        )
    }

    fn merged_var(&self, rhs: &Self) -> String {
        if self.is_constant() {
            rhs.var.clone()
        } else {
            if !rhs.is_constant() {
                assert_eq!(
                    self.var, rhs.var,
                    "mixed indeterminates {} and {}",
                    self.var, rhs.var
                );
            }
            self.var.clone()
        }
    }
}

impl UniPoly<GaussianRational> {
    /// Checks that every coefficient is real and re-types the polynomial over
    /// the rationals.
    pub fn to_rational_poly(&self) -> Result<UniPoly<BigRational>, ExactError> {
        if self.coeffs.iter().any(|c| !c.is_real()) {
            return Err(ExactError::ComplexCoefficients);
        }
        Ok(UniPoly::new(
            self.var.clone(),
            self.coeffs.iter().map(|c| c.re.clone()).collect(),
        ))
    }

    /// Evaluates at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> GaussianRational {
        self.eval(&GaussianRational::from_rational(x.clone()))
    }
}

impl<T: Ring> UniPoly<T> {
    /// `true` when only even powers carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Rewrites an even polynomial f(x) as g with `g(x^2) = f(x)`, renaming
    /// the indeterminate to `var`. `None` if f has an odd term.
    pub fn compress_even(&self, var: impl Into<String>) -> Option<Self> {
        if !self.is_even() {
            return None;
        }
        let coeffs = self.coeffs.iter().cloned().step_by(2).collect();
        Some(Self::new(var, coeffs))
    }
}

impl<T: Ring> PartialEq for UniPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs != other.coeffs {
            return false;
        }
        self.is_constant() || other.is_constant() || self.var == other.var
    }
}

impl<T: Ring + Eq> Eq for UniPoly<T> {}

impl<T: Ring> Add for UniPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let var = self.merged_var(&rhs);
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (k, c) in short.into_iter().enumerate() {
            long[k] = long[k].clone() + c;
        }
        Self::new(var, long)
    }
}

impl<T: Ring> Sub for UniPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for UniPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            var: self.var,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Ring> Mul for UniPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let var = self.merged_var(&rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::new(var, vec![]);
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(var, coeffs)
    }
}

impl<T: Ring> Zero for UniPoly<T> {
    fn zero() -> Self {
        Self {
            var: DEFAULT_VAR.into(),
            coeffs: vec![],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for UniPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Ring for UniPoly<T> {
    fn from_int(n: i64) -> Self {
        UniPoly::from_int(n)
    }

    fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<T: Ring + Conj> Conj for UniPoly<T> {
    fn conj(&self) -> Self {
        // The indeterminate is a real formal parameter; only coefficients
        // conjugate.
        Self {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(Conj::conj).collect(),
        }
    }
}

/// Monic gcd over a coefficient field, by the Euclidean algorithm.
pub fn poly_gcd<T: Ring>(a: &UniPoly<T>, b: &UniPoly<T>) -> UniPoly<T> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    match a.leading_coeff() {
        Some(lead) if !lead.is_one() => {
            let inv = T::one().exact_div(lead);
            a.scale(&inv)
        }
        _ => a,
    }
}

/// Divides out repeated factors: `f / gcd(f, f')`.
pub fn squarefree_part<T: Ring>(f: &UniPoly<T>) -> UniPoly<T> {
    let g = poly_gcd(f, &f.derivative());
    if g.is_constant() {
        f.clone()
    } else {
        f.exact_div(&g)
    }
}

/// Primitive integer form of a rational-coefficient polynomial: denominators
/// cleared, integer content removed, leading coefficient positive. Returns
/// `(primitive, content)` with `f = content * primitive`.
pub fn primitive_part_rational(f: &UniPoly<BigRational>) -> (UniPoly<BigRational>, BigRational) {
    if f.is_zero() {
        return (UniPoly::zero(), BigRational::zero());
    }
    let den_lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut num_gcd = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if nums.last().unwrap().is_negative() {
        num_gcd = -num_gcd;
    }
    let content = BigRational::new(num_gcd.clone(), den_lcm);
    let coeffs = nums
        .into_iter()
        .map(|n| BigRational::from_integer(n / &num_gcd))
        .collect();
    (UniPoly::new(f.var().to_string(), coeffs), content)
}

/// Primitive integer form of a polynomial whose coefficients must all be
/// real; errors on any nonzero imaginary part.
pub fn primitive_part(
    f: &UniPoly<GaussianRational>,
) -> Result<(UniPoly<BigRational>, BigRational), ExactError> {
    Ok(primitive_part_rational(&f.to_rational_poly()?))
}

fn fmt_terms<T, F>(f: &mut fmt::Formatter<'_>, poly: &UniPoly<T>, split: F) -> fmt::Result
where
    F: Fn(&T) -> (bool, String),
{
    let mut first = true;
    for (k, c) in poly.coeffs.iter().enumerate().rev() {
        let (negative, abs) = split(c);
        if abs == "0" {
            continue;
        }
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let show_coeff = abs != "1" || k == 0;
        if show_coeff {
            write!(f, "{abs}")?;
        }
        match k {
            0 => {}
            1 => write!(f, "{}", poly.var)?,
            _ => write!(f, "{}^{}", poly.var, k)?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self, |c| (c.is_negative(), c.abs().to_string()))
    }
}

impl fmt::Display for UniPoly<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self, |c| {
            if c.is_real() {
                (c.re.is_negative(), c.re.abs().to_string())
            } else {
                // Complex coefficients print in parentheses, sign inside.
                (false, format!("({c})"))
            }
        })
    }
}
