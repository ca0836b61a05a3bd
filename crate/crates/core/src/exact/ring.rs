//! Traits shared by every coefficient domain in the pipeline.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::BigRational;

/// An integral domain with the exact divisions needed by fraction-free
/// elimination and the Faddeev–LeVerrier recurrence.
///
/// Implementors: [`BigRational`], [`GaussianRational`](super::GaussianRational),
/// and [`UniPoly<T>`](super::UniPoly) over either.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self;

    /// Division known to be exact in the domain.
    ///
    /// Panics if `rhs` is zero or does not divide `self`; callers only invoke
    /// it where exactness is guaranteed (Bareiss pivots, recurrence steps).
    fn exact_div(&self, rhs: &Self) -> Self;
}

/// Complex conjugation. The identity on real domains; on polynomials it acts
/// coefficient-wise, treating the indeterminate as real.
pub trait Conj {
    fn conj(&self) -> Self;
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact_div by zero rational");
        self / rhs
    }
}

impl Conj for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}
