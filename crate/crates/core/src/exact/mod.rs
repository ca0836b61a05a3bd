//! Exact arithmetic substrate: rationals, Gaussian rationals, univariate
//! polynomials, fraction-free determinants, and real-root isolation.
//!
//! Every type is canonical on construction (reduced rationals, stripped
//! polynomials) so equality is structural, and every operation is exact —
//! there is no floating point anywhere in this module.

mod gaussian;
mod gaussint;
mod matrix;
mod modular;
mod poly;
mod ring;
mod roots;

pub use gaussian::{parse_rational, GaussianRational};
pub use gaussint::GaussianInt;
pub use matrix::{bareiss_det, leading_principal_minors, Matrix};
pub use modular::{big_ratio_to_f64, integer_hankel_minors, integer_hankel_verdict};
pub use poly::{poly_gcd, primitive_part, primitive_part_rational, squarefree_part, UniPoly};
pub use ring::{Conj, Ring};
pub use roots::{
    cauchy_bound, count_real_roots_in, isolate_real_roots, sturm_sequence, IsolatingInterval,
};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator. The coefficient field underlying the whole exact pipeline.
pub type BigRational = num_rational::BigRational;

pub use num_bigint::BigInt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Sturm chains and root isolation are undefined for the zero polynomial.
    #[error("undefined Sturm chain: zero polynomial")]
    ZeroPolynomial,

    /// Primitive-part normalization only applies to real-coefficient
    /// polynomials.
    #[error("cannot normalize complex polynomial")]
    ComplexCoefficients,

    /// A scalar literal did not match the text grammar.
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the reduced fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
