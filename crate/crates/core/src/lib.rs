//! Exact decision procedure for maximal entanglement of pure bipartite
//! quantum states.
//!
//! A pure state of an `d_A x d_B` system is maximally entangled exactly when
//! all eigenvalues of its reduced density matrix (on the smaller subsystem)
//! coincide. Rather than computing those eigenvalues, this crate evaluates the
//! subdiscriminant sequence of the characteristic polynomial through Hankel
//! determinants of the power sums `s_m = Tr(rho^m)`. Every quantity is an
//! exact rational (or a polynomial in one free parameter), so the verdict
//! `D_{d-1} = 0` is a certificate, not an approximation.
//!
//! Module map:
//!
//! - [`exact`]: arbitrary-precision rationals, Gaussian rationals, univariate
//!   polynomials, fraction-free determinants, Sturm chains and real-root
//!   isolation.
//! - [`state`]: bipartite states in the product basis, partial traces as Gram
//!   matrices, power sums, and the state-file parser.
//! - [`detector`]: characteristic polynomials, subdiscriminant sequences,
//!   maximality verdicts, and single-parameter analysis.
//! - [`oracle`]: an independent floating-point route (Jacobi eigenvalues,
//!   entropies, brute-force subdiscriminants) used for cross-validation.
//! - [`random`]: a seeded generator for reproducible random states.
//!
//! ```
//! use maxent_core::detector::{is_maximally_entangled, parametric_analysis};
//! use maxent_core::state::parse_state;
//!
//! // A Bell pair is certified maximal with D_{d-1} exactly zero.
//! let bell = parse_state("dims 2 2\nterm 0 0 1\nterm 1 1 -1\n").unwrap();
//! let verdict = is_maximally_entangled(&bell).unwrap();
//! assert!(verdict.maximal);
//! assert_eq!(verdict.degeneracy, 1);
//!
//! // A one-parameter family yields an exact condition polynomial and its
//! // isolated real roots.
//! let family = parse_state("dims 2 2\nterm 0 0 1\nterm 1 1 p\n").unwrap();
//! let analysis = parametric_analysis(&family).unwrap();
//! assert_eq!(analysis.polynomial.to_string(), "p^4 - 2p^2 + 1");
//! assert!(analysis.achievable);
//! ```
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here may be used freely across threads.

pub mod detector;
pub mod exact;
pub mod oracle;
pub mod random;
pub mod state;
