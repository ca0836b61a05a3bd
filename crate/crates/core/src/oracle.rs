//! Independent floating-point route: Jacobi eigenvalues, Schmidt spectra,
//! entropies, and brute-force subdiscriminants.
//!
//! Nothing here is shared with the exact pipeline — the eigensolver is a
//! plain cyclic Jacobi iteration implemented in-repo — so agreement between
//! the two routes is a genuine cross-check rather than a tautology.

#![allow(clippy::needless_range_loop)]
use thiserror::Error;

use crate::state::ReducedDensity;

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAG_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Largest dimension the brute-force subset enumeration accepts.
pub const ORACLE_MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is not symmetric within {SYMMETRY_TOL}")]
    NotSymmetric,

    #[error("Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")]
    NoConvergence,

    #[error("oracle is brute force; dimension {0} exceeds {ORACLE_MAX_DIM}")]
    DimensionTooLarge(usize),

    #[error("density matrix still carries a free parameter")]
    ParametricDensity,

    #[error("matrix entries must be finite")]
    NonFinite,
}

/// Eigenvalues of a reduced density in descending order, and their square
/// roots (the Schmidt coefficients when the spectrum is normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub lambdas: Vec<f64>,
    pub schmidt: Vec<f64>,
}

impl SchmidtSpectrum {
    fn from_eigenvalues(mut lambdas: Vec<f64>) -> Self {
        lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let schmidt = lambdas.iter().map(|&l| l.max(0.0).sqrt()).collect();
        Self { lambdas, schmidt }
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// The spectrum rescaled to unit sum.
    pub fn normalized(&self) -> Self {
        let total: f64 = self.lambdas.iter().sum();
        Self::from_eigenvalues(self.lambdas.iter().map(|l| l / total).collect())
    }

    /// Number of eigenvalue clusters under the given absolute tolerance, on
    /// the descending spectrum.
    pub fn distinct_count(&self, tol: f64) -> usize {
        if self.lambdas.is_empty() {
            return 0;
        }
        1 + self
            .lambdas
            .windows(2)
            .filter(|w| (w[0] - w[1]).abs() > tol)
            .count()
    }

    /// Smallest nonzero gap between adjacent (sorted) eigenvalues; `None`
    /// when all coincide exactly.
    pub fn min_nonzero_gap(&self) -> Option<f64> {
        self.lambdas
            .windows(2)
            .map(|w| (w[0] - w[1]).abs())
            .filter(|&g| g > 0.0)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

/// Von Neumann and linear entropy of a normalized spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    /// `-sum l ln l`, natural logarithm, with `0 ln 0 = 0`.
    pub von_neumann: f64,
    /// `von_neumann / ln d`; equals 1 exactly on a flat spectrum.
    pub normalized: f64,
    /// `1 - sum l^2`.
    pub linear_entropy: f64,
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// descending.
pub fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Result<SchmidtSpectrum, OracleError> {
    let n = m.len();
    assert!(
        n > 0 && m.iter().all(|row| row.len() == n),
        "square matrix required"
    );
    for row in m {
        if row.iter().any(|x| !x.is_finite()) {
            return Err(OracleError::NonFinite);
        }
    }
    for i in 0..n {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > SYMMETRY_TOL {
                return Err(OracleError::NotSymmetric);
            }
        }
    }

    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off.sqrt() < OFF_DIAG_TOL {
            return Ok(SchmidtSpectrum::from_eigenvalues(
                (0..n).map(|i| a[i][i]).collect(),
            ));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let (app, aqq) = (a[p][p], a[q][q]);
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    Err(OracleError::NoConvergence)
}

/// Eigenvalues of a complex Hermitian matrix given as `(re, im)` pairs, via
/// the standard embedding into a `2n x 2n` real symmetric matrix
/// `[[X, -Y], [Y, X]]`. Each eigenvalue appears twice there; adjacent pairs
/// of the sorted spectrum are averaged back into one copy.
pub fn hermitian_eigenvalues(h: &[Vec<(f64, f64)>]) -> Result<SchmidtSpectrum, OracleError> {
    let n = h.len();
    assert!(
        n > 0 && h.iter().all(|row| row.len() == n),
        "square matrix required"
    );
    if h.iter().flatten().all(|&(_, im)| im == 0.0) {
        let real: Vec<Vec<f64>> = h
            .iter()
            .map(|row| row.iter().map(|&(re, _)| re).collect())
            .collect();
        return jacobi_eigenvalues(&real);
    }
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = h[i][j];
            big[i][j] = re;
            big[n + i][n + j] = re;
            big[i][n + j] = -im;
            big[n + i][j] = im;
        }
    }
    let doubled = jacobi_eigenvalues(&big)?;
    let lambdas = doubled
        .lambdas
        .chunks(2)
        .map(|pair| (pair[0] + pair[1]) / 2.0)
        .collect();
    Ok(SchmidtSpectrum::from_eigenvalues(lambdas))
}

/// Normalized Schmidt spectrum of a concrete reduced density, plus its trace
/// (the squared norm of the state) for rescaling.
pub fn schmidt_spectrum(rho: &ReducedDensity) -> Result<(SchmidtSpectrum, f64), OracleError> {
    if rho.is_parametric() {
        return Err(OracleError::ParametricDensity);
    }
    let n = rho.dim;
    let mut h = vec![vec![(0.0, 0.0); n]; n];
    let mut trace = 0.0;
    for i in 0..n {
        for j in 0..n {
            let z = rho.entries[(i, j)]
                .as_constant()
                .expect("non-parametric density");
            h[i][j] = z.to_f64_pair();
        }
        trace += h[i][i].0;
    }
    for row in h.iter_mut() {
        for entry in row.iter_mut() {
            entry.0 /= trace;
            entry.1 /= trace;
        }
    }
    Ok((hermitian_eigenvalues(&h)?, trace))
}

/// Entropy report for a normalized spectrum.
pub fn entropy_report(spec: &SchmidtSpectrum) -> EntropyReport {
    // The + 0.0 turns a pure state's -0.0 into plain zero.
    let von_neumann = -spec
        .lambdas
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.ln())
        .sum::<f64>()
        + 0.0;
    let d = spec.dim();
    let normalized = if d <= 1 {
        1.0
    } else {
        von_neumann / (d as f64).ln()
    };
    let linear_entropy = 1.0 - spec.lambdas.iter().map(|l| l * l).sum::<f64>();
    EntropyReport {
        von_neumann,
        normalized,
        linear_entropy,
    }
}

/// Brute-force evaluation of the defining sum for `D_q`: over every subset of
/// size `d - q + 1` of the (rescaled) eigenvalues, the product of squared
/// pairwise differences. Exponential in `d`; refuses `d > 12`.
pub fn numeric_subdiscriminant(
    spec: &SchmidtSpectrum,
    q: usize,
    trace_scale: f64,
) -> Result<f64, OracleError> {
    let d = spec.dim();
    if d > ORACLE_MAX_DIM {
        return Err(OracleError::DimensionTooLarge(d));
    }
    assert!((1..=d).contains(&q), "q must be in 1..=d");
    let k = d - q + 1;
    let scaled: Vec<f64> = spec.lambdas.iter().map(|l| l * trace_scale).collect();
    let mut total = 0.0;
    for mask in 0u32..(1 << d) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let subset: Vec<f64> = (0..d)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| scaled[i])
            .collect();
        let mut prod = 1.0;
        for i in 0..k {
            for j in (i + 1)..k {
                let diff = subset[i] - subset[j];
                prod *= diff * diff;
            }
        }
        total += prod;
    }
    Ok(total)
}

/// `f64` view of an exact rational, for oracle comparisons. Robust to
/// numerators and denominators far beyond the `f64` exponent range.
pub fn rational_to_f64(r: &crate::exact::BigRational) -> f64 {
    crate::exact::big_ratio_to_f64(r.numer(), r.denom())
}

/// Relative agreement used by the cross-checks: true when the values differ
/// by at most `tol` relative to the larger magnitude (absolute near zero).
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    if scale < 1e-9 {
        return (a - b).abs() < tol.max(1e-9);
    }
    (a - b).abs() <= tol * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;
    use crate::state::{reduced_density, BipartiteState, Side};

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn jacobi_two_by_two() {
        let spec = jacobi_eigenvalues(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((spec.lambdas[0] - 3.0).abs() < 1e-10);
        assert!((spec.lambdas[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_diagonal_sorted() {
        let m: Vec<Vec<f64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if i == j {
                            [5.0, 1.0, 2.0, 10.0, 2.0][i]
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        let spec = jacobi_eigenvalues(&m).unwrap();
        assert_eq!(spec.lambdas, vec![10.0, 5.0, 2.0, 2.0, 1.0]);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let err = jacobi_eigenvalues(&[vec![1.0, 2.0], vec![0.5, 1.0]]).unwrap_err();
        assert_eq!(err, OracleError::NotSymmetric);
    }

    #[test]
    fn jacobi_worked_five_level_example() {
        // The worked 5x5 density at parameter value 1, normalized by its
        // trace 20: the rescaled squared-difference sum must equal the exact
        // det H_2 = 370.
        let m = [
            vec![5.0, 1.0, 1.0, 1.0, 1.0],
            vec![1.0, 1.0, 1.0, 1.0, 1.0],
            vec![1.0, 1.0, 2.0, 1.0, 1.0],
            vec![1.0, 1.0, 1.0, 10.0, 1.0],
            vec![1.0, 1.0, 1.0, 1.0, 2.0],
        ];
        let normalized: Vec<Vec<f64>> = m
            .iter()
            .map(|row| row.iter().map(|x| x / 20.0).collect())
            .collect();
        let spec = jacobi_eigenvalues(&normalized).unwrap();
        let d4 = numeric_subdiscriminant(&spec, 4, 20.0).unwrap();
        assert!((d4 - 370.0).abs() < 1e-6, "got {d4}");
    }

    #[test]
    fn hermitian_embedding_deduplicates() {
        // [[2, i], [-i, 2]] has eigenvalues {3, 1}.
        let h = vec![vec![(2.0, 0.0), (0.0, 1.0)], vec![(0.0, -1.0), (2.0, 0.0)]];
        let spec = hermitian_eigenvalues(&h).unwrap();
        assert_eq!(spec.dim(), 2);
        assert!((spec.lambdas[0] - 3.0).abs() < 1e-9);
        assert!((spec.lambdas[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn entropy_flat_and_pure() {
        let half = SchmidtSpectrum::from_eigenvalues(vec![0.5, 0.5]);
        let report = entropy_report(&half);
        assert!((report.von_neumann - 2f64.ln()).abs() < 1e-12);
        assert!((report.normalized - 1.0).abs() < 1e-12);

        let pure = SchmidtSpectrum::from_eigenvalues(vec![1.0, 0.0]);
        let report = entropy_report(&pure);
        assert_eq!(report.von_neumann, 0.0);
        assert!(report.linear_entropy.abs() < 1e-12);

        let flat5 = SchmidtSpectrum::from_eigenvalues(vec![0.2; 5]);
        let report = entropy_report(&flat5);
        assert!((report.von_neumann - 5f64.ln()).abs() < 1e-12);
        assert!((report.normalized - 1.0).abs() < 1e-12);
        assert!((report.linear_entropy - 0.8).abs() < 1e-12);
    }

    #[test]
    fn numeric_subdiscriminant_cases() {
        let spec = SchmidtSpectrum::from_eigenvalues(vec![1.0, 0.0]);
        assert_eq!(numeric_subdiscriminant(&spec, 1, 1.0).unwrap(), 1.0);

        let flat = SchmidtSpectrum::from_eigenvalues(vec![0.25; 4]);
        for q in 1..4 {
            assert_eq!(numeric_subdiscriminant(&flat, q, 1.0).unwrap(), 0.0);
        }
        // q = d reduces to counting the 1-subsets.
        assert_eq!(numeric_subdiscriminant(&flat, 4, 1.0).unwrap(), 4.0);

        let big = SchmidtSpectrum::from_eigenvalues(vec![0.1; 13]);
        assert!(matches!(
            numeric_subdiscriminant(&big, 1, 1.0),
            Err(OracleError::DimensionTooLarge(13))
        ));
    }

    #[test]
    fn spectrum_from_state_with_complex_amplitudes() {
        // (|00> + i|11>)/sqrt(2) unnormalized: flat spectrum {1/2, 1/2}.
        let state =
            BipartiteState::from_terms(2, 2, &[(0, 0, g(1)), (1, 1, GaussianRational::i())])
                .unwrap();
        let rho = reduced_density(&state, Side::B).unwrap();
        let (spec, trace) = schmidt_spectrum(&rho).unwrap();
        assert!((trace - 2.0).abs() < 1e-12);
        assert!((spec.lambdas[0] - 0.5).abs() < 1e-9);
        assert!((spec.lambdas[1] - 0.5).abs() < 1e-9);
        assert_eq!(spec.distinct_count(1e-9), 1);
    }
}
