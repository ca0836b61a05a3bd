//! Pure bipartite states in the product basis, their reduced density
//! matrices, and power sums.
//!
//! A state is a `d_A x d_B` coefficient matrix `C`, entry `(i, j)` multiplying
//! the product ket with subsystem-A label `i` and subsystem-B label `j` (the
//! flattened pure-state index is `i * d_B + j`). Reduced densities are formed
//! as Gram matrices — tracing out A gives `C† C`, tracing out B gives `C C†` —
//! which equals the partial trace of the full projector without ever
//! materializing it.
//!
//! Entries are polynomials in at most one formal parameter. A state is
//! non-parametric (every entry degree 0), carries a real parameter, or is in
//! complex-magnitude mode, where the structural check in
//! [`validate_magnitude_mode`] guarantees the parameter enters the reduced
//! density only through its squared modulus.

mod parse;

pub use parse::{parse_state, parse_state_full, ParsedState};

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{BigInt, BigRational, Conj, GaussianRational, Matrix, UniPoly};

/// Univariate polynomial in the state's single formal parameter, with exact
/// complex-rational coefficients.
pub type ParamPoly = UniPoly<GaussianRational>;

/// Which subsystem a reduced density matrix describes (the side *kept*, not
/// the side traced out).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// How the state's free parameter (if any) is to be interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// No free parameter: every coefficient is an exact scalar.
    None,
    /// A single real formal parameter.
    Real,
    /// A single complex parameter entering only via its squared modulus;
    /// requires the structural isolation check before use.
    ComplexMagnitude,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason}")]
pub struct MagnitudeViolation {
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("term index ({i}, {j}) out of range for dims {d_a} x {d_b}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        d_a: usize,
        d_b: usize,
    },

    #[error("duplicate term for index ({i}, {j})")]
    DuplicateTerm { i: usize, j: usize },

    #[error("two different parameter names: `{first}` and `{second}`")]
    MultipleParameters { first: String, second: String },

    #[error("empty state: no nonzero amplitude")]
    EmptyState,

    #[error("dimensions must be positive")]
    BadDims,

    #[error("parameter kind declared but no term carries a parameter")]
    UnusedParameterKind,

    #[error("state carries a parameter but was declared non-parametric")]
    UndeclaredParameter,

    #[error(transparent)]
    Magnitude(#[from] MagnitudeViolation),
}

/// An unnormalized pure state of a bipartite system. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    d_a: usize,
    d_b: usize,
    coeffs: Matrix<ParamPoly>,
    kind: ParamKind,
    param_name: Option<String>,
}

impl BipartiteState {
    /// Validates and builds a state from its coefficient matrix.
    ///
    /// Exactly the non-parametric entries may be degree 0; a parametric kind
    /// requires at least one entry of positive degree, all sharing one
    /// indeterminate name.
    pub fn new(coeffs: Matrix<ParamPoly>, kind: ParamKind) -> Result<Self, StateError> {
        let d_a = coeffs.rows();
        let d_b = coeffs.cols();
        let mut param_name: Option<String> = None;
        let mut any_nonzero = false;
        for i in 0..d_a {
            for j in 0..d_b {
                let entry = &coeffs[(i, j)];
                if !entry.is_zero() {
                    any_nonzero = true;
                }
                if !entry.is_constant() {
                    match &param_name {
                        None => param_name = Some(entry.var().to_string()),
                        Some(name) if name == entry.var() => {}
                        Some(name) => {
                            return Err(StateError::MultipleParameters {
                                first: name.clone(),
                                second: entry.var().to_string(),
                            })
                        }
                    }
                }
            }
        }
        if !any_nonzero {
            return Err(StateError::EmptyState);
        }
        match (kind, &param_name) {
            (ParamKind::None, Some(_)) => return Err(StateError::UndeclaredParameter),
            (ParamKind::Real | ParamKind::ComplexMagnitude, None) => {
                return Err(StateError::UnusedParameterKind)
            }
            _ => {}
        }
        Ok(Self {
            d_a,
            d_b,
            coeffs,
            kind,
            param_name,
        })
    }

    /// Convenience constructor for non-parametric states from sparse terms.
    pub fn from_terms(
        d_a: usize,
        d_b: usize,
        terms: &[(usize, usize, GaussianRational)],
    ) -> Result<Self, StateError> {
        if d_a == 0 || d_b == 0 {
            return Err(StateError::BadDims);
        }
        let mut coeffs = Matrix::<ParamPoly>::zeros(d_a, d_b);
        for (i, j, c) in terms {
            if *i >= d_a || *j >= d_b {
                return Err(StateError::IndexOutOfRange {
                    i: *i,
                    j: *j,
                    d_a,
                    d_b,
                });
            }
            if !coeffs[(*i, *j)].is_zero() {
                return Err(StateError::DuplicateTerm { i: *i, j: *j });
            }
            coeffs[(*i, *j)] = ParamPoly::constant(c.clone());
        }
        Self::new(coeffs, ParamKind::None)
    }

    /// Convenience constructor for parametric states from sparse polynomial
    /// terms.
    pub fn from_param_terms(
        d_a: usize,
        d_b: usize,
        terms: &[(usize, usize, ParamPoly)],
        kind: ParamKind,
    ) -> Result<Self, StateError> {
        if d_a == 0 || d_b == 0 {
            return Err(StateError::BadDims);
        }
        let mut coeffs = Matrix::<ParamPoly>::zeros(d_a, d_b);
        for (i, j, c) in terms {
            if *i >= d_a || *j >= d_b {
                return Err(StateError::IndexOutOfRange {
                    i: *i,
                    j: *j,
                    d_a,
                    d_b,
                });
            }
            if !coeffs[(*i, *j)].is_zero() {
                return Err(StateError::DuplicateTerm { i: *i, j: *j });
            }
            coeffs[(*i, *j)] = c.clone();
        }
        Self::new(coeffs, kind)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// Dimension of the smaller subsystem — the `d` against which maximal
    /// entanglement is defined.
    pub fn d_min(&self) -> usize {
        self.d_a.min(self.d_b)
    }

    pub fn coeffs(&self) -> &Matrix<ParamPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &ParamPoly {
        &self.coeffs[(i, j)]
    }

    pub fn param_kind(&self) -> ParamKind {
        self.kind
    }

    pub fn param_name(&self) -> Option<&str> {
        self.param_name.as_deref()
    }

    pub fn is_parametric(&self) -> bool {
        self.kind != ParamKind::None
    }

    /// Rebinds the parameter interpretation (used when the analysis mode is
    /// chosen on the command line rather than in the file).
    pub fn with_param_kind(&self, kind: ParamKind) -> Result<Self, StateError> {
        Self::new(self.coeffs.clone(), kind)
    }

    /// The state scaled by a nonzero exact scalar.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        assert!(!c.is_zero(), "scaling a state by zero");
        let factor = ParamPoly::constant(c.clone());
        let coeffs = self.coeffs.map(|e| e.clone() * factor.clone());
        Self {
            coeffs,
            ..self.clone()
        }
    }

    /// Substitutes a rational value for the parameter, yielding a
    /// non-parametric state. Errors if every amplitude vanishes there.
    pub fn specialize(&self, value: &BigRational) -> Result<Self, StateError> {
        let coeffs = self
            .coeffs
            .map(|e| ParamPoly::constant(e.eval_rational(value)));
        Self::new(coeffs, ParamKind::None)
    }

    /// Squared norm of the state as a polynomial in the parameter:
    /// the sum of `c * conj(c)` over all amplitudes. Real coefficients.
    pub fn norm_sqr_poly(&self) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for i in 0..self.d_a {
            for j in 0..self.d_b {
                let c = &self.coeffs[(i, j)];
                if !c.is_zero() {
                    acc = acc + c.conj() * c.clone();
                }
            }
        }
        acc
    }
}

/// A reduced density matrix: Hermitian, with polynomial entries in at most
/// one parameter. `side` names the subsystem it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensity {
    pub side: Side,
    pub dim: usize,
    pub entries: Matrix<ParamPoly>,
}

impl ReducedDensity {
    /// Least common multiple of every denominator in the entries (both
    /// rational parts of every polynomial coefficient).
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        let mut acc = BigInt::from(1);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for c in self.entries[(i, j)].coeffs() {
                    acc = acc.lcm(c.re.denom());
                    acc = acc.lcm(c.im.denom());
                }
            }
        }
        acc
    }

    /// Integer-cleared copy: `(L * rho, L)` with `L` the denominator lcm.
    /// Power sums and Hankel determinants of the copy are those of `rho`
    /// rescaled by exact powers of `L`, with all arithmetic gcd-free.
    pub fn cleared(&self) -> (ReducedDensity, BigInt) {
        let l = self.denominator_lcm();
        if l == BigInt::from(1) {
            return (self.clone(), l);
        }
        let factor = ParamPoly::constant(GaussianRational::from_rational(
            BigRational::from_integer(l.clone()),
        ));
        let entries = self.entries.map(|e| e.clone() * factor.clone());
        (
            ReducedDensity {
                side: self.side,
                dim: self.dim,
                entries,
            },
            l,
        )
    }

    pub fn is_parametric(&self) -> bool {
        let mut parametric = false;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.entries[(i, j)].is_constant() {
                    parametric = true;
                }
            }
        }
        parametric
    }

    /// Substitutes a rational value for the parameter in every entry.
    pub fn specialize(&self, value: &BigRational) -> ReducedDensity {
        ReducedDensity {
            side: self.side,
            dim: self.dim,
            entries: self
                .entries
                .map(|e| ParamPoly::constant(e.eval_rational(value))),
        }
    }

    /// Rewrites every (even) entry as a polynomial in `t`, where the original
    /// indeterminate stands for the parameter and `t` for its square. Only
    /// valid after the magnitude-mode structural check.
    pub fn compress_even(&self, var: &str) -> ReducedDensity {
        ReducedDensity {
            side: self.side,
            dim: self.dim,
            entries: self.entries.map(|e| {
                e.compress_even(var)
                    .expect("magnitude-mode density must be even in the parameter")
            }),
        }
    }
}

/// Power sums `s_k = Tr(rho^k)` of a reduced density, with `s_0` the
/// dimension as an exact integer.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums {
    pub dim: usize,
    values: Vec<ParamPoly>,
}

impl PowerSums {
    /// `s_k`. Panics beyond the computed order.
    pub fn s(&self, k: usize) -> &ParamPoly {
        &self.values[k]
    }

    /// Highest computed order.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

/// Partial trace as a Gram matrix: keeping side B forms `C† C`, keeping side
/// A forms `C C†`. In complex-magnitude mode the structural check runs first
/// and the result is a polynomial in the parameter's square.
pub fn reduced_density(
    state: &BipartiteState,
    side: Side,
) -> Result<ReducedDensity, MagnitudeViolation> {
    if state.param_kind() == ParamKind::ComplexMagnitude {
        validate_magnitude_mode(state, side.other())?;
    }
    let c = state.coeffs();
    let entries = match side {
        Side::B => c.dagger().mul(c),
        Side::A => c.mul(&c.dagger()),
    };
    let dim = match side {
        Side::A => state.d_a(),
        Side::B => state.d_b(),
    };
    Ok(ReducedDensity { side, dim, entries })
}

/// Structural check for complex-magnitude mode.
///
/// The parameter must occupy exactly one amplitude, as a pure linear term,
/// and that amplitude must be alone in its row (tracing out A) or column
/// (tracing out B). Then every appearance of the parameter in the reduced
/// density pairs it with its own conjugate, so the density is a polynomial in
/// the squared modulus and the substitution `t = |p|^2` is sound.
pub fn validate_magnitude_mode(
    state: &BipartiteState,
    traced_side: Side,
) -> Result<(), MagnitudeViolation> {
    if state.param_kind() != ParamKind::ComplexMagnitude {
        return Err(MagnitudeViolation {
            reason: "state is not in complex-magnitude mode".into(),
        });
    }
    let c = state.coeffs();
    let mut carriers = Vec::new();
    for i in 0..state.d_a() {
        for j in 0..state.d_b() {
            if !c[(i, j)].is_constant() {
                carriers.push((i, j));
            }
        }
    }
    let (a, b) = match carriers.as_slice() {
        [only] => *only,
        _ => {
            return Err(MagnitudeViolation {
                reason: format!(
                    "parameter must appear in exactly one amplitude, found {}",
                    carriers.len()
                ),
            })
        }
    };
    let entry = &c[(a, b)];
    if entry.degree() != Some(1) || !entry.coeff(0).is_zero() {
        return Err(MagnitudeViolation {
            reason: "parameter amplitude must be a pure linear term".into(),
        });
    }
    let isolated = match traced_side {
        Side::A => (0..state.d_b()).all(|j| j == b || c[(a, j)].is_zero()),
        Side::B => (0..state.d_a()).all(|i| i == a || c[(i, b)].is_zero()),
    };
    if isolated {
        Ok(())
    } else {
        Err(MagnitudeViolation {
            reason:
                "parameter mixes linearly with other amplitudes; |p|\u{b2} substitution invalid"
                    .into(),
        })
    }
}

/// Exact power sums `s_0 .. s_m` of a reduced density, by iterated matrix
/// products over the polynomial ring.
pub fn power_sums(rho: &ReducedDensity, m: usize) -> PowerSums {
    assert!(m >= 1, "at least s_1 must be requested");
    let mut values = Vec::with_capacity(m + 1);
    values.push(ParamPoly::from_int(rho.dim as i64));
    let mut power = rho.entries.clone();
    values.push(power.trace());
    for _ in 2..=m {
        power = power.mul(&rho.entries);
        values.push(power.trace());
    }
    PowerSums {
        dim: rho.dim,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use num_traits::One;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn pvar(name: &str) -> ParamPoly {
        ParamPoly::monomial(name, GaussianRational::one(), 1)
    }

    /// The 2x2 family p|00> + q|11> + r|10> + s|01> with rational entries.
    fn two_qubit(p: i64, q: i64, r: i64, s: i64) -> BipartiteState {
        BipartiteState::from_terms(
            2,
            2,
            &[(0, 0, g(p)), (1, 1, g(q)), (1, 0, g(r)), (0, 1, g(s))],
        )
        .unwrap()
    }

    #[test]
    fn reduced_density_two_qubit_worked_example() {
        // (p,q,r,s) = (1,2,3,4): rho_B = [[10, 10], [10, 20]].
        let state = two_qubit(1, 2, 3, 4);
        let rho = reduced_density(&state, Side::B).unwrap();
        assert_eq!(rho.dim, 2);
        assert_eq!(rho.entries[(0, 0)].as_constant().unwrap(), g(10));
        assert_eq!(rho.entries[(0, 1)].as_constant().unwrap(), g(10));
        assert_eq!(rho.entries[(1, 0)].as_constant().unwrap(), g(10));
        assert_eq!(rho.entries[(1, 1)].as_constant().unwrap(), g(20));
    }

    #[test]
    fn reduced_density_product_state() {
        let state = BipartiteState::from_terms(2, 2, &[(0, 0, g(1))]).unwrap();
        let rho = reduced_density(&state, Side::B).unwrap();
        assert_eq!(rho.entries[(0, 0)].as_constant().unwrap(), g(1));
        assert_eq!(rho.entries[(0, 1)].as_constant().unwrap(), g(0));
        assert_eq!(rho.entries[(1, 1)].as_constant().unwrap(), g(0));
    }

    #[test]
    fn five_level_density_matches_worked_matrix() {
        let state = five_level_state();
        let rho = reduced_density(&state, Side::B).unwrap();
        assert_eq!(rho.dim, 5);
        for r in 0..5 {
            for c in 0..5 {
                let e = &rho.entries[(r, c)];
                if r == 4 && c == 4 {
                    // p^2 + 1
                    assert_eq!(
                        *e,
                        ParamPoly::new("p", vec![g(1), g(0), g(1)]),
                        "entry (4,4)"
                    );
                } else if r == c {
                    let diag = [5, 1, 2, 10];
                    assert_eq!(e.as_constant().unwrap(), g(diag[r]), "entry ({r},{c})");
                } else {
                    assert_eq!(e.as_constant().unwrap(), g(1), "entry ({r},{c})");
                }
            }
        }
    }

    pub(crate) fn five_level_state() -> BipartiteState {
        let one = ParamPoly::constant(g(1));
        BipartiteState::from_param_terms(
            5,
            5,
            &[
                (0, 2, one.clone()),
                (1, 0, ParamPoly::constant(g(2))),
                (2, 0, one.clone()),
                (2, 1, one.clone()),
                (2, 2, one.clone()),
                (2, 3, one.clone()),
                (2, 4, one.clone()),
                (3, 3, ParamPoly::constant(g(3))),
                (4, 4, pvar("p")),
            ],
            ParamKind::Real,
        )
        .unwrap()
    }

    #[test]
    fn power_sums_of_five_level_example() {
        let state = five_level_state();
        let rho = reduced_density(&state, Side::B).unwrap();
        let sums = power_sums(&rho, 2);
        // s_1 = p^2 + 19, the trace of the worked reduced density.
        assert_eq!(*sums.s(1), ParamPoly::new("p", vec![g(19), g(0), g(1)]));
        let at_one = rho.specialize(&rat(1));
        let sums1 = power_sums(&at_one, 2);
        assert_eq!(sums1.s(1).as_constant().unwrap(), g(20));
        assert_eq!(sums1.s(2).as_constant().unwrap(), g(154));
    }

    #[test]
    fn power_sums_of_identity_like_density() {
        let state = two_qubit(1, 1, 0, 0); // |00> + |11>
        let rho = reduced_density(&state, Side::B).unwrap();
        let sums = power_sums(&rho, 2);
        assert_eq!(sums.s(1).as_constant().unwrap(), g(2));
        assert_eq!(sums.s(2).as_constant().unwrap(), g(2));
    }

    #[test]
    fn magnitude_mode_isolated_row_passes() {
        let state = five_level_state()
            .with_param_kind(ParamKind::ComplexMagnitude)
            .unwrap();
        assert!(validate_magnitude_mode(&state, Side::A).is_ok());
    }

    #[test]
    fn magnitude_mode_shared_row_fails() {
        // |00> + p|01>: row 0 holds both amplitudes.
        let state = BipartiteState::from_param_terms(
            2,
            2,
            &[(0, 0, ParamPoly::constant(g(1))), (0, 1, pvar("p"))],
            ParamKind::ComplexMagnitude,
        )
        .unwrap();
        let err = validate_magnitude_mode(&state, Side::A).unwrap_err();
        assert!(err.reason.contains("mixes linearly"));
        // Tracing out B instead is fine: the columns are disjoint.
        assert!(validate_magnitude_mode(&state, Side::B).is_ok());
    }

    #[test]
    fn magnitude_mode_disjoint_rows_pass() {
        // |00> + p|11>
        let state = BipartiteState::from_param_terms(
            2,
            2,
            &[(0, 0, ParamPoly::constant(g(1))), (1, 1, pvar("p"))],
            ParamKind::ComplexMagnitude,
        )
        .unwrap();
        assert!(validate_magnitude_mode(&state, Side::A).is_ok());
    }

    #[test]
    fn magnitude_mode_rejects_affine_parameter_entry() {
        let affine = ParamPoly::new("p", vec![g(1), g(1)]); // 1 + p
        let state = BipartiteState::from_param_terms(
            2,
            2,
            &[(0, 0, affine), (1, 1, ParamPoly::constant(g(1)))],
            ParamKind::ComplexMagnitude,
        )
        .unwrap();
        let err = validate_magnitude_mode(&state, Side::A).unwrap_err();
        assert!(err.reason.contains("pure linear term"));
    }

    #[test]
    fn construction_rejects_zero_state() {
        assert_eq!(
            BipartiteState::from_terms(2, 2, &[]),
            Err(StateError::EmptyState)
        );
        assert_eq!(
            BipartiteState::from_terms(2, 2, &[(0, 0, g(0))]),
            Err(StateError::EmptyState)
        );
    }

    #[test]
    fn construction_rejects_mixed_parameters() {
        let err = BipartiteState::from_param_terms(
            2,
            2,
            &[(0, 0, pvar("p")), (1, 1, pvar("q"))],
            ParamKind::Real,
        )
        .unwrap_err();
        assert!(matches!(err, StateError::MultipleParameters { .. }));
    }

    #[test]
    fn specialization_and_scaling() {
        let state = BipartiteState::from_param_terms(
            2,
            2,
            &[(0, 0, ParamPoly::constant(g(1))), (1, 1, pvar("p"))],
            ParamKind::Real,
        )
        .unwrap();
        let at2 = state.specialize(&rat(2)).unwrap();
        assert_eq!(at2.coeff(1, 1).as_constant().unwrap(), g(2));
        assert_eq!(at2.param_kind(), ParamKind::None);

        let norm = state.norm_sqr_poly();
        assert_eq!(norm, ParamPoly::new("p", vec![g(1), g(0), g(1)]));

        let scaled = at2.scale(&GaussianRational::new(rat(0), ratio(1, 2)));
        // |i/2 * 2|^2 + |i/2|^2 = 1 + 1/4
        assert_eq!(
            scaled.norm_sqr_poly().as_constant().unwrap(),
            GaussianRational::from_rational(ratio(5, 4))
        );
    }
}
