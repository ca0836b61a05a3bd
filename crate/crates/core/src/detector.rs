//! The maximal-entanglement decision procedure.
//!
//! The reduced density on the smaller subsystem has all eigenvalues equal
//! exactly when the sum of squared eigenvalue differences vanishes. That sum
//! — and the whole subdiscriminant sequence it belongs to — is computed here
//! without ever finding an eigenvalue, as determinants of Hankel matrices of
//! the power sums `s_m = Tr(rho^m)`:
//!
//! ```text
//! D_q := det H_{d-q+1},   (H_k)_{ij} = s_{i+j}  (0-indexed, k x k)
//! ```
//!
//! By the Binet–Cauchy identity, `det H_k` is the sum over all k-subsets of
//! eigenvalues of their squared Vandermonde products, so `D_1` is the
//! discriminant-type product over all pairs, `D_{d-1}` is the sum of squared
//! pairwise differences, and `D_d = d`. The verdict is `D_{d-1} = 0`, an
//! exact identity over the rationals.
//!
//! For a state with one free parameter, `D_{d-1}` is a polynomial in that
//! parameter; its primitive integer form is handed to the real-root isolator
//! to decide whether any parameter value achieves maximality.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{
    bareiss_det, integer_hankel_minors, integer_hankel_verdict, isolate_real_roots,
    leading_principal_minors, poly_gcd, primitive_part_rational, squarefree_part, BigInt,
    BigRational, ExactError, GaussianInt, GaussianRational, IsolatingInterval, Matrix, Ring,
    UniPoly,
};
use crate::state::{
    power_sums, reduced_density, BipartiteState, MagnitudeViolation, ParamKind, ParamPoly,
    PowerSums, ReducedDensity, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectorError {
    #[error("state is parametric; use parametric_analysis")]
    ParametricState,

    #[error("state has no free parameter; use is_maximally_entangled")]
    NonParametricState,

    #[error(transparent)]
    Magnitude(#[from] MagnitudeViolation),

    #[error("condition polynomial is not even in the parameter; |p|\u{b2} substitution invalid")]
    NotEvenInParameter,

    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Monic characteristic polynomial `det(xI - rho)` in the dummy variable `x`,
/// with coefficients that are polynomials in the state's parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub dim: usize,
    pub poly: UniPoly<ParamPoly>,
}

impl CharPoly {
    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.poly.coeff(k)
    }
}

/// The values `D_1 .. D_d`, exact scalars or parameter polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdiscriminantSequence {
    pub d: usize,
    values: Vec<ParamPoly>,
}

impl SubdiscriminantSequence {
    /// `D_q` for `q` in `1..=d`.
    pub fn d_q(&self, q: usize) -> &ParamPoly {
        assert!((1..=self.d).contains(&q), "q out of range");
        &self.values[q - 1]
    }

    pub fn values(&self) -> &[ParamPoly] {
        &self.values
    }
}

/// Outcome of the exact test on a non-parametric state.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub maximal: bool,
    /// Dimension of the smaller subsystem, against which maximality is
    /// defined.
    pub d_used: usize,
    /// The exact value of `D_{d-1}` (the sum of squared eigenvalue
    /// differences of the reduced density).
    pub d_last_but_one: BigRational,
    /// Number of distinct eigenvalues of the reduced density.
    pub degeneracy: usize,
    /// Machine-readable flags, e.g. `product-state`.
    pub notes: Vec<String>,
}

/// The variable a parametric condition polynomial is expressed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionVariable {
    /// The real parameter itself.
    RealParam { name: String },
    /// The squared modulus of a complex parameter.
    Magnitude { name: String, var: String },
}

impl ConditionVariable {
    /// The symbol the condition polynomial is written in.
    pub fn symbol(&self) -> &str {
        match self {
            ConditionVariable::RealParam { name } => name,
            ConditionVariable::Magnitude { var, .. } => var,
        }
    }
}

/// Outcome of the analysis of a one-parameter family.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricVerdict {
    pub variable: ConditionVariable,
    /// Primitive integer form of `D_{d-1}` in the condition variable.
    pub polynomial: UniPoly<BigRational>,
    /// The rational factor removed to reach the primitive form.
    pub content: BigRational,
    /// Isolated real roots of the condition (in magnitude mode, restricted
    /// to nonnegative values).
    pub roots: Vec<IsolatingInterval>,
    /// Whether any admissible parameter value makes the state maximally
    /// entangled.
    pub achievable: bool,
    /// Set when the condition vanishes identically: the family is maximal
    /// for every parameter value (with nonvanishing norm).
    pub always_maximal: bool,
    pub notes: Vec<String>,
}

/// The subsystem kept after tracing out the larger one (ties trace out A).
pub fn analysis_side(d_a: usize, d_b: usize) -> Side {
    if d_a >= d_b {
        Side::B
    } else {
        Side::A
    }
}

/// Monic characteristic polynomial by the Faddeev–LeVerrier recurrence. All
/// divisions are by the step index and therefore exact over the coefficient
/// ring.
pub fn characteristic_polynomial(rho: &ReducedDensity) -> CharPoly {
    let n = rho.dim;
    let a = &rho.entries;
    let mut coeffs = vec![ParamPoly::zero(); n + 1];
    coeffs[n] = ParamPoly::one();
    let mut m = Matrix::<ParamPoly>::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let c = -(am.trace().exact_div(&ParamPoly::from_int(k as i64)));
        coeffs[n - k] = c.clone();
        if k < n {
            m = am.add(&Matrix::identity(n).scale(&c));
        }
    }
    CharPoly {
        dim: n,
        poly: UniPoly::new("x", coeffs),
    }
}

/// Characteristic polynomial reconstructed from power sums via Newton's
/// identities — an algebraically independent route used to cross-check the
/// Faddeev–LeVerrier result.
pub fn charpoly_from_power_sums(sums: &PowerSums) -> CharPoly {
    let d = sums.dim;
    assert!(sums.order() >= d, "need power sums up to s_d");
    // e_k = (1/k) * sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    let mut e = vec![ParamPoly::one()];
    for k in 1..=d {
        let mut acc = ParamPoly::zero();
        for i in 1..=k {
            let term = e[k - i].clone() * sums.s(i).clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc.exact_div(&ParamPoly::from_int(k as i64)));
    }
    let mut coeffs = vec![ParamPoly::zero(); d + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[d - k] = if k % 2 == 0 { ek } else { -ek };
    }
    CharPoly {
        dim: d,
        poly: UniPoly::new("x", coeffs),
    }
}

/// `det H_k` for the Hankel matrix of power sums; needs `s_0 .. s_{2k-2}`.
pub fn hankel_det(sums: &PowerSums, k: usize) -> ParamPoly {
    assert!(
        k >= 1 && sums.order() >= 2 * k - 2,
        "insufficient power sums"
    );
    let h = Matrix::from_fn(k, k, |i, j| sums.s(i + j).clone());
    bareiss_det(&h)
}

/// The full subdiscriminant sequence `D_1 .. D_d` from power sums
/// `s_0 .. s_{2d-2}`: the nested Hankel determinants read off one
/// fraction-free elimination of `H_d`.
pub fn subdiscriminant_sequence(sums: &PowerSums) -> SubdiscriminantSequence {
    let d = sums.dim;
    assert!(
        sums.order() >= (2 * d).saturating_sub(2),
        "insufficient power sums"
    );
    let h = Matrix::from_fn(d, d, |i, j| sums.s(i + j).clone());
    let minors = leading_principal_minors(&h);
    let values = (1..=d).map(|q| minors[d - q].clone()).collect();
    SubdiscriminantSequence { d, values }
}

/// The subdiscriminant sequence of a reduced density, computed through an
/// integer-cleared copy: denominators are scaled out once, the minors are
/// evaluated gcd-free (multi-modularly for concrete states), and each value
/// is rescaled back exactly. Equal value for value to
/// [`subdiscriminant_sequence`] on the density's own power sums, and far
/// faster for states with many independent denominators.
pub fn density_subdiscriminants(rho: &ReducedDensity) -> SubdiscriminantSequence {
    let d = rho.dim;
    let (cleared, l) = rho.cleared();
    let minors: Vec<ParamPoly> = match integer_matrix_of(&cleared) {
        Some(int_matrix) => integer_hankel_minors(&int_matrix, d)
            .into_iter()
            .map(|v| {
                ParamPoly::constant(GaussianInt::new(v, BigInt::zero()).to_gaussian_rational())
            })
            .collect(),
        None => {
            let sums = power_sums(&cleared, (2 * d).saturating_sub(2).max(2));
            let h = Matrix::from_fn(d, d, |i, j| sums.s(i + j).clone());
            leading_principal_minors(&h)
        }
    };
    let values = (1..=d)
        .map(|q| {
            let k = d - q + 1;
            rescale_minor(&minors[k - 1], &l, k)
        })
        .collect();
    SubdiscriminantSequence { d, values }
}

/// The cleared density as a Gaussian-integer matrix; `None` while a free
/// parameter remains.
fn integer_matrix_of(cleared: &ReducedDensity) -> Option<Matrix<GaussianInt>> {
    let n = cleared.dim;
    let mut out = Matrix::from_fn(n, n, |_, _| GaussianInt::from_int(0));
    for i in 0..n {
        for j in 0..n {
            let c = cleared.entries[(i, j)].as_constant()?;
            out[(i, j)] = GaussianInt::from_cleared(&c);
        }
    }
    Some(out)
}

fn int_trace(m: &Matrix<GaussianInt>) -> BigInt {
    let t = m.trace();
    debug_assert!(t.is_real());
    t.re
}

/// `Tr(M * M)` without forming the product matrix.
fn int_trace_sq(m: &Matrix<GaussianInt>) -> BigInt {
    let n = m.rows();
    let mut acc = GaussianInt::from_int(0);
    for i in 0..n {
        for j in 0..n {
            acc = acc + m[(i, j)].clone() * m[(j, i)].clone();
        }
    }
    debug_assert!(acc.is_real());
    acc.re
}

/// Undoes the clearing scale on `det H_k`: the determinant of the cleared
/// density's Hankel matrix is `L^(k(k-1))` times the true one.
fn rescale_minor(value: &ParamPoly, l: &BigInt, k: usize) -> ParamPoly {
    use num_traits::One as _;
    if value.is_zero() || l.is_one() {
        return value.clone();
    }
    let power = l.pow((k * (k - 1)) as u32);
    let inv = GaussianRational::from_rational(BigRational::new(BigInt::one(), power));
    value.scale(&inv)
}

/// Number of distinct eigenvalues of the reduced density: the largest `k`
/// with `det H_k != 0`, i.e. the largest `k` with `D_{d-k+1} != 0`.
/// Non-parametric sequences only.
pub fn degeneracy_profile(seq: &SubdiscriminantSequence) -> usize {
    assert!(
        seq.values.iter().all(|v| v.is_constant()),
        "degeneracy profile requires a non-parametric sequence"
    );
    let q = (1..=seq.d)
        .find(|&q| !seq.d_q(q).is_zero())
        .expect("D_d = d is never zero");
    seq.d - q + 1
}

fn constant_real(value: &ParamPoly) -> BigRational {
    let c = value
        .as_constant()
        .expect("expected a non-parametric value");
    assert!(c.is_real(), "Hermitian invariant violated: complex value");
    c.re
}

/// Decides maximal entanglement of a non-parametric state, tracing out the
/// larger subsystem.
pub fn is_maximally_entangled(state: &BipartiteState) -> Result<Verdict, DetectorError> {
    if state.is_parametric() {
        return Err(DetectorError::ParametricState);
    }
    let side = analysis_side(state.d_a(), state.d_b());
    let rho = reduced_density(state, side).expect("non-parametric state cannot fail validation");
    Ok(verdict_of_density(&rho))
}

/// The exact verdict for an already-formed non-parametric reduced density.
pub fn verdict_of_density(rho: &ReducedDensity) -> Verdict {
    let d = rho.dim;
    let (cleared, l) = rho.cleared();
    let int_matrix = integer_matrix_of(&cleared).expect("verdict requires a concrete density");

    // For d = 1 the "last but one" member extends to det H_2 = s_0 s_2 -
    // s_1^2, identically zero on a single eigenvalue: the bound is attained
    // vacuously.
    let s1 = int_trace(&int_matrix);
    let s2 = int_trace_sq(&int_matrix);
    let (d_last_but_one, degeneracy) = if d == 1 {
        (BigRational::zero(), 1)
    } else {
        let (det_h2, degeneracy) = integer_hankel_verdict(&int_matrix, d);
        (BigRational::new(det_h2, l.pow(2)), degeneracy)
    };
    let maximal = d_last_but_one.is_zero();
    debug_assert_eq!(maximal, degeneracy == 1);

    let mut notes = Vec::new();
    // For a nonnegative spectrum, (sum l)^2 == sum l^2 exactly when at most
    // one eigenvalue is nonzero, i.e. the state is a product state.
    if &s1 * &s1 == s2 {
        notes.push("product-state".to_string());
    }
    Verdict {
        maximal,
        d_used: d,
        d_last_but_one,
        degeneracy,
        notes,
    }
}

/// Evaluates `D_{d-1}` of a parametric density specialized at one parameter
/// value (in the condition variable's domain). Only `s_0 .. s_2` enter
/// `det H_2`, so one squared matrix suffices.
fn specialized_d_last(rho: &ReducedDensity, at: &BigRational) -> BigRational {
    let fixed = rho.specialize(at);
    let sums = power_sums(&fixed, 2);
    constant_real(&hankel_det(&sums, 2))
}

/// Analyzes a one-parameter family: computes the condition polynomial
/// `D_{d-1}`, isolates its admissible real roots, and re-verifies every exact
/// rational root by specialization.
pub fn parametric_analysis(state: &BipartiteState) -> Result<ParametricVerdict, DetectorError> {
    let name = match state.param_kind() {
        ParamKind::None => return Err(DetectorError::NonParametricState),
        _ => state
            .param_name()
            .expect("parametric state has a name")
            .to_string(),
    };
    let magnitude = state.param_kind() == ParamKind::ComplexMagnitude;
    let side = analysis_side(state.d_a(), state.d_b());
    let rho = reduced_density(state, side).map_err(DetectorError::Magnitude)?;
    let d = rho.dim;
    let d_last: ParamPoly = if d >= 2 {
        let (cleared, l) = rho.cleared();
        let sums = power_sums(&cleared, 2);
        rescale_minor(&hankel_det(&sums, 2), &l, 2)
    } else {
        ParamPoly::zero()
    };

    let condition_real = d_last
        .to_rational_poly()
        .expect("Hermitian power sums have real coefficients");
    let norm_poly = state
        .norm_sqr_poly()
        .to_rational_poly()
        .expect("squared norm has real coefficients");

    // In magnitude mode both the condition and the norm are polynomials in
    // the parameter's square; rewrite them in t = |p|^2.
    let (variable, condition, norm) = if magnitude {
        if !condition_real.is_even() {
            return Err(DetectorError::NotEvenInParameter);
        }
        let var = ConditionVariable::Magnitude {
            name: name.clone(),
            var: "t".to_string(),
        };
        let condition = condition_real.compress_even("t").unwrap();
        let norm = norm_poly
            .compress_even("t")
            .expect("magnitude-mode norm is even in the parameter");
        (var, condition, norm)
    } else {
        let var = ConditionVariable::RealParam { name: name.clone() };
        (var, condition_real.with_var(name.clone()), norm_poly)
    };

    let mut notes = Vec::new();

    if condition.is_zero() {
        // Degenerate family: D vanishes identically. Spot-verify at sample
        // points where the state does not vanish.
        let mut verified = 0;
        let mut sample = BigRational::one();
        while verified < 3 {
            if !norm.eval(&sample).is_zero() {
                let value = specialized_d_last(&rho_in_condition_var(&rho, magnitude), &sample);
                assert!(
                    value.is_zero(),
                    "identically-zero condition failed spot check"
                );
                verified += 1;
            }
            sample += BigRational::one();
        }
        notes.push("maximal for all parameter values".to_string());
        return Ok(ParametricVerdict {
            variable,
            polynomial: UniPoly::zero(),
            content: BigRational::zero(),
            roots: vec![],
            achievable: true,
            always_maximal: true,
            notes,
        });
    }

    let (primitive, content) = primitive_part_rational(&condition);
    let mut roots = isolate_real_roots(&primitive)?;

    if magnitude {
        roots = restrict_to_nonnegative(&primitive, roots)?;
    }

    // Candidate roots where the whole state vanishes are spurious: the
    // specialized object is not a state at all.
    let sqf = squarefree_part(&primitive);
    let shared = poly_gcd(&sqf, &squarefree_part(&norm));
    roots.retain(|root| {
        let vanishes = match &root.exact_root {
            Some(r) => norm.eval(r).is_zero(),
            None => {
                !shared.is_constant()
                    && crate::exact::count_real_roots_in(&shared, &root.lo, &root.hi)
                        .map(|c| c > 0)
                        .unwrap_or(false)
            }
        };
        if vanishes {
            notes.push(format!(
                "root near {} discarded: state norm vanishes there",
                root.midpoint_f64()
            ));
        }
        !vanishes
    });

    // Every exact rational root must reproduce a maximal verdict when
    // substituted back.
    let rho_cond = rho_in_condition_var(&rho, magnitude);
    for root in roots.iter().filter_map(|r| r.exact_root.as_ref()) {
        let value = specialized_d_last(&rho_cond, root);
        assert!(
            value.is_zero(),
            "exact root failed re-verification: D = {value} at {root}"
        );
        if !magnitude {
            let fixed = state.specialize(root).expect("norm checked nonzero");
            let verdict = is_maximally_entangled(&fixed).expect("specialized state is concrete");
            assert!(
                verdict.maximal,
                "specialized state not maximal at root {root}"
            );
        }
    }

    let achievable = !roots.is_empty();
    Ok(ParametricVerdict {
        variable,
        polynomial: primitive,
        content,
        roots,
        achievable,
        always_maximal: false,
        notes,
    })
}

/// The reduced density re-expressed in the condition variable (identity in
/// real mode, `t = p^2` in magnitude mode).
fn rho_in_condition_var(rho: &ReducedDensity, magnitude: bool) -> ReducedDensity {
    if magnitude {
        rho.compress_even("t")
    } else {
        rho.clone()
    }
}

/// Keeps only roots that are nonnegative, bisecting any bracket that
/// straddles zero until its sign is determined.
fn restrict_to_nonnegative(
    poly: &UniPoly<BigRational>,
    roots: Vec<IsolatingInterval>,
) -> Result<Vec<IsolatingInterval>, ExactError> {
    let zero = BigRational::zero();
    let sqf = squarefree_part(poly);
    let mut kept = Vec::new();
    for mut root in roots {
        if let Some(r) = &root.exact_root {
            if !r.is_negative() {
                kept.push(root);
            }
            continue;
        }
        if root.lo >= zero {
            kept.push(root);
            continue;
        }
        if root.hi <= zero {
            continue;
        }
        // Bracket straddles zero; zero itself is not a root (it would have
        // been detected exactly), so the contained root has a definite sign.
        if crate::exact::count_real_roots_in(&sqf, &zero, &root.hi)? == 1 {
            root.lo = zero.clone();
            kept.push(root);
        }
    }
    Ok(kept)
}
