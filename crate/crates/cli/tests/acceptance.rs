//! Acceptance suite: the seven release criteria, each with its stated
//! tolerance and runtime budget. Every test prints one pass line; run with
//! `cargo test -p maxent-cli --test acceptance -- --nocapture` to see them.
//!
//! Criteria are serialized through a lock so the wall-clock budgets measure
//! one criterion at a time.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use maxent_core::detector::{
    analysis_side, characteristic_polynomial, is_maximally_entangled, parametric_analysis,
    subdiscriminant_sequence, ConditionVariable,
};
use maxent_core::exact::{rat, ratio, BigRational, GaussianRational};
use maxent_core::oracle::{close_rel, numeric_subdiscriminant, rational_to_f64, schmidt_spectrum};
use maxent_core::random::{random_rational, random_state, Lcg64};
use maxent_core::state::{power_sums, reduced_density, BipartiteState, ParamKind, ParamPoly, Side};
use num_traits::{One, Zero};

static SERIAL: Mutex<()> = Mutex::new(());

fn locked() -> std::sync::MutexGuard<'static, ()> {
    SERIAL
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// p|00> + q|11> + r|10> + s|01> with exact rational coefficients.
fn two_qubit_rational(
    p: &BigRational,
    q: &BigRational,
    r: &BigRational,
    s: &BigRational,
) -> BipartiteState {
    let wrap = |x: &BigRational| GaussianRational::from_rational(x.clone());
    BipartiteState::from_terms(
        2,
        2,
        &[
            (0, 0, wrap(p)),
            (1, 1, wrap(q)),
            (1, 0, wrap(r)),
            (0, 1, wrap(s)),
        ],
    )
    .unwrap()
}

fn two_qubit(p: i64, q: i64, r: i64, s: i64) -> BipartiteState {
    two_qubit_rational(&rat(p), &rat(q), &rat(r), &rat(s))
}

fn five_level_state() -> BipartiteState {
    let one = ParamPoly::constant(g(1));
    let p = ParamPoly::monomial("p", GaussianRational::one(), 1);
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
            (4, 4, p),
        ],
        ParamKind::Real,
    )
    .unwrap()
}

fn budget(criterion: u32, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
}

#[test]
fn criterion_1_bell_suite() {
    let _guard = locked();
    let start = Instant::now();

    // The four Bell combinations plus (p, q, r, s) = (1, -1, 1, 1).
    let maximal_tuples = [
        (0, 0, 1, 1),
        (0, 0, 1, -1),
        (1, 1, 0, 0),
        (1, -1, 0, 0),
        (1, -1, 1, 1),
    ];
    for (p, q, r, s) in maximal_tuples {
        let verdict = is_maximally_entangled(&two_qubit(p, q, r, s)).unwrap();
        assert!(verdict.maximal, "tuple {:?}", (p, q, r, s));
        assert!(verdict.d_last_but_one.is_zero(), "D must vanish exactly");
        assert_eq!(verdict.degeneracy, 1);
    }

    // Product-basis kets are never maximal.
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let state = BipartiteState::from_terms(2, 2, &[(i, j, g(1))]).unwrap();
        let verdict = is_maximally_entangled(&state).unwrap();
        assert!(!verdict.maximal, "ket ({i}, {j})");
        assert!(!verdict.d_last_but_one.is_zero());
    }

    budget(1, start, Duration::from_secs(1));
    println!("criterion 1 (Bell suite): PASS [{:?}]", start.elapsed());
}

#[test]
fn criterion_2_two_qubit_symbolic_identities() {
    let _guard = locked();
    let start = Instant::now();

    let mut rng = Lcg64::new(0x5eed_0002);
    let mut checked = 0;
    while checked < 100 {
        let p = random_rational(&mut rng, 8);
        let q = random_rational(&mut rng, 8);
        let r = random_rational(&mut rng, 8);
        let s = random_rational(&mut rng, 8);
        let state = two_qubit_rational(&p, &q, &r, &s);
        let rho = reduced_density(&state, Side::B).unwrap();

        // Characteristic polynomial: x^2 - (p^2+q^2+r^2+s^2) x + (pq - rs)^2.
        let cp = characteristic_polynomial(&rho);
        let sum_sq = &p * &p + &q * &q + &r * &r + &s * &s;
        let det = &p * &q - &r * &s;
        assert_eq!(cp.coeff(2), ParamPoly::one());
        assert_eq!(
            cp.coeff(1),
            ParamPoly::constant(GaussianRational::from_rational(-sum_sq.clone()))
        );
        assert_eq!(
            cp.coeff(0),
            ParamPoly::constant(GaussianRational::from_rational(&det * &det))
        );

        // D_1 = [(p+q)^2 + (r-s)^2] [(p-q)^2 + (r+s)^2], exactly.
        let seq = subdiscriminant_sequence(&power_sums(&rho, 2));
        let plus = &p + &q;
        let minus = &p - &q;
        let rms = &r - &s;
        let rps = &r + &s;
        let expected = (&plus * &plus + &rms * &rms) * (&minus * &minus + &rps * &rps);
        assert_eq!(
            *seq.d_q(1),
            ParamPoly::constant(GaussianRational::from_rational(expected))
        );
        checked += 1;
    }
    assert_eq!(checked, 100);

    budget(2, start, Duration::from_secs(5));
    println!(
        "criterion 2 (two-qubit symbolic identities, {checked} samples): PASS [{:?}]",
        start.elapsed()
    );
}

#[test]
fn criterion_3_five_level_reproduction() {
    let _guard = locked();
    let start = Instant::now();
    let state = five_level_state();

    // Reduced density: all ones off the diagonal, diagonal (5,1,2,10,p^2+1).
    let rho = reduced_density(&state, Side::B).unwrap();
    for r in 0..5 {
        for c in 0..5 {
            let expected = if r == c {
                match r {
                    0 => ParamPoly::constant(g(5)),
                    1 => ParamPoly::constant(g(1)),
                    2 => ParamPoly::constant(g(2)),
                    3 => ParamPoly::constant(g(10)),
                    _ => ParamPoly::new("p", vec![g(1), g(0), g(1)]),
                }
            } else {
                ParamPoly::constant(g(1))
            };
            assert_eq!(rho.entries[(r, c)], expected, "entry ({r}, {c})");
        }
    }

    // Monic characteristic polynomial, coefficient by coefficient in p.
    let cp = characteristic_polynomial(&rho);
    let pc = |coeffs: &[i64]| ParamPoly::new("p", coeffs.iter().map(|&c| g(c)).collect());
    assert_eq!(cp.coeff(5), ParamPoly::one());
    assert_eq!(cp.coeff(4), pc(&[-19, 0, -1]));
    assert_eq!(cp.coeff(3), pc(&[105, 0, 18]));
    assert_eq!(cp.coeff(2), pc(&[-183, 0, -91]));
    assert_eq!(cp.coeff(1), pc(&[72, 0, 134]));
    assert_eq!(cp.coeff(0), pc(&[0, 0, -36]));

    // Parametric analysis in both modes: primitive polynomial
    // 2p^4 - 14p^2 + 197 and no admissible roots.
    let real = parametric_analysis(&state).unwrap();
    assert_eq!(real.polynomial.to_string(), "2p^4 - 14p^2 + 197");
    assert_eq!(real.content, rat(2));
    assert!(real.roots.is_empty() && !real.achievable && !real.always_maximal);

    let magnitude =
        parametric_analysis(&state.with_param_kind(ParamKind::ComplexMagnitude).unwrap()).unwrap();
    assert!(matches!(
        magnitude.variable,
        ConditionVariable::Magnitude { .. }
    ));
    assert_eq!(magnitude.polynomial.to_string(), "2t^2 - 14t + 197");
    assert!(magnitude.roots.is_empty() && !magnitude.achievable);

    budget(3, start, Duration::from_secs(1));
    println!(
        "criterion 3 (5x5 reproduction): PASS [{:?}]",
        start.elapsed()
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let _guard = locked();
    let start = Instant::now();

    let mut rng = Lcg64::new(0x5eed_0004);
    let mut d_checked = 0;
    let mut degeneracy_checked = 0;
    for _ in 0..200 {
        let d_a = 2 + (rng.next_u64() % 5) as usize;
        let d_b = 2 + (rng.next_u64() % 5) as usize;
        let state = random_state(&mut rng, d_a, d_b, 16);
        let verdict = is_maximally_entangled(&state).unwrap();

        let side = analysis_side(d_a, d_b);
        let rho = reduced_density(&state, side).unwrap();
        let (spec, trace) = schmidt_spectrum(&rho).unwrap();
        let numeric = numeric_subdiscriminant(&spec, verdict.d_used - 1, trace).unwrap();
        let exact = rational_to_f64(&verdict.d_last_but_one);
        assert!(
            close_rel(exact, numeric, 1e-8),
            "{d_a}x{d_b}: exact {exact} vs numeric {numeric}"
        );
        d_checked += 1;

        if spec.min_nonzero_gap().is_some_and(|gap| gap > 1e-3) {
            assert_eq!(
                verdict.degeneracy,
                spec.distinct_count(1e-9),
                "degeneracy mismatch on {d_a}x{d_b}"
            );
            degeneracy_checked += 1;
        }
    }
    assert_eq!(d_checked, 200);
    assert!(degeneracy_checked > 100, "too few gap-resolved spectra");

    budget(4, start, Duration::from_secs(60));
    println!(
        "criterion 4 (oracle equivalence, 200 states, {degeneracy_checked} degeneracy checks): PASS [{:?}]",
        start.elapsed()
    );
}

#[test]
fn criterion_5_scale_covariance() {
    let _guard = locked();
    let start = Instant::now();

    let bell_tuples = [(0, 0, 1, 1), (0, 0, 1, -1), (1, 1, 0, 0), (1, -1, 0, 0)];
    let scales = [
        GaussianRational::from_int(3),
        GaussianRational::from_rational(ratio(1, 2)),
        GaussianRational::new(rat(2), rat(1)),
    ];
    for (p, q, r, s) in bell_tuples {
        let base = two_qubit(p, q, r, s);
        let rho = reduced_density(&base, Side::B).unwrap();
        let seq = subdiscriminant_sequence(&power_sums(&rho, 2));
        let verdict = is_maximally_entangled(&base).unwrap();
        for c in &scales {
            let scaled = base.scale(c);
            let rho_c = reduced_density(&scaled, Side::B).unwrap();
            let seq_c = subdiscriminant_sequence(&power_sums(&rho_c, 2));
            let c2 = c.norm_sqr();
            for q_idx in 1..=2usize {
                let k = 2 - q_idx + 1;
                let mut factor = BigRational::one();
                for _ in 0..k * (k - 1) {
                    factor *= c2.clone();
                }
                let lhs = seq_c.d_q(q_idx).as_constant().unwrap();
                let rhs =
                    seq.d_q(q_idx).as_constant().unwrap() * GaussianRational::from_rational(factor);
                assert_eq!(lhs, rhs, "D_{q_idx} under scale {c}");
            }
            let verdict_c = is_maximally_entangled(&scaled).unwrap();
            assert_eq!(verdict.maximal, verdict_c.maximal);
            assert_eq!(verdict.degeneracy, verdict_c.degeneracy);
        }
    }

    budget(5, start, Duration::from_secs(1));
    println!(
        "criterion 5 (scale covariance): PASS [{:?}]",
        start.elapsed()
    );
}

#[test]
fn criterion_6_degenerate_spectra() {
    let _guard = locked();
    let start = Instant::now();

    let patterns: [(&[i64; 4], usize, bool); 5] = [
        (&[1, 1, 1, 1], 1, true),
        (&[1, 1, 1, 2], 2, false),
        (&[1, 1, 2, 2], 2, false),
        (&[1, 1, 2, 3], 3, false),
        (&[1, 2, 3, 4], 4, false),
    ];
    for (coeffs, expected_profile, expected_maximal) in patterns {
        let terms: Vec<_> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, i, g(c)))
            .collect();
        let state = BipartiteState::from_terms(4, 4, &terms).unwrap();
        let verdict = is_maximally_entangled(&state).unwrap();
        assert_eq!(verdict.degeneracy, expected_profile, "pattern {coeffs:?}");
        assert_eq!(verdict.maximal, expected_maximal, "pattern {coeffs:?}");
    }

    budget(6, start, Duration::from_secs(1));
    println!(
        "criterion 6 (degenerate spectra): PASS [{:?}]",
        start.elapsed()
    );
}

#[test]
fn criterion_7_engineering_target() {
    let _guard = locked();
    let start = Instant::now();

    // Full exact detect on d_A = d_B = 8 with 32-bit coefficients, under two
    // seconds for each state.
    let mut rng = Lcg64::new(0x5eed_0007);
    for trial in 0..3 {
        let state = random_state(&mut rng, 8, 8, 32);
        let t = Instant::now();
        let verdict = is_maximally_entangled(&state).unwrap();
        let elapsed = t.elapsed();
        assert!(
            elapsed < Duration::from_secs(2),
            "trial {trial}: detect took {elapsed:?}"
        );
        assert!(!verdict.maximal, "random dense states are not maximal");
    }

    // Bench reproducibility: fixed seed, identical CSV structure and
    // agreement columns across runs.
    let args = [
        "bench", "--dmax", "4", "--trials", "5", "--seed", "7", "--bits", "16", "--csv",
    ];
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_maxent"))
            .args(args)
            .output()
            .expect("bench runs");
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.lines().next().unwrap(), "d,exact_ms,oracle_ms,agree");
    let stable = |text: &str| -> Vec<(String, String)> {
        text.lines()
            .skip(1)
            .map(|l| {
                let cells: Vec<&str> = l.split(',').collect();
                (cells[0].to_string(), cells[3].to_string())
            })
            .collect()
    };
    assert_eq!(stable(&first), stable(&second), "bench CSV must reproduce");
    // Full agreement between the exact pipeline and the numeric oracle.
    for (d, agree) in stable(&first) {
        assert_eq!(agree, "5", "agreement at d = {d}");
    }

    budget(7, start, Duration::from_secs(30));
    println!(
        "criterion 7 (engineering target): PASS [{:?}]",
        start.elapsed()
    );
}
