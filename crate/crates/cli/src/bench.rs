//! Benchmark of the exact pipeline against the floating-point oracle on
//! seeded random states.
//!
//! States are drawn from the fixed linear congruential stream in
//! `maxent_core::random`, so a given `(seed, dmax, trials, bits)` produces
//! identical states — and identical agreement counts — on every run and
//! platform. Wall times are measured per call; everything else in the report
//! is deterministic.

use std::time::Instant;

use maxent_core::detector::{analysis_side, is_maximally_entangled};
use maxent_core::oracle::{close_rel, numeric_subdiscriminant, rational_to_f64, schmidt_spectrum};
use maxent_core::random::{random_state, Lcg64};
use maxent_core::state::reduced_density;

use crate::report::{BenchResult, BenchRow};

pub const AGREE_REL_TOL: f64 = 1e-8;

pub fn run(dmax: usize, trials: usize, seed: u64, bits: u32) -> BenchResult {
    let mut rng = Lcg64::new(seed);
    let mut rows = Vec::new();
    for d in 2..=dmax {
        let mut exact_ms = 0.0;
        let mut oracle_ms = 0.0;
        let mut agree = 0;
        for trial in 0..trials {
            let state = random_state(&mut rng, d, d, bits);

            let t = Instant::now();
            let verdict = is_maximally_entangled(&state).expect("random states are concrete");
            exact_ms += t.elapsed().as_secs_f64() * 1e3;

            let t = Instant::now();
            let rho = reduced_density(&state, analysis_side(d, d)).unwrap();
            let (spec, trace) = schmidt_spectrum(&rho).expect("concrete density");
            let numeric = numeric_subdiscriminant(&spec, d - 1, trace)
                .expect("bench dimensions stay within oracle range");
            oracle_ms += t.elapsed().as_secs_f64() * 1e3;

            let exact = rational_to_f64(&verdict.d_last_but_one);
            if close_rel(exact, numeric, AGREE_REL_TOL) {
                agree += 1;
            } else {
                log::debug!("bench d={d} trial={trial}: exact {exact} vs oracle {numeric}");
            }
        }
        rows.push(BenchRow {
            d,
            exact_ms: exact_ms / trials as f64,
            oracle_ms: oracle_ms / trials as f64,
            agree,
            trials,
        });
    }
    BenchResult {
        dmax,
        trials,
        seed,
        bits,
        rows,
    }
}
