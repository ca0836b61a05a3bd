//! Report payloads: one serde struct per command, emitted either as JSON
//! (deterministic for a fixed input, apart from the timings block) or as
//! plain text. Every exact scalar travels as a string in the scalar text
//! grammar, so parsing the JSON recovers it bit for bit.

use serde::Serialize;

use maxent_core::detector::{ConditionVariable, ParametricVerdict, Verdict};
use maxent_core::exact::{primitive_part_rational, IsolatingInterval};
use maxent_core::oracle::{EntropyReport, SchmidtSpectrum};
use maxent_core::state::Side;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub input_sha: String,
    pub result: T,
    pub timings_ms: Timings,
}

#[derive(Serialize)]
pub struct Timings {
    pub total: f64,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, input_sha: String, result: T, total_ms: f64) -> Self {
        Self {
            command: command.to_string(),
            input_sha,
            result,
            timings_ms: Timings { total: total_ms },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Serialize)]
pub struct DetectResult {
    pub d_a: usize,
    pub d_b: usize,
    pub d: usize,
    pub traced_side: String,
    pub maximal: bool,
    pub d_last_but_one: String,
    pub degeneracy: usize,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
}

#[derive(Serialize)]
pub struct OracleResult {
    pub d: usize,
    pub trace: f64,
    pub lambdas: Vec<f64>,
    pub schmidt: Vec<f64>,
    pub von_neumann: f64,
    pub normalized_entropy: f64,
    pub linear_entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_d_last: Option<f64>,
}

#[derive(Serialize)]
pub struct SequenceResult {
    pub d: usize,
    pub entries: Vec<SequenceEntry>,
}

#[derive(Serialize)]
pub struct SequenceEntry {
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub content_removed: Option<String>,
}

#[derive(Serialize)]
pub struct ParametricResult {
    pub parameter: String,
    pub mode: String,
    pub variable: String,
    pub polynomial: String,
    pub content_removed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_in_parameter: Option<bool>,
    pub roots: Vec<RootEntry>,
    pub achievable: bool,
    pub always_maximal: bool,
    pub never_maximal: bool,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct RootEntry {
    pub lo: String,
    pub hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub approx: f64,
}

#[derive(Serialize)]
pub struct BenchResult {
    pub dmax: usize,
    pub trials: usize,
    pub seed: u64,
    pub bits: u32,
    pub rows: Vec<BenchRow>,
}

#[derive(Serialize, Clone)]
pub struct BenchRow {
    pub d: usize,
    pub exact_ms: f64,
    pub oracle_ms: f64,
    pub agree: usize,
    pub trials: usize,
}

pub fn detect_result(
    d_a: usize,
    d_b: usize,
    verdict: &Verdict,
    oracle: Option<OracleResult>,
) -> DetectResult {
    let traced = if d_a >= d_b { Side::A } else { Side::B };
    DetectResult {
        d_a,
        d_b,
        d: verdict.d_used,
        traced_side: traced.to_string(),
        maximal: verdict.maximal,
        d_last_but_one: verdict.d_last_but_one.to_string(),
        degeneracy: verdict.degeneracy,
        notes: verdict.notes.clone(),
        oracle,
    }
}

pub fn oracle_result(
    spec: &SchmidtSpectrum,
    report: &EntropyReport,
    trace: f64,
    numeric_d_last: Option<f64>,
) -> OracleResult {
    OracleResult {
        d: spec.dim(),
        trace,
        lambdas: spec.lambdas.clone(),
        schmidt: spec.schmidt.clone(),
        von_neumann: report.von_neumann,
        normalized_entropy: report.normalized,
        linear_entropy: report.linear_entropy,
        numeric_d_last,
    }
}

/// One sequence line: constants print as exact scalars, parameter
/// polynomials in primitive integer form with the removed content noted.
pub fn sequence_entry(q: usize, value: &maxent_core::state::ParamPoly) -> SequenceEntry {
    if let Some(c) = value.as_constant() {
        return SequenceEntry {
            q,
            value: Some(c.to_string()),
            polynomial: None,
            content_removed: None,
        };
    }
    let real = value
        .to_rational_poly()
        .expect("subdiscriminants have real coefficients");
    let (prim, content) = primitive_part_rational(&real);
    SequenceEntry {
        q,
        value: None,
        polynomial: Some(prim.to_string()),
        content_removed: Some(content.to_string()),
    }
}

pub fn root_entry(root: &IsolatingInterval) -> RootEntry {
    RootEntry {
        lo: root.lo.to_string(),
        hi: root.hi.to_string(),
        exact: root.exact_root.as_ref().map(|r| r.to_string()),
        approx: root.midpoint_f64(),
    }
}

pub fn parametric_result(verdict: &ParametricVerdict) -> ParametricResult {
    let (parameter, mode, variable, even) = match &verdict.variable {
        ConditionVariable::RealParam { name } => (name.clone(), "real", name.clone(), None),
        ConditionVariable::Magnitude { name, var } => {
            (name.clone(), "magnitude", var.clone(), Some(true))
        }
    };
    ParametricResult {
        parameter,
        mode: mode.to_string(),
        variable,
        polynomial: verdict.polynomial.to_string(),
        content_removed: verdict.content.to_string(),
        even_in_parameter: even,
        roots: verdict.roots.iter().map(root_entry).collect(),
        achievable: verdict.achievable,
        always_maximal: verdict.always_maximal,
        never_maximal: !verdict.achievable && !verdict.always_maximal,
        notes: verdict.notes.clone(),
    }
}

/// Human-readable line for a sequence entry, e.g.
/// `D_4 = 2p^4 - 14p^2 + 197 (content 2 removed)`.
pub fn sequence_line(entry: &SequenceEntry) -> String {
    match (&entry.value, &entry.polynomial) {
        (Some(v), _) => format!("D_{} = {}", entry.q, v),
        (None, Some(poly)) => {
            let content = entry.content_removed.as_deref().unwrap_or("1");
            if content == "1" {
                format!("D_{} = {}", entry.q, poly)
            } else {
                format!("D_{} = {} (content {} removed)", entry.q, poly, content)
            }
        }
        _ => unreachable!("sequence entry holds a value or a polynomial"),
    }
}

pub fn print_detect_text(result: &DetectResult) {
    println!("dims: {} x {}", result.d_a, result.d_b);
    println!("d: {} (traced side: {})", result.d, result.traced_side);
    println!("maximal: {}", result.maximal);
    println!("D_{{d-1}} = {}", result.d_last_but_one);
    println!("degeneracy: {}", result.degeneracy);
    if !result.notes.is_empty() {
        println!("notes: {}", result.notes.join("; "));
    }
    if let Some(oracle) = &result.oracle {
        print_oracle_text(oracle);
    }
}

pub fn print_oracle_text(result: &OracleResult) {
    let fmt = |xs: &[f64]| {
        xs.iter()
            .map(|x| format!("{x:.9}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("oracle:");
    println!("  trace: {}", result.trace);
    println!("  eigenvalues (normalized): {}", fmt(&result.lambdas));
    println!("  schmidt coefficients: {}", fmt(&result.schmidt));
    println!(
        "  von Neumann entropy: {:.9} (normalized {:.9})",
        result.von_neumann, result.normalized_entropy
    );
    println!("  linear entropy: {:.9}", result.linear_entropy);
    if let Some(v) = result.numeric_d_last {
        println!("  numeric D_{{d-1}}: {v:.9}");
    }
}

pub fn print_parametric_text(result: &ParametricResult) {
    match result.mode.as_str() {
        "real" => println!("parameter: {} (real)", result.parameter),
        _ => println!(
            "parameter: {} (magnitude mode, {} = |{}|\u{b2})",
            result.parameter, result.variable, result.parameter
        ),
    }
    if result.always_maximal {
        println!("condition: D_{{d-1}} = 0 identically");
    } else {
        let content_note = if result.content_removed == "1" {
            String::new()
        } else {
            format!(" (content {} removed)", result.content_removed)
        };
        println!("condition: {}{}", result.polynomial, content_note);
    }
    if let Some(even) = result.even_in_parameter {
        println!(
            "even in {}: {}",
            result.parameter,
            if even { "yes" } else { "no" }
        );
    }
    if result.roots.is_empty() {
        println!("roots: none");
    } else {
        println!("roots:");
        for root in &result.roots {
            match &root.exact {
                Some(r) => println!("  {} = {} (exact)", result.variable, r),
                None => println!(
                    "  {} in [{}, {}] (~{:.6})",
                    result.variable, root.lo, root.hi, root.approx
                ),
            }
        }
    }
    for note in &result.notes {
        println!("note: {note}");
    }
    let verdict = if result.always_maximal {
        "maximal for all parameter values"
    } else if result.achievable {
        "maximally entangled at the listed parameter values"
    } else {
        "never maximally entangled"
    };
    println!("verdict: {verdict}");
}

pub fn print_bench_text(result: &BenchResult) {
    println!(
        "bench: dmax {} trials {} seed {} bits {}",
        result.dmax, result.trials, result.seed, result.bits
    );
    println!(
        "{:>3} {:>12} {:>12} {:>9}",
        "d", "exact_ms", "oracle_ms", "agree"
    );
    for row in &result.rows {
        println!(
            "{:>3} {:>12.3} {:>12.3} {:>6}/{}",
            row.d, row.exact_ms, row.oracle_ms, row.agree, row.trials
        );
    }
}

pub fn bench_csv(result: &BenchResult) -> String {
    let mut out = String::from("d,exact_ms,oracle_ms,agree\n");
    for row in &result.rows {
        out.push_str(&format!(
            "{},{:.3},{:.3},{}\n",
            row.d, row.exact_ms, row.oracle_ms, row.agree
        ));
    }
    out
}
