//! `maxent` — exact detection of maximally entangled pure bipartite states.
//!
//! Subcommands: `detect` (exact verdict for a concrete state), `sequence`
//! (the full subdiscriminant sequence), `parametric` (one-parameter
//! families), `oracle` (floating-point cross-check), and `bench`
//! (exact-vs-numeric timing on seeded random states).
//!
//! Exit codes: 0 success (verdicts are in the report body, not the code);
//! 2 input/parse failure; 3 mode misuse (e.g. `detect` on a parametric
//! file); 4 magnitude-mode structural violation; 5 bench argument out of
//! range; 64 usage errors.

mod bench;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use maxent_core::detector::{
    analysis_side, density_subdiscriminants, is_maximally_entangled, parametric_analysis,
    DetectorError,
};
use maxent_core::exact::parse_rational;
use maxent_core::oracle::{entropy_report, numeric_subdiscriminant, schmidt_spectrum, OracleError};
use maxent_core::state::{
    parse_state_full, reduced_density, BipartiteState, ParamKind, StateError,
};
use report::Report;

#[derive(Parser)]
#[command(
    name = "maxent",
    about = "Decide maximal entanglement of pure bipartite states with exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// The parameter ranges over the reals.
    Real,
    /// The parameter is complex and enters only via its squared modulus.
    Magnitude,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a concrete state is maximally entangled.
    Detect {
        file: PathBuf,
        /// Also run the floating-point oracle and report the entropies.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the exact subdiscriminant sequence D_1 .. D_d.
    Sequence {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a one-parameter family of states.
    Parametric {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues, Schmidt coefficients and entropies from the numeric
    /// route.
    Oracle {
        file: PathBuf,
        /// Rational value substituted for the state's parameter.
        #[arg(long, allow_hyphen_values = true)]
        param_value: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Time the exact pipeline against the numeric oracle on random states.
    Bench {
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        bits: u32,
        /// Emit CSV (d,exact_ms,oracle_ms,agree) instead of a table.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
}

/// A command failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
    fn mode_misuse(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
    fn magnitude(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
    fn bench_args(message: impl Into<String>) -> Self {
        Self {
            code: 5,
            message: message.into(),
        }
    }
    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Magnitude(v) => Failure::magnitude(v.to_string()),
            other => Failure::parse(other.to_string()),
        }
    }
}

impl From<DetectorError> for Failure {
    fn from(e: DetectorError) -> Self {
        match e {
            DetectorError::ParametricState | DetectorError::NonParametricState => {
                Failure::mode_misuse(e.to_string())
            }
            DetectorError::Magnitude(_) | DetectorError::NotEvenInParameter => {
                Failure::magnitude(e.to_string())
            }
            DetectorError::Exact(inner) => Failure::internal(inner.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::internal(e.to_string())
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MAXENT_LOG"))
        .format_timestamp(None)
        .init();
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
            _ => 64,
        };
        let _ = e.print();
        std::process::exit(code);
    });
    match run(cli.command) {
        Ok(()) => {}
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Detect { file, oracle, json } => cmd_detect(&file, oracle, json),
        Command::Sequence { file, json } => cmd_sequence(&file, json),
        Command::Parametric { file, mode, json } => cmd_parametric(&file, mode, json),
        Command::Oracle {
            file,
            param_value,
            json,
        } => cmd_oracle(&file, param_value, json),
        Command::Bench {
            dmax,
            trials,
            seed,
            bits,
            csv,
            json,
        } => cmd_bench(dmax, trials, seed, bits, csv, json),
    }
}

fn read_input(path: &Path) -> Result<(String, String), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let sha = hex_digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::parse(format!("{} is not UTF-8 text", path.display())))?;
    Ok((text, sha))
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_state(path: &Path) -> Result<(BipartiteState, Option<ParamKind>, String), Failure> {
    let (text, sha) = read_input(path)?;
    let parsed = parse_state_full(&text)?;
    log::debug!(
        "parsed {}: {} x {}, parameter {:?}",
        path.display(),
        parsed.state.d_a(),
        parsed.state.d_b(),
        parsed.state.param_name()
    );
    Ok((parsed.state, parsed.declared_kind, sha))
}

fn oracle_block(state: &BipartiteState) -> Result<report::OracleResult, Failure> {
    let side = analysis_side(state.d_a(), state.d_b());
    let rho = reduced_density(state, side).map_err(StateError::Magnitude)?;
    let (spec, trace) = schmidt_spectrum(&rho)?;
    let entropy = entropy_report(&spec);
    let numeric_d_last = if spec.dim() >= 2 && spec.dim() <= maxent_core::oracle::ORACLE_MAX_DIM {
        Some(numeric_subdiscriminant(&spec, spec.dim() - 1, trace)?)
    } else {
        None
    };
    Ok(report::oracle_result(
        &spec,
        &entropy,
        trace,
        numeric_d_last,
    ))
}

fn cmd_detect(file: &Path, oracle: bool, json: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (state, _, sha) = load_state(file)?;
    let verdict = is_maximally_entangled(&state)?;
    log::info!(
        "detect {}: maximal = {}, degeneracy = {}",
        file.display(),
        verdict.maximal,
        verdict.degeneracy
    );
    let oracle_part = if oracle {
        Some(oracle_block(&state)?)
    } else {
        None
    };
    let result = report::detect_result(state.d_a(), state.d_b(), &verdict, oracle_part);
    let total = start.elapsed().as_secs_f64() * 1e3;
    if json {
        println!("{}", Report::new("detect", sha, result, total).to_json());
    } else {
        println!("command: detect");
        println!("input: {} (sha256 {sha})", file.display());
        report::print_detect_text(&result);
        println!("time: {total:.3} ms");
    }
    Ok(())
}

fn cmd_sequence(file: &Path, json: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (state, _, sha) = load_state(file)?;
    let side = analysis_side(state.d_a(), state.d_b());
    let rho = reduced_density(&state, side).map_err(StateError::Magnitude)?;
    let seq = density_subdiscriminants(&rho);
    let entries: Vec<report::SequenceEntry> = (1..=seq.d)
        .map(|q| report::sequence_entry(q, seq.d_q(q)))
        .collect();
    let result = report::SequenceResult { d: seq.d, entries };
    let total = start.elapsed().as_secs_f64() * 1e3;
    if json {
        println!("{}", Report::new("sequence", sha, result, total).to_json());
    } else {
        println!("command: sequence");
        println!("input: {} (sha256 {sha})", file.display());
        println!("d: {}", result.d);
        for entry in &result.entries {
            println!("{}", report::sequence_line(entry));
        }
        println!("time: {total:.3} ms");
    }
    Ok(())
}

fn cmd_parametric(file: &Path, mode: Mode, json: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (state, declared, sha) = load_state(file)?;
    if !state.is_parametric() {
        return Err(Failure::mode_misuse(
            "state has no free parameter; use `detect`",
        ));
    }
    let requested = match mode {
        Mode::Real => ParamKind::Real,
        Mode::Magnitude => ParamKind::ComplexMagnitude,
    };
    if let Some(declared) = declared {
        if declared != requested {
            return Err(Failure::mode_misuse(format!(
                "file declares `param {}` but --mode asks for {}",
                match declared {
                    ParamKind::Real => "real",
                    ParamKind::ComplexMagnitude => "magnitude",
                    ParamKind::None => "none",
                },
                match requested {
                    ParamKind::Real => "real",
                    _ => "magnitude",
                },
            )));
        }
    }
    let state = state.with_param_kind(requested)?;
    let verdict = parametric_analysis(&state)?;
    log::info!(
        "parametric {}: achievable = {}, always = {}",
        file.display(),
        verdict.achievable,
        verdict.always_maximal
    );
    let result = report::parametric_result(&verdict);
    let total = start.elapsed().as_secs_f64() * 1e3;
    if json {
        println!(
            "{}",
            Report::new("parametric", sha, result, total).to_json()
        );
    } else {
        println!("command: parametric");
        println!("input: {} (sha256 {sha})", file.display());
        report::print_parametric_text(&result);
        println!("time: {total:.3} ms");
    }
    Ok(())
}

fn cmd_oracle(file: &Path, param_value: Option<String>, json: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (state, _, sha) = load_state(file)?;
    let state = match (state.is_parametric(), param_value) {
        (true, Some(text)) => {
            let value = parse_rational(&text)
                .map_err(|_| Failure::parse(format!("invalid --param-value `{text}`")))?;
            state.specialize(&value)?
        }
        (true, None) => {
            return Err(Failure::mode_misuse(
                "parametric state: the numeric oracle needs --param-value",
            ))
        }
        (false, Some(_)) => {
            return Err(Failure::mode_misuse(
                "--param-value given but the state has no parameter",
            ))
        }
        (false, None) => state,
    };
    let result = oracle_block(&state)?;
    let total = start.elapsed().as_secs_f64() * 1e3;
    if json {
        println!("{}", Report::new("oracle", sha, result, total).to_json());
    } else {
        println!("command: oracle");
        println!("input: {} (sha256 {sha})", file.display());
        report::print_oracle_text(&result);
        println!("time: {total:.3} ms");
    }
    Ok(())
}

fn cmd_bench(
    dmax: usize,
    trials: usize,
    seed: u64,
    bits: u32,
    csv: bool,
    json: bool,
) -> Result<(), Failure> {
    if !(2..=12).contains(&dmax) {
        return Err(Failure::bench_args(format!(
            "--dmax must be in 2..=12, got {dmax}"
        )));
    }
    if trials == 0 {
        return Err(Failure::bench_args("--trials must be at least 1"));
    }
    if !(1..=63).contains(&bits) {
        return Err(Failure::bench_args(format!(
            "--bits must be in 1..=63, got {bits}"
        )));
    }
    let start = Instant::now();
    let result = bench::run(dmax, trials, seed, bits);
    let total = start.elapsed().as_secs_f64() * 1e3;
    let sha = hex_digest(format!("dmax={dmax},trials={trials},seed={seed},bits={bits}").as_bytes());
    if csv {
        print!("{}", report::bench_csv(&result));
    } else if json {
        println!("{}", Report::new("bench", sha, result, total).to_json());
    } else {
        report::print_bench_text(&result);
        println!("time: {total:.3} ms");
    }
    Ok(())
}
