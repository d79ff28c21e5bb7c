//! Command-line front end: circuit execution, the two built-in algorithm
//! pipelines, and dual-engine differential runs, all reporting as
//! deterministic JSON.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use simplex_sim::prelude::*;

use report::{DiffSummary, DjReport, Engine, QftReport, Residuals, RunReport, TrialResult};

/// Simulate quantum circuits as affine maps on an 8^n-outcome probability
/// distribution, cross-checked against a conventional state-vector engine.
#[derive(Parser)]
#[command(name = "simplex-sim", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file and report outcome probabilities.
    Run(RunArgs),
    /// Classify an oracle as constant or balanced with one query.
    Dj(DjArgs),
    /// Fourier-transform an encoded sequence and report the spectrum.
    Qft(QftArgs),
    /// Fuzz random circuits through both engines and compare.
    Diff(DiffArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Circuit file: {"n": int, "init": [token...], "gates": [...]}.
    /// Init tokens: "0", "1", "+", "-", "amp(re,im,re,im)".
    circuit: PathBuf,
    /// Collect phases into this slot before reporting, enabling amplitude
    /// extraction.
    #[arg(long)]
    order: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DjArgs {
    /// Input bit count (n+1 total slots).
    #[arg(long)]
    n: usize,
    /// Oracle: constant0, constant1, random-balanced, or a path to a JSON
    /// array of 0/1 of length 2^n.
    #[arg(long)]
    oracle: String,
    /// Seed for random-balanced oracle generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QftArgs {
    /// Qubit count (capped at 6).
    #[arg(long)]
    n: usize,
    /// Transform the logical basis state |j>.
    #[arg(long, conflicts_with = "input")]
    basis: Option<usize>,
    /// Path to a JSON array of [re, im] pairs of length 2^n, normalized.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Phase ordering of the encoded input and the reported output.
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiffArgs {
    /// Qubit count (2..=6).
    #[arg(long)]
    n: usize,
    /// Gates per random circuit.
    #[arg(long, default_value_t = 20)]
    depth: usize,
    /// RNG seed; same seed and flags give a byte-identical report.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of random circuits.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Comparison tolerance on outcome probabilities.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Test hook: desynchronize the engines to prove mismatches are caught.
    #[arg(long, hide = true)]
    corrupt: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure destined for a specific exit code: 1 for check failures,
/// 2 for usage and parse errors.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = std::result::Result<T, Failure>;

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Dj(args) => cmd_dj(args),
        Command::Qft(args) => cmd_qft(args),
        Command::Diff(args) => cmd_diff(args),
    };
    match result {
        Ok(()) => {
            eprintln!("completed in {:.3?}", started.elapsed());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: &Option<PathBuf>, json: String) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!(
            "{}: parse error at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn bit_label(value: usize, n: usize) -> String {
    (0..n).map(|s| if (value >> (n - 1 - s)) & 1 == 1 { '1' } else { '0' }).collect()
}

fn all_probabilities(state: &SimplexState) -> CliResult<BTreeMap<String, f64>> {
    let n = state.n();
    let mut map = BTreeMap::new();
    for q in 0..(1usize << n) {
        let bits: Vec<u8> = (0..n).map(|s| ((q >> (n - 1 - s)) & 1) as u8).collect();
        map.insert(bit_label(q, n), projection_prob(state, &bits)?);
    }
    Ok(map)
}

fn amplitude_map(state: &SimplexState, sigma: usize) -> CliResult<BTreeMap<String, [f64; 2]>> {
    let n = state.n();
    let amps = extract_amplitudes(state, sigma)?;
    Ok(amps
        .iter()
        .enumerate()
        .map(|(q, a)| (bit_label(q, n), [a.re, a.im]))
        .collect())
}

// ---------------------------------------------------------------- run ----

#[derive(Deserialize)]
struct CircuitFile {
    n: usize,
    init: Vec<String>,
    gates: Vec<GateSpec>,
}

fn parse_init_token(token: &str) -> CliResult<(Complex64, Complex64)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match token {
        "0" => Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))),
        "1" => Ok((Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))),
        "+" => Ok((Complex64::new(h, 0.0), Complex64::new(h, 0.0))),
        "-" => Ok((Complex64::new(h, 0.0), Complex64::new(-h, 0.0))),
        other => {
            let inner = other
                .strip_prefix("amp(")
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(|| Failure::usage(format!("unknown init token '{other}'")))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Failure::usage(format!(
                    "init token '{other}' needs four comma-separated numbers"
                )));
            }
            let nums: Vec<f64> = parts
                .iter()
                .map(|p| {
                    p.parse::<f64>()
                        .map_err(|e| Failure::usage(format!("bad number '{p}' in '{other}': {e}")))
                })
                .collect::<CliResult<_>>()?;
            Ok((Complex64::new(nums[0], nums[1]), Complex64::new(nums[2], nums[3])))
        }
    }
}

fn cmd_run(args: RunArgs) -> CliResult<()> {
    let file: CircuitFile = read_json(&args.circuit)?;
    if file.init.len() != file.n {
        return Err(Failure::usage(format!(
            "{} init tokens for {} qubits",
            file.init.len(),
            file.n
        )));
    }
    let circuit = Circuit { n: file.n, gates: file.gates };
    circuit.validate()?;

    let qubits: Vec<(Complex64, Complex64)> = file
        .init
        .iter()
        .map(|t| parse_init_token(t))
        .collect::<CliResult<_>>()?;
    let init = map_qubits(&qubits)?;
    let mut state = circuit.run_simplex(&init)?;

    if let Some(sigma) = args.order {
        state = OrderOp::gamma_n(state.n(), sigma)?.apply(&state)?;
    }

    let amplitudes = match state.order() {
        Some(sigma) => Some(amplitude_map(&state, sigma)?),
        None => None,
    };
    let rep = RunReport {
        engine: Engine::current(),
        command: "run",
        n: circuit.n,
        gate_count: circuit.gates.len(),
        order: state.order(),
        probabilities: all_probabilities(&state)?,
        amplitudes,
        residuals: Residuals::from(validate_state(&state)),
    };
    emit(&args.out, report::to_json(&rep))
}

// ----------------------------------------------------------------- dj ----

fn cmd_dj(args: DjArgs) -> CliResult<()> {
    if args.n + 1 > MAX_QUBITS {
        return Err(Failure::usage(format!(
            "n = {} needs {} slots; the cap is {MAX_QUBITS}",
            args.n,
            args.n + 1
        )));
    }
    let oracle = match args.oracle.as_str() {
        "constant0" => BooleanOracle::constant(args.n, false),
        "constant1" => BooleanOracle::constant(args.n, true),
        "random-balanced" => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            BooleanOracle::random_balanced(args.n, &mut rng)
        }
        path => {
            let table: Vec<u8> = read_json(Path::new(path))?;
            let bits: Vec<bool> = table
                .iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Failure::usage(format!("table entry {other} is not a bit"))),
                })
                .collect::<CliResult<_>>()?;
            BooleanOracle::new(args.n, bits, Promise::Unknown)?
        }
    };

    let outcome = run_deutsch_jozsa(&oracle)?;
    let rep = DjReport {
        engine: Engine::current(),
        command: "dj",
        n: args.n,
        verdict: match outcome.verdict {
            Verdict::Constant => "constant",
            Verdict::Balanced => "balanced",
        },
        k0_coefficient: outcome.k0_coefficient,
        oracle_terms: outcome.oracle_terms,
        promise_verified: outcome.promise_verified,
        residuals: Residuals::from(validate_state(&outcome.state)),
    };
    emit(&args.out, report::to_json(&rep))
}

// ---------------------------------------------------------------- qft ----

fn cmd_qft(args: QftArgs) -> CliResult<()> {
    if args.n == 0 || args.n > 6 {
        return Err(Failure::usage(format!("qft supports 1..=6 qubits, got {}", args.n)));
    }
    let dim = 1usize << args.n;
    let amps: Vec<Complex64> = match (&args.basis, &args.input) {
        (Some(j), None) => {
            if *j >= dim {
                return Err(Failure::usage(format!("basis index {j} out of range for n={}", args.n)));
            }
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[*j] = Complex64::new(1.0, 0.0);
            v
        }
        (None, Some(path)) => {
            let pairs: Vec<[f64; 2]> = read_json(path)?;
            if pairs.len() != dim {
                return Err(Failure::usage(format!(
                    "sequence has {} entries, expected {dim}",
                    pairs.len()
                )));
            }
            pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
        }
        _ => return Err(Failure::usage("give exactly one of --basis or --input")),
    };

    let state = map_amplitudes(&amps, args.order)?;
    let out = run_qft(&state)?;
    let got = extract_amplitudes(&out, args.order)?;
    let want = dft(&amps)?;
    let max_dev = got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).norm())
        .fold(0.0, f64::max);

    let rep = QftReport {
        engine: Engine::current(),
        command: "qft",
        n: args.n,
        order: args.order,
        spectrum: amplitude_map(&out, args.order)?,
        max_deviation_from_dft: max_dev,
        residuals: Residuals::from(validate_state(&out)),
    };
    emit(&args.out, report::to_json(&rep))
}

// --------------------------------------------------------------- diff ----

fn cmd_diff(args: DiffArgs) -> CliResult<()> {
    if args.n < 2 || args.n > 6 {
        return Err(Failure::usage(format!("diff supports 2..=6 qubits, got {}", args.n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut trial_results = Vec::with_capacity(args.trials);
    let mut max_abs_dev: f64 = 0.0;
    let mut max_state_residual: f64 = 0.0;
    let init: Vec<(Complex64, Complex64)> =
        vec![(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)); args.n];

    let mut note_residuals = |r: &StateReport| {
        for v in [r.sum_deviation, r.u_dot_p, r.norm_residual] {
            max_state_residual = max_state_residual.max(v.abs());
        }
    };

    for trial in 0..args.trials {
        let circuit = random_circuit(args.n, args.depth, &mut rng);
        let dev = if args.corrupt {
            // mis-transcribed gate list on the simplex side: an extra flip
            // the reference engine never sees
            let mut bad = circuit.clone();
            bad.gates.push(GateSpec::Single { gate: SingleGate::PauliX, slot: 1 });
            let simplex_state = bad.run_simplex(&map_qubits(&init)?)?;
            note_residuals(&validate_state(&simplex_state));
            let reference_probs =
                sv_simulate(&circuit, &StateVector::from_product(&init)?)?.probabilities();
            let mut dev: f64 = 0.0;
            for (q, want) in reference_probs.iter().enumerate() {
                let bits: Vec<u8> =
                    (0..args.n).map(|s| ((q >> (args.n - 1 - s)) & 1) as u8).collect();
                dev = dev.max((projection_prob(&simplex_state, &bits)? - want).abs());
            }
            dev
        } else {
            let outcome = differential_check(&circuit, &init, args.tolerance)?;
            note_residuals(&outcome.state_report);
            outcome.max_abs_dev
        };
        max_abs_dev = max_abs_dev.max(dev);
        trial_results.push(TrialResult { trial, max_abs_dev: dev, pass: dev <= args.tolerance });
    }

    let pass = trial_results.iter().all(|t| t.pass);
    let rep = DiffSummary {
        engine: Engine::current(),
        command: "diff",
        n: args.n,
        depth: args.depth,
        seed: args.seed,
        trials: args.trials,
        tolerance: args.tolerance,
        pass,
        max_abs_dev,
        max_state_residual,
        trial_results,
    };
    emit(&args.out, report::to_json(&rep))?;
    if pass {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "differential mismatch: max deviation {max_abs_dev:.3e} over {} trials",
            args.trials
        )))
    }
}
