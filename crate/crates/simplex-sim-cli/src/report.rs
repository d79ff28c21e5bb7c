//! Deterministic JSON reports: stable key order (struct declaration order
//! and sorted maps) and every float printed with 17 significant digits so
//! values round-trip exactly.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::ser::Formatter;
use simplex_sim::prelude::StateReport;

/// JSON formatter that renders every f64 as `d.dddddddddddddddde±ee`.
pub struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a report to the deterministic wire form.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value.serialize(&mut ser).expect("report serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits utf-8")
}

#[derive(Serialize)]
pub struct Engine {
    pub name: &'static str,
    pub version: &'static str,
}

impl Engine {
    pub fn current() -> Self {
        Self { name: "simplex-sim", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Serialize)]
pub struct Residuals {
    pub min_entry: f64,
    pub max_entry: f64,
    pub sum_deviation: f64,
    pub u_dot_p: f64,
    pub norm_residual: f64,
}

impl From<StateReport> for Residuals {
    fn from(r: StateReport) -> Self {
        Self {
            min_entry: r.min_entry,
            max_entry: r.max_entry,
            sum_deviation: r.sum_deviation,
            u_dot_p: r.u_dot_p,
            norm_residual: r.norm_residual,
        }
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub engine: Engine,
    pub command: &'static str,
    pub n: usize,
    pub gate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub probabilities: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<BTreeMap<String, [f64; 2]>>,
    pub residuals: Residuals,
}

#[derive(Serialize)]
pub struct DjReport {
    pub engine: Engine,
    pub command: &'static str,
    pub n: usize,
    pub verdict: &'static str,
    pub k0_coefficient: f64,
    pub oracle_terms: usize,
    pub promise_verified: bool,
    pub residuals: Residuals,
}

#[derive(Serialize)]
pub struct QftReport {
    pub engine: Engine,
    pub command: &'static str,
    pub n: usize,
    pub order: usize,
    pub spectrum: BTreeMap<String, [f64; 2]>,
    pub max_deviation_from_dft: f64,
    pub residuals: Residuals,
}

#[derive(Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub max_abs_dev: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct DiffSummary {
    pub engine: Engine,
    pub command: &'static str,
    pub n: usize,
    pub depth: usize,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub max_abs_dev: f64,
    /// Worst canonical-form residual of any simplex end state across trials.
    pub max_state_residual: f64,
    pub trial_results: Vec<TrialResult>,
}
