use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use mvfunc_core::{BasisBlade, Extensor, ExtensorRecord, Multivector};
use serde::{Deserialize, Serialize};

use crate::{HarnessConfig, HarnessError};

/// Multivector as a map from blade label (`"1"`, `"e2"`, `"e13"`) to its nonzero coefficient.
pub type BladeMap = BTreeMap<String, f64>;

pub fn blade_map(x: &Multivector) -> BladeMap {
    x.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(mask, c)| (BasisBlade(mask).to_string(), *c))
        .collect()
}

/// Rebuilds a multivector from a [`BladeMap`].
pub fn from_blade_map(
    metric: &std::sync::Arc<mvfunc_core::Metric>,
    map: &BladeMap,
) -> mvfunc_core::Result<Multivector> {
    let mut x = Multivector::zero(metric);
    for (label, c) in map {
        x.set_coeff(BasisBlade::parse(label, metric.dim())?, *c);
    }
    Ok(x)
}

/// The inputs of the worst failing trial of an identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(flatten)]
    pub extensor: ExtensorRecord,
    pub anchors: Vec<BladeMap>,
    pub direction: Option<BladeMap>,
    /// Further fixed multivectors of the trial, such as a pseudoscalar or a constant factor.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, BladeMap>,
}

impl Witness {
    pub fn new(t: &Extensor, anchors: &[Multivector], direction: Option<&Multivector>) -> Self {
        Witness {
            extensor: t.to_record(),
            anchors: anchors.iter().map(blade_map).collect(),
            direction: direction.map(blade_map),
            parameters: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: &Multivector) -> Self {
        self.parameters.insert(name.to_string(), blade_map(value));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub id: String,
    pub trials: usize,
    pub max_dev: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(results: &[IdentityResult]) -> Self {
        let passed = results.iter().filter(|r| r.pass).count();
        Summary {
            passed,
            failed: results.len() - passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: HarnessConfig,
    pub results: Vec<IdentityResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: &HarnessConfig, results: Vec<IdentityResult>) -> Self {
        let summary = Summary::of(&results);
        Report {
            config: config.clone(),
            results,
            summary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(HarnessError::Config(format!(
                "unknown format {s:?} (expected text or json)"
            ))),
        }
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, HarnessError> {
    if report.results.is_empty() {
        return Err(HarnessError::EmptyReport);
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(render_text(report)),
    }
}

fn render_text(report: &Report) -> String {
    let width = report.results.iter().map(|r| r.id.len()).max().unwrap_or(0).max(8);
    let mut out = String::new();
    let c = &report.config;
    let _ = writeln!(
        out,
        "dim={} metric={} trials={} seed={} tol_exact={:e} tol_fd={:e} fd_step={:e} suite={}",
        c.dim, c.metric, c.trials, c.seed, c.tol_exact, c.tol_fd, c.fd_step, c.suite
    );
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:>10}  RESULT",
        "IDENTITY", "TRIALS", "MAX_DEV"
    );
    for r in &report.results {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>10.3e}  {}",
            r.id,
            r.trials,
            r.max_dev,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    for r in report.results.iter().filter(|r| !r.pass) {
        if let Some(e) = &r.error {
            let _ = writeln!(out, "error {}: {e}", r.id);
        }
        if let Some(w) = &r.witness {
            let json = serde_json::to_string(w).unwrap_or_default();
            let _ = writeln!(out, "witness {}: {json}", r.id);
        }
    }
    let _ = writeln!(
        out,
        "SUMMARY: {} passed, {} failed",
        report.summary.passed, report.summary.failed
    );
    out
}

/// Writes the report to `out`, or to standard output when `out` is `None`.
pub fn emit_report(
    results: &[IdentityResult],
    config: &HarnessConfig,
    format: Format,
    out: Option<&Path>,
) -> Result<(), HarnessError> {
    let text = render(&Report::new(config, results.to_vec()), format)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
