//! Batch commands behind the `faultwave` binary. Each command reads a JSON
//! configuration, runs one pipeline stage and writes its files atomically.
//!
//! Exit codes: [`EXIT_OK`] on success (a run that detects nothing is still a
//! success), [`EXIT_INPUT`] for unreadable or invalid configuration and input
//! files, [`EXIT_TRANSFORM`] when a transform or detector fails.

use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::detect::{self, DetectionReport, DetectorConfig, EnergyTable, IndexSeries, Method, TableRow};
use crate::dwt;
use crate::error::{Error, Result};
use crate::ica::{self, PiConfig};
use crate::io::{self, ModelDump};
use crate::signal_model::{self, FaultSpec, FaultType, NoiseSpec, Phase, ThreePhaseRecord, WaveformConfig};
use crate::span::Spans;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRANSFORM: i32 = 3;

/// Everything one run needs. Missing keys take their defaults, unknown keys
/// are rejected.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: String,
    pub waveform: WaveformConfig,
    pub fault: FaultSpec,
    pub noise: NoiseSpec,
    pub detector: DetectorConfig,
    pub ica: PiConfig,
    pub spans: Spans,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let cfg: RunConfig = io::read_json(path)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.waveform.validate()?;
        self.detector.validate()
    }

    pub fn synthesize(&self) -> Result<ThreePhaseRecord> {
        signal_model::synthesize(&self.waveform, &self.fault, &self.noise)
    }

    /// Scenario label for reports: the configured name, else the fault type.
    pub fn label(&self, record: Option<&ThreePhaseRecord>) -> String {
        if !self.scenario.is_empty() {
            return self.scenario.clone();
        }
        record
            .and_then(|r| r.fault.as_ref())
            .map_or_else(|| self.fault.fault_type.to_string(), |f| f.fault_type.to_string())
    }
}

/// One named delta: a JSON object merged key by key over the base config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub overrides: Value,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSuite {
    pub base: RunConfig,
    pub scenarios: Vec<Scenario>,
}

const CONDITIONS: [(&str, f64, Option<f64>); 3] = [("clean", 50.0, None), ("20dB", 50.0, Some(20.0)), ("49.5Hz", 49.5, None)];

impl ScenarioSuite {
    pub fn load(path: &Path) -> Result<Self> {
        let suite: ScenarioSuite = io::read_json(path)?;
        suite.validate()?;
        Ok(suite)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for s in &self.scenarios {
            if !seen.insert(s.name.as_str()) {
                return Err(Error::Config(format!("scenario name `{}` is used twice", s.name)));
            }
            if !(s.overrides.is_object() || s.overrides.is_null()) {
                return Err(Error::Config(format!("overrides of `{}` must be a JSON object", s.name)));
            }
        }
        Ok(())
    }

    /// The six fault types of the published energy table at the default
    /// onset, over `base`.
    pub fn table1(base: RunConfig) -> Self {
        let scenarios = FaultType::TABLE
            .iter()
            .map(|ft| Scenario { name: ft.to_string(), overrides: fault_override(*ft) })
            .collect();
        ScenarioSuite { base, scenarios }
    }

    /// The six faults under clean, 20 dB and 49.5 Hz conditions.
    pub fn table1_conditions(base: RunConfig) -> Self {
        let mut scenarios = Vec::new();
        for ft in FaultType::TABLE {
            for (cond, f0, snr) in CONDITIONS {
                let mut overrides = fault_override(ft);
                merge(
                    &mut overrides,
                    &serde_json::json!({ "waveform": { "fundamental_hz": f0 }, "noise": { "snr_db": snr } }),
                );
                scenarios.push(Scenario { name: format!("{ft} {cond}"), overrides });
            }
        }
        ScenarioSuite { base, scenarios }
    }

    /// Each scenario's merged configuration, in suite order.
    pub fn resolve(&self) -> Result<Vec<(String, Result<RunConfig>)>> {
        self.validate()?;
        let base = serde_json::to_value(&self.base).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(self
            .scenarios
            .iter()
            .map(|s| {
                let mut merged = base.clone();
                merge(&mut merged, &s.overrides);
                let cfg = io::parse_json::<RunConfig>(&merged.to_string()).and_then(|mut cfg| {
                    cfg.scenario = s.name.clone();
                    cfg.validate()?;
                    Ok(cfg)
                });
                (s.name.clone(), cfg)
            })
            .collect())
    }
}

fn fault_override(ft: FaultType) -> Value {
    serde_json::json!({ "fault": { "fault_type": ft } })
}

/// JSON merge: objects merge recursively, anything else replaces.
fn merge(target: &mut Value, patch: &Value) {
    match (target, patch) {
        (Value::Object(t), Value::Object(p)) => {
            for (k, v) in p {
                merge(t.entry(k.clone()).or_insert(Value::Null), v);
            }
        }
        (_, Value::Null) => {}
        (t, p) => *t = p.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(e: impl fmt::Display) -> Self {
        CliError { code: EXIT_INPUT, message: e.to_string() }
    }

    /// Configuration problems keep code 2 even when they surface while a
    /// transform runs.
    fn transform(method: Method, e: Error) -> Self {
        let code = if matches!(e, Error::Config(_)) { EXIT_INPUT } else { EXIT_TRANSFORM };
        CliError { code, message: format!("{}: {e}", method.name()) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

fn load_config(path: Option<&Path>) -> std::result::Result<RunConfig, CliError> {
    match path {
        Some(p) => RunConfig::load(p).map_err(CliError::input),
        None => Ok(RunConfig::default()),
    }
}

/// Synthesizes the configured record into `out` (CSV) plus its sidecar.
pub fn cmd_generate(config: Option<&Path>, out: &Path) -> std::result::Result<ThreePhaseRecord, CliError> {
    let cfg = load_config(config)?;
    let record = cfg.synthesize().map_err(CliError::input)?;
    io::save_record(out, &record).map_err(CliError::input)?;
    Ok(record)
}

/// Report as written to disk, with the fully materialized configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub method: Method,
    pub detected: bool,
    pub onset_sample: Option<usize>,
    pub onset_time_s: Option<f64>,
    pub threshold: f64,
    pub channel: Option<Phase>,
    pub energy: Option<f64>,
    pub config: RunConfig,
    pub scenario: String,
}

impl ReportFile {
    pub fn new(report: &DetectionReport, config: &RunConfig) -> Self {
        ReportFile {
            method: report.method,
            detected: report.detected,
            onset_sample: report.onset_sample,
            onset_time_s: report.onset_time_s,
            threshold: report.threshold_used,
            channel: report.channel,
            energy: report.energy,
            config: config.clone(),
            scenario: report.scenario.clone(),
        }
    }
}

fn run_detector(trace: &Path, config: Option<&Path>) -> std::result::Result<(RunConfig, ThreePhaseRecord, DetectionReport), CliError> {
    let cfg = load_config(config)?;
    let record = io::load_record(trace).map_err(CliError::input)?;
    let method = cfg.detector.method;
    let mut report =
        detect::detect_record(&record, &cfg.detector, &cfg.ica, &cfg.spans).map_err(|e| CliError::transform(method, e))?;
    report.scenario = cfg.label(Some(&record));
    Ok((cfg, record, report))
}

/// Runs the configured detector on a trace file. Writes the report JSON to
/// `out` and the index series to `out` with a `.csv` extension.
pub fn cmd_detect(trace: &Path, config: Option<&Path>, out: &Path) -> std::result::Result<DetectionReport, CliError> {
    let (cfg, _, report) = run_detector(trace, config)?;
    io::write_json(out, &ReportFile::new(&report, &cfg)).map_err(CliError::input)?;
    io::save_index(&out.with_extension("csv"), &report.index, report.method.index_column()).map_err(CliError::input)?;
    Ok(report)
}

/// Energy table over a scenario suite: CSV to `out`, aligned text to
/// `stdout`. Succeeds when the suite is empty or any row evaluated.
pub fn cmd_energy_table(suite: &Path, out: &Path, stdout: &mut dyn Write) -> std::result::Result<EnergyTable, CliError> {
    let suite = ScenarioSuite::load(suite).map_err(CliError::input)?;
    let table = suite_table(&suite).map_err(CliError::input)?;
    io::write_atomic(out, |w| table.write_csv(w)).map_err(CliError::input)?;
    write!(stdout, "{}", table.to_text()).map_err(CliError::input)?;
    if !table.rows.is_empty() && table.ok_rows().next().is_none() {
        return Err(CliError { code: EXIT_TRANSFORM, message: "no scenario could be evaluated".into() });
    }
    Ok(table)
}

/// Evaluates every scenario of `suite`; rows keep the suite order.
pub fn suite_table(suite: &ScenarioSuite) -> Result<EnergyTable> {
    let rows = suite
        .resolve()?
        .into_par_iter()
        .map(|(name, cfg)| {
            let row = cfg.and_then(|c| {
                let record = c.synthesize()?;
                detect::energy_row(&name, &record, &c.detector, &c.spans)
            });
            match row {
                Ok(r) => TableRow::Ok(r),
                Err(e) => TableRow::Failed { scenario: name, error: e.to_string() },
            }
        })
        .collect();
    Ok(EnergyTable { rows })
}

/// Files written by [`cmd_plot_data`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlotFiles {
    pub voltage: PathBuf,
    pub index: PathBuf,
    pub report: PathBuf,
    /// Wavelet coefficients or ICA model, when the method has one.
    pub extra: Option<PathBuf>,
}

/// Writes `voltage.csv` and `index.csv` over the same samples (the span the
/// index covers), the report and a method-specific dump into `out_dir`.
pub fn cmd_plot_data(trace: &Path, config: Option<&Path>, out_dir: &Path) -> std::result::Result<PlotFiles, CliError> {
    let (cfg, record, report) = run_detector(trace, config)?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::input(format!("{}: {e}", out_dir.display())))?;
    let files = PlotFiles {
        voltage: out_dir.join("voltage.csv"),
        index: out_dir.join("index.csv"),
        report: out_dir.join("report.json"),
        extra: None,
    };
    let window = sub_record(&record, &report.index);
    io::write_atomic(&files.voltage, |w| write_voltage(&record, &report.index, &window, w)).map_err(CliError::input)?;
    io::save_index(&files.index, &report.index, report.method.index_column()).map_err(CliError::input)?;
    io::write_json(&files.report, &ReportFile::new(&report, &cfg)).map_err(CliError::input)?;
    let method = report.method;
    let extra = match method {
        Method::Wavelet => {
            let phase = report.channel.unwrap_or(Phase::A);
            let tree = dwt::dwt_decompose(&signal_model::select_channel(&record, phase), cfg.detector.level)
                .map_err(|e| CliError::transform(method, e))?;
            let path = out_dir.join("coefficients.csv");
            io::write_atomic(&path, |w| tree.write_csv(w)).map_err(CliError::input)?;
            Some(path)
        }
        Method::Ica => {
            let spans = cfg.spans.resolve(record.sample_rate_hz, record.len());
            let series = ica::performance_index(&record, spans.prefault, spans.analysis, &cfg.ica)
                .map_err(|e| CliError::transform(method, e))?;
            let path = out_dir.join("model.json");
            io::write_json(&path, &ModelDump::from(&series.fitted)).map_err(CliError::input)?;
            Some(path)
        }
        _ => None,
    };
    Ok(PlotFiles { extra, ..files })
}

fn sub_record(record: &ThreePhaseRecord, index: &IndexSeries) -> std::ops::Range<usize> {
    index.start_sample.min(record.len())..index.end_sample().min(record.len())
}

fn write_voltage(
    record: &ThreePhaseRecord,
    index: &IndexSeries,
    window: &std::ops::Range<usize>,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    writeln!(out, "{}", io::TRACE_HEADER)?;
    let [a, b, c] = &record.phases;
    for i in window.clone() {
        let t = i as f64 / index.sample_rate_hz;
        writeln!(out, "{t:.12e},{},{},{}", a[i], b[i], c[i])?;
    }
    Ok(())
}
