//! Detectors: wavelet onset, ICA performance index and the FT / STFT / WT
//! energy indices, all sharing one thresholding and onset rule.
//!
//! Every detector turns its input into an [`IndexSeries`] aligned with the
//! record's sample axis. The threshold is either fixed or calibrated as
//! `mean + k·σ` over a fault-free calibration span, and the onset is the
//! first sample of the analysis span that starts `min_consecutive`
//! successive values above the threshold. Only onsets are reported; fault
//! clearing is not detected.

use std::io::Write;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dwt::{self, DecompositionTree};
use crate::error::{Error, Result};
use crate::ica::{self, PiConfig};
use crate::signal_model::{self, FaultSpec, NoiseSpec, Phase, ThreePhaseRecord, Trace, WaveformConfig};
use crate::span::{ResolvedSpans, SampleSpan, Spans};
use crate::spectral;

/// Energies published for the original simulated grid, by scenario, as
/// `(FT, STFT, WT)`. Kept only to compare orderings; never an expected value.
pub const PUBLISHED_ENERGY_REFERENCE: [(&str, f64, f64, f64); 6] = [
    ("AG", 1.3672, 1.7863, 2.1663),
    ("BG", 1.4525, 2.2414, 2.7352),
    ("CG", 1.3324, 1.8367, 2.6538),
    ("AB", 2.2341, 2.3532, 3.2514),
    ("BC", 2.6342, 3.1230, 3.8724),
    ("ABC", 3.1302, 3.8225, 4.2431),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Wavelet,
    Ica,
    EnergyFt,
    EnergyStft,
    EnergyWt,
}

impl Method {
    pub const ENERGY: [Method; 3] = [Method::EnergyFt, Method::EnergyStft, Method::EnergyWt];

    pub fn name(self) -> &'static str {
        match self {
            Method::Wavelet => "wavelet",
            Method::Ica => "ica",
            Method::EnergyFt => "energy_ft",
            Method::EnergyStft => "energy_stft",
            Method::EnergyWt => "energy_wt",
        }
    }

    pub fn is_energy(self) -> bool {
        Method::ENERGY.contains(&self)
    }

    /// Column name used when the index series is written to CSV.
    pub fn index_column(self) -> &'static str {
        match self {
            Method::Wavelet => "detail_abs",
            Method::Ica => "pi",
            _ => "energy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdPolicy {
    Fixed { value: f64 },
    /// `mean + k_sigma·σ` over the calibration span.
    Adaptive { k_sigma: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    pub method: Method,
    pub threshold: ThresholdPolicy,
    /// Wavelet detail level (1 = finest band).
    pub level: usize,
    /// Lower edge of the high band for the FT and STFT indices.
    pub cutoff_hz: f64,
    pub min_consecutive: usize,
    /// Trailing window of the sliding energy indices, in samples.
    pub energy_window: usize,
    pub stft_window: usize,
    pub stft_hop: usize,
    /// Lower bound on the calibration σ of adaptive thresholds, as a fraction
    /// of the calibration RMS of the input (squared for energies; used
    /// squared as an absolute bound for the dimensionless performance index).
    /// Without it, noise-free records calibrate on rounding jitter.
    pub noise_floor: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            method: Method::Wavelet,
            threshold: ThresholdPolicy::Adaptive { k_sigma: 5.0 },
            level: 1,
            cutoff_hz: 150.0,
            min_consecutive: 3,
            energy_window: 80,
            stft_window: 64,
            stft_hop: 16,
            noise_floor: 1e-4,
        }
    }
}

impl DetectorConfig {
    pub fn for_method(method: Method) -> Self {
        DetectorConfig { method, ..DetectorConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        match self.threshold {
            ThresholdPolicy::Fixed { value } if !value.is_finite() => {
                return Err(Error::Config("fixed threshold must be finite".into()))
            }
            ThresholdPolicy::Adaptive { k_sigma } if !(k_sigma.is_finite() && k_sigma >= 0.0) => {
                return Err(Error::Config("k_sigma must be a nonnegative finite number".into()))
            }
            _ => {}
        }
        if self.level == 0 {
            return Err(Error::Config("wavelet level must be at least 1".into()));
        }
        if self.min_consecutive == 0 {
            return Err(Error::Config("min_consecutive must be at least 1".into()));
        }
        if self.energy_window < 2 || self.stft_window < 2 || self.stft_hop == 0 {
            return Err(Error::Config("energy and STFT windows need ≥ 2 samples and hop ≥ 1".into()));
        }
        if !(self.noise_floor >= 0.0) {
            return Err(Error::Config("noise_floor must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Detector output on the record's sample axis: `values[i]` belongs to
/// sample `start_sample + i`. `valid` marks the samples whose values are not
/// affected by transform boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSeries {
    pub sample_rate_hz: f64,
    pub start_sample: usize,
    pub values: Vec<f64>,
    pub valid: SampleSpan,
}

impl IndexSeries {
    fn full(sample_rate_hz: f64, start_sample: usize, values: Vec<f64>) -> Self {
        let valid = SampleSpan::new(start_sample, start_sample + values.len());
        IndexSeries { sample_rate_hz, start_sample, values, valid }
    }

    pub fn end_sample(&self) -> usize {
        self.start_sample + self.values.len()
    }

    pub fn value_at(&self, sample: usize) -> Option<f64> {
        sample.checked_sub(self.start_sample).and_then(|i| self.values.get(i).copied())
    }

    fn relative(&self, span: SampleSpan) -> SampleSpan {
        let s = span.intersect(self.valid);
        SampleSpan::new(s.start - self.start_sample.min(s.start), s.end.saturating_sub(self.start_sample))
    }

    /// Largest value over `span` (restricted to the valid region).
    pub fn peak(&self, span: SampleSpan) -> f64 {
        let rel = self.relative(span);
        self.values[rel.range()].iter().cloned().fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut out: W, column: &str) -> std::io::Result<()> {
        writeln!(out, "t,{column}")?;
        for (i, v) in self.values.iter().enumerate() {
            let t = (self.start_sample + i) as f64 / self.sample_rate_hz;
            writeln!(out, "{t:.12e},{v}")?;
        }
        Ok(())
    }
}

/// `mean + k_sigma · σ` of `values[span]` (population standard deviation).
pub fn calibrate_threshold(values: &[f64], span: SampleSpan, k_sigma: f64) -> Result<f64> {
    if !(k_sigma > 0.0 && k_sigma.is_finite()) {
        return Err(Error::Config(format!("k_sigma must be positive, got {k_sigma}")));
    }
    let (mean, sigma) = mean_std(values, span)?;
    Ok(mean + k_sigma * sigma)
}

fn mean_std(values: &[f64], span: SampleSpan) -> Result<(f64, f64)> {
    if span.is_empty() || span.end > values.len() {
        return Err(Error::Bounds("calibration span is empty or outside the index series".into()));
    }
    let window = &values[span.range()];
    let n = window.len() as f64;
    let mean = window.iter().sum::<f64>() / n;
    let var = window.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// First sample of `search` at which `min_consecutive` successive values
/// exceed `threshold`.
pub fn first_crossing(series: &IndexSeries, search: SampleSpan, threshold: f64, min_consecutive: usize) -> Option<usize> {
    let rel = series.relative(search);
    let mut run = 0usize;
    for i in rel.range() {
        if series.values[i] > threshold {
            run += 1;
            if run >= min_consecutive {
                return Some(series.start_sample + i + 1 - run);
            }
        } else {
            run = 0;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub method: Method,
    pub detected: bool,
    pub onset_sample: Option<usize>,
    pub onset_time_s: Option<f64>,
    pub index: IndexSeries,
    pub threshold_used: f64,
    /// Channel the decision came from, for per-phase detectors.
    pub channel: Option<Phase>,
    /// Peak index over the analysis span, for energy detectors.
    pub energy: Option<f64>,
    pub scenario: String,
}

/// Lower bounds on the calibration σ: `absolute`, and `relative` times the
/// calibration mean.
#[derive(Debug, Clone, Copy)]
struct SigmaFloor {
    absolute: f64,
    relative: f64,
}

impl SigmaFloor {
    fn absolute(absolute: f64) -> Self {
        SigmaFloor { absolute, relative: 0.0 }
    }
}

fn decide(
    method: Method,
    index: IndexSeries,
    cfg: &DetectorConfig,
    spans: &ResolvedSpans,
    floor: SigmaFloor,
) -> Result<DetectionReport> {
    cfg.validate()?;
    let threshold_used = match cfg.threshold {
        ThresholdPolicy::Fixed { value } => value,
        ThresholdPolicy::Adaptive { k_sigma } => {
            let rel = index.relative(spans.calibration);
            if rel.is_empty() {
                return Err(Error::Bounds(format!(
                    "calibration span [{}, {}) has no valid {} index values",
                    spans.calibration.start,
                    spans.calibration.end,
                    method.name()
                )));
            }
            let (mean, sigma) = mean_std(&index.values, rel)?;
            mean + k_sigma * sigma.max(floor.absolute).max(floor.relative * mean)
        }
    };
    let onset = first_crossing(&index, spans.analysis, threshold_used, cfg.min_consecutive);
    let energy = method.is_energy().then(|| index.peak(spans.analysis));
    Ok(DetectionReport {
        method,
        detected: onset.is_some(),
        onset_sample: onset,
        onset_time_s: onset.map(|s| s as f64 / index.sample_rate_hz),
        threshold_used,
        index,
        channel: None,
        energy,
        scenario: String::new(),
    })
}

fn calibration_rms(samples: &[f64], span: SampleSpan) -> f64 {
    let s = span.intersect(SampleSpan::new(0, samples.len()));
    signal_model::mean_square(&samples[s.range()]).sqrt()
}

/// Aligned `|d_level|` series of a trace; the valid region excludes samples
/// fed by coefficients whose support wraps around the record ends.
pub fn wavelet_index(trace: &Trace, level: usize) -> Result<IndexSeries> {
    let tree = dwt::dwt_decompose(trace, level)?;
    let series = dwt::detail_series(&tree, level)?;
    let mut index = IndexSeries::full(trace.sample_rate_hz, 0, series.samples);
    index.valid = dwt::interior_samples(level, trace.len());
    Ok(index)
}

pub fn wavelet_detect(trace: &Trace, cfg: &DetectorConfig, spans: &ResolvedSpans) -> Result<DetectionReport> {
    let index = wavelet_index(trace, cfg.level)?;
    let floor = cfg.noise_floor * calibration_rms(&trace.samples, spans.calibration);
    decide(Method::Wavelet, index, cfg, spans, SigmaFloor::absolute(floor))
}

/// Runs [`wavelet_detect`] on each phase and keeps the earliest onset. When
/// no phase detects, the phase with the largest index peak is reported.
pub fn wavelet_detect_record(record: &ThreePhaseRecord, cfg: &DetectorConfig, spans: &Spans) -> Result<DetectionReport> {
    let resolved = spans.resolve(record.sample_rate_hz, record.len());
    let mut best: Option<DetectionReport> = None;
    for phase in Phase::ALL {
        let mut report = wavelet_detect(&signal_model::select_channel(record, phase), cfg, &resolved)?;
        report.channel = Some(phase);
        let better = match &best {
            None => true,
            Some(b) => match (report.onset_sample, b.onset_sample) {
                (Some(a), Some(c)) => a < c,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => {
                    report.index.peak(resolved.analysis) / report.threshold_used
                        > b.index.peak(resolved.analysis) / b.threshold_used
                }
            },
        };
        if better {
            best = Some(report);
        }
    }
    Ok(best.expect("three phases"))
}

pub fn ica_detect(
    record: &ThreePhaseRecord,
    cfg: &DetectorConfig,
    pi: &PiConfig,
    spans: &Spans,
) -> Result<DetectionReport> {
    let resolved = spans.resolve(record.sample_rate_hz, record.len());
    let series = ica::performance_index(record, resolved.prefault, resolved.analysis, pi)?;
    let index = IndexSeries::full(series.sample_rate_hz, series.start_sample, series.values);
    decide(Method::Ica, index, cfg, &resolved, SigmaFloor::absolute(cfg.noise_floor * cfg.noise_floor))
}

/// Sliding trailing-window energy index of the given method: the value at
/// sample `k` is the method's energy index over `[k + 1 − window, k + 1)`.
pub fn energy_index(trace: &Trace, method: Method, cfg: &DetectorConfig) -> Result<IndexSeries> {
    let w = cfg.energy_window;
    let n = trace.len();
    if w > n {
        return Err(Error::Shape(format!("energy window {w} exceeds trace length {n}")));
    }
    let fs = trace.sample_rate_hz;
    match method {
        Method::EnergyFt => {
            let values = spectral::ft_energy_windows(trace, cfg.cutoff_hz, w)?;
            Ok(IndexSeries::full(fs, w - 1, values))
        }
        Method::EnergyStft => {
            let values = spectral::stft_energy_windows(trace, cfg.cutoff_hz, cfg.stft_window, cfg.stft_hop, w)?;
            Ok(IndexSeries::full(fs, w - 1, values))
        }
        Method::EnergyWt => {
            let tree = dwt::dwt_decompose(trace, cfg.level)?;
            wavelet_energy_windows(&tree, cfg.level, w)
        }
        other => Err(Error::Config(format!("{} is not an energy method", other.name()))),
    }
}

fn wavelet_energy_windows(tree: &DecompositionTree, level: usize, w: usize) -> Result<IndexSeries> {
    let n = tree.original_length;
    let band = tree.detail(level)?;
    let mut values = Vec::with_capacity(n + 1 - w);
    let mut valid_first = None;
    let mut valid_last = None;
    for k in w - 1..n {
        let span = SampleSpan::new(k + 1 - w, k + 1);
        let mut total = 0.0;
        let mut clean = true;
        for (c, d) in band.iter().enumerate() {
            if dwt::support_intersects(level, c, n, span) {
                total += d * d;
                clean &= !dwt::is_boundary_coefficient(level, c, n);
            }
        }
        if clean {
            valid_first.get_or_insert(k);
            valid_last = Some(k);
        }
        values.push(total / w as f64);
    }
    let valid = match (valid_first, valid_last) {
        (Some(a), Some(b)) => SampleSpan::new(a, b + 1),
        _ => SampleSpan::new(0, 0),
    };
    Ok(IndexSeries { sample_rate_hz: tree.sample_rate_hz, start_sample: w - 1, values, valid })
}

fn energy_floor(samples: &[f64], cfg: &DetectorConfig, spans: &ResolvedSpans) -> f64 {
    (cfg.noise_floor * calibration_rms(samples, spans.calibration)).powi(2)
}

/// Relative spread (σ / mean) of an energy index `‖A·x‖²` under white
/// Gaussian input, summed over `channels` independent equal-power inputs.
fn quadratic_spread(a: &DMatrix<f64>, channels: usize) -> f64 {
    let trace = a.norm_squared();
    let gram = a * a.transpose();
    (2.0 * gram.norm_squared() / channels as f64).sqrt() / trace
}

/// Rows of scaled DFT bins at or above the cutoff for a frame of `len`
/// samples, each multiplied by `taper`.
fn highband_rows(len: usize, taper: &[f64], bin_hz: f64, cutoff_hz: f64) -> Vec<Vec<f64>> {
    let mut rows = Vec::new();
    for k in (0..=len / 2).filter(|&k| k as f64 * bin_hz >= cutoff_hz - 1e-9 * bin_hz) {
        let edge = k == 0 || (len.is_multiple_of(2) && k == len / 2);
        let scale = (if edge { 1.0 } else { 2.0 } / len as f64).sqrt();
        let arg = |n: usize| 2.0 * std::f64::consts::PI * (k * n) as f64 / len as f64;
        rows.push((0..len).map(|n| scale * taper[n] * arg(n).cos()).collect());
        if !edge {
            rows.push((0..len).map(|n| scale * taper[n] * arg(n).sin()).collect());
        }
    }
    rows
}

/// σ / mean of the method's energy index when its input is white noise.
/// Used as a floor on the calibration σ, because a short calibration span
/// holds only one or two independent windows.
fn white_noise_spread(method: Method, cfg: &DetectorConfig, sample_rate_hz: f64, channels: usize) -> f64 {
    let w = cfg.energy_window;
    let rows = match method {
        Method::EnergyFt => highband_rows(w, &vec![1.0; w], sample_rate_hz / w as f64, cfg.cutoff_hz),
        Method::EnergyStft => {
            let frame = cfg.stft_window;
            let window = spectral::hann(frame);
            let band = highband_rows(frame, &window, sample_rate_hz / frame as f64, cfg.cutoff_hz);
            let frames = (w.saturating_sub(frame)) / cfg.stft_hop + 1;
            (0..frames)
                .flat_map(|f| {
                    band.iter().map(move |r| {
                        let mut row = vec![0.0; w];
                        row[f * cfg.stft_hop..f * cfg.stft_hop + frame].copy_from_slice(r);
                        row
                    })
                })
                .collect()
        }
        _ => {
            // Detail coefficients are orthonormal, so only their count matters.
            let scale = 1usize << cfg.level;
            let count = (w - 1 + (dwt::FILTER_LEN - 1) * (scale - 1)) / scale + 1;
            return (2.0 / (count * channels) as f64).sqrt();
        }
    };
    if rows.is_empty() {
        return 0.0;
    }
    let a = DMatrix::from_fn(rows.len(), w, |r, c| rows[r][c]);
    quadratic_spread(&a, channels)
}

/// Widens the white-noise spread for the uncertainty of the calibration
/// mean, which rests on `(n + w − 1) / w` independent windows.
fn mean_uncertainty(index: &IndexSeries, spans: &ResolvedSpans, window: usize) -> f64 {
    let n = index.relative(spans.calibration).len();
    let independent = (n + window - 1) as f64 / window as f64;
    (1.0 + 1.0 / independent).sqrt()
}

pub fn energy_detect(trace: &Trace, method: Method, cfg: &DetectorConfig, spans: &ResolvedSpans) -> Result<DetectionReport> {
    let index = energy_index(trace, method, cfg)?;
    let floor = SigmaFloor {
        absolute: energy_floor(&trace.samples, cfg, spans),
        relative: white_noise_spread(method, cfg, trace.sample_rate_hz, 1)
            * mean_uncertainty(&index, spans, cfg.energy_window),
    };
    decide(method, index, cfg, spans, floor)
}

/// Energy detection on the sum of the three per-phase index series.
pub fn energy_detect_record(
    record: &ThreePhaseRecord,
    method: Method,
    cfg: &DetectorConfig,
    spans: &Spans,
) -> Result<DetectionReport> {
    let resolved = spans.resolve(record.sample_rate_hz, record.len());
    let mut total: Option<IndexSeries> = None;
    let mut absolute = 0.0;
    for phase in Phase::ALL {
        let trace = signal_model::select_channel(record, phase);
        let index = energy_index(&trace, method, cfg)?;
        absolute += energy_floor(&trace.samples, cfg, &resolved);
        match total.as_mut() {
            None => total = Some(index),
            Some(acc) => acc.values.iter_mut().zip(&index.values).for_each(|(a, b)| *a += b),
        }
    }
    let total = total.expect("three phases");
    let relative = white_noise_spread(method, cfg, record.sample_rate_hz, 3)
        * mean_uncertainty(&total, &resolved, cfg.energy_window);
    decide(method, total, cfg, &resolved, SigmaFloor { absolute, relative })
}

/// Dispatches on `cfg.method`.
pub fn detect_record(
    record: &ThreePhaseRecord,
    cfg: &DetectorConfig,
    pi: &PiConfig,
    spans: &Spans,
) -> Result<DetectionReport> {
    match cfg.method {
        Method::Wavelet => wavelet_detect_record(record, cfg, spans),
        Method::Ica => ica_detect(record, cfg, pi, spans),
        m => energy_detect_record(record, m, cfg, spans),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyRow {
    pub scenario: String,
    pub e_ft: f64,
    pub e_stft: f64,
    pub e_wt: f64,
    pub det_ft: bool,
    pub det_stft: bool,
    pub det_wt: bool,
}

impl EnergyRow {
    /// Whether `E_WT > E_STFT > E_FT`, the ordering of the published table.
    pub fn wavelet_dominates(&self) -> bool {
        self.e_wt > self.e_stft && self.e_stft > self.e_ft
    }

    pub fn all_detected(&self) -> bool {
        self.det_ft && self.det_stft && self.det_wt
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableRow {
    Ok(EnergyRow),
    Failed { scenario: String, error: String },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergyTable {
    pub rows: Vec<TableRow>,
}

impl EnergyTable {
    pub fn ok_rows(&self) -> impl Iterator<Item = &EnergyRow> {
        self.rows.iter().filter_map(|r| match r {
            TableRow::Ok(row) => Some(row),
            TableRow::Failed { .. } => None,
        })
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "scenario,e_ft,e_stft,e_wt,det_ft,det_stft,det_wt,error")?;
        for row in &self.rows {
            match row {
                TableRow::Ok(r) => writeln!(
                    out,
                    "{},{},{},{},{},{},{},",
                    csv_field(&r.scenario),
                    r.e_ft,
                    r.e_stft,
                    r.e_wt,
                    r.det_ft,
                    r.det_stft,
                    r.det_wt
                )?,
                TableRow::Failed { scenario, error } => {
                    writeln!(out, "{},,,,,,,{}", csv_field(scenario), csv_field(error))?
                }
            }
        }
        Ok(())
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:<16} {:>12} {:>12} {:>12}  {:<5} {:<5} {:<5}\n",
            "scenario", "E_FT", "E_STFT", "E_WT", "FT", "STFT", "WT"
        );
        for row in &self.rows {
            match row {
                TableRow::Ok(r) => s.push_str(&format!(
                    "{:<16} {:>12.6e} {:>12.6e} {:>12.6e}  {:<5} {:<5} {:<5}\n",
                    r.scenario, r.e_ft, r.e_stft, r.e_wt, r.det_ft, r.det_stft, r.det_wt
                )),
                TableRow::Failed { scenario, error } => s.push_str(&format!("{scenario:<16} error: {error}\n")),
            }
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Energies and decisions of all three methods on one record.
pub fn energy_row(scenario: &str, record: &ThreePhaseRecord, cfg: &DetectorConfig, spans: &Spans) -> Result<EnergyRow> {
    let run = |m| energy_detect_record(record, m, cfg, spans);
    let (ft, stft, wt) = (run(Method::EnergyFt)?, run(Method::EnergyStft)?, run(Method::EnergyWt)?);
    Ok(EnergyRow {
        scenario: scenario.to_string(),
        e_ft: ft.energy.unwrap_or(0.0),
        e_stft: stft.energy.unwrap_or(0.0),
        e_wt: wt.energy.unwrap_or(0.0),
        det_ft: ft.detected,
        det_stft: stft.detected,
        det_wt: wt.detected,
    })
}

/// Shared generation settings for [`energy_table`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergySetup {
    pub waveform: WaveformConfig,
    pub noise: NoiseSpec,
    pub detector: DetectorConfig,
    pub spans: Spans,
}

/// One row per fault, in input order; scenarios are evaluated in parallel.
pub fn energy_table(faults: &[FaultSpec], setup: &EnergySetup) -> EnergyTable {
    let rows = faults
        .par_iter()
        .map(|fault| {
            let name = fault.fault_type.to_string();
            let row = signal_model::synthesize(&setup.waveform, fault, &setup.noise)
                .and_then(|rec| energy_row(&name, &rec, &setup.detector, &setup.spans));
            match row {
                Ok(r) => TableRow::Ok(r),
                Err(e) => TableRow::Failed { scenario: name, error: e.to_string() },
            }
        })
        .collect();
    EnergyTable { rows }
}
