//! Centering, PCA whitening, symmetric fixed-point FastICA and the fault
//! performance index.
//!
//! The FastICA update maximizes the negentropy proxy
//! `J(w) = [E{G(wᵀz)} − E{G(ν)}]²` with `ν ~ N(0, 1)`:
//!
//! ```text
//! w ← E{z·g(wᵀz)} − E{g'(wᵀz)}·w        (every row of W)
//! W ← (W·Wᵀ)^{-1/2}·W                      (symmetric decorrelation)
//! ```
//!
//! `G = log cosh` (g = tanh) by default; `G(u) = u⁴/4` (g = u³) is the
//! kurtosis-based alternative.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal_model::{Phase, ThreePhaseRecord, Trace};
use crate::span::SampleSpan;

/// `E{log cosh ν}` for a standard normal `ν`.
pub const GAUSSIAN_LOGCOSH_MEAN: f64 = 0.374_567_207_491_437_97;

/// Eigenvalues below this fraction of the largest are treated as zero.
const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelOrigin {
    ThreePhase,
    DelayEmbedding { dim: usize },
}

/// `m × N` observation matrix, one channel per row.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    pub values: DMatrix<f64>,
    pub origin: ChannelOrigin,
}

impl DataMatrix {
    pub fn channels(&self) -> usize {
        self.values.nrows()
    }

    pub fn samples(&self) -> usize {
        self.values.ncols()
    }

    /// Row-wise covariance `X·Xᵀ / N` (no mean removal).
    pub fn second_moment(&self) -> DMatrix<f64> {
        let n = self.samples() as f64;
        (&self.values * self.values.transpose()) / n
    }
}

fn check_matrix(values: &DMatrix<f64>) -> Result<()> {
    if values.nrows() < 2 {
        return Err(Error::Shape("data matrix needs at least 2 channels".into()));
    }
    if values.ncols() <= values.nrows() {
        return Err(Error::Shape(format!(
            "data matrix has {} samples for {} channels",
            values.ncols(),
            values.nrows()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("data matrix contains non-finite values".into()));
    }
    Ok(())
}

/// Packs the three phase rows as a `3 × N` matrix.
pub fn build_data_matrix(record: &ThreePhaseRecord) -> Result<DataMatrix> {
    let n = record.len();
    let values = DMatrix::from_fn(3, n, |r, c| record.phases[r][c]);
    check_matrix(&values)?;
    Ok(DataMatrix { values, origin: ChannelOrigin::ThreePhase })
}

/// Delay embedding of a single trace: row `i`, column `c` holds
/// `x[c + dim − 1 − i]`, so row `i` is the trace delayed by `i` samples and
/// column `c` ends at sample `c + dim − 1`.
pub fn build_delay_embedding(trace: &Trace, dim: usize) -> Result<DataMatrix> {
    let values = delay_embed(&trace.samples, dim)?;
    check_matrix(&values)?;
    Ok(DataMatrix { values, origin: ChannelOrigin::DelayEmbedding { dim } })
}

fn delay_embed(samples: &[f64], dim: usize) -> Result<DMatrix<f64>> {
    if dim < 2 {
        return Err(Error::Config("embedding dimension must be at least 2".into()));
    }
    if samples.len() < dim {
        return Err(Error::Shape(format!(
            "trace of {} samples is shorter than embedding dimension {dim}",
            samples.len()
        )));
    }
    let cols = samples.len() - dim + 1;
    Ok(DMatrix::from_fn(dim, cols, |r, c| samples[c + dim - 1 - r]))
}

/// Removes each row's sample mean.
pub fn center(x: &DataMatrix) -> (DataMatrix, DVector<f64>) {
    let mean = x.values.column_mean();
    let mut values = x.values.clone();
    for mut col in values.column_iter_mut() {
        col -= &mean;
    }
    (DataMatrix { values, origin: x.origin }, mean)
}

/// How many principal components whitening keeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Retain {
    /// Every numerically nonzero component.
    All,
    /// At most this many components.
    Components(usize),
    /// The fewest leading components whose eigenvalues reach this fraction
    /// of the total variance.
    VarianceFraction(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WhiteningModel {
    pub mean: DVector<f64>,
    /// `r × m`: `Λ^{-1/2}·Eᵀ` over the retained eigenpairs.
    pub projection: DMatrix<f64>,
    /// `m × r`: `E·Λ^{1/2}`, the right inverse of `projection`.
    pub dewhitening: DMatrix<f64>,
    /// Retained eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
}

impl WhiteningModel {
    pub fn rank(&self) -> usize {
        self.projection.nrows()
    }

    /// Centres and projects raw (uncentred) data.
    pub fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if x.nrows() != self.mean.len() {
            return Err(Error::Shape(format!(
                "data has {} channels, whitening expects {}",
                x.nrows(),
                self.mean.len()
            )));
        }
        let mut centred = x.clone();
        for mut col in centred.column_iter_mut() {
            col -= &self.mean;
        }
        Ok(&self.projection * centred)
    }
}

/// PCA whitening of centred data. The mean stored in the returned model is
/// zero; [`fit`] fills in the mean removed by [`center`].
pub fn whiten(xc: &DataMatrix, retain: Retain) -> Result<(DataMatrix, WhiteningModel)> {
    check_matrix(&xc.values)?;
    let cov = xc.second_moment();
    let eigen = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let largest = eigen.eigenvalues[order[0]];
    if !(largest > 0.0) {
        return Err(Error::Degenerate("data has zero variance; cannot whiten".into()));
    }
    let nonzero: Vec<usize> =
        order.into_iter().take_while(|&i| eigen.eigenvalues[i] > RANK_TOLERANCE * largest).collect();
    let keep = match retain {
        Retain::All => nonzero.len(),
        Retain::Components(r) => {
            if r == 0 {
                return Err(Error::Config("must retain at least one component".into()));
            }
            r.min(nonzero.len())
        }
        Retain::VarianceFraction(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::Config("variance fraction must lie in (0, 1]".into()));
            }
            let total: f64 = nonzero.iter().map(|&i| eigen.eigenvalues[i]).sum();
            let mut acc = 0.0;
            let mut count = 0;
            for &i in &nonzero {
                acc += eigen.eigenvalues[i];
                count += 1;
                if acc >= f * total * (1.0 - 1e-12) {
                    break;
                }
            }
            count
        }
    };
    let kept = &nonzero[..keep];
    let m = xc.channels();
    let mut projection = DMatrix::zeros(keep, m);
    let mut dewhitening = DMatrix::zeros(m, keep);
    for (r, &i) in kept.iter().enumerate() {
        let lambda = eigen.eigenvalues[i];
        let vector = eigen.eigenvectors.column(i);
        for c in 0..m {
            projection[(r, c)] = vector[c] / lambda.sqrt();
            dewhitening[(c, r)] = vector[c] * lambda.sqrt();
        }
    }
    let z = &projection * &xc.values;
    let model = WhiteningModel {
        mean: DVector::zeros(m),
        projection,
        dewhitening,
        eigenvalues: kept.iter().map(|&i| eigen.eigenvalues[i]).collect(),
    };
    Ok((DataMatrix { values: z, origin: xc.origin }, model))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contrast {
    /// `G(u) = log cosh u`, `g = tanh`.
    Tanh,
    /// `G(u) = u⁴ / 4`, `g = u³`.
    Cube,
}

impl Contrast {
    fn g(self, u: f64) -> (f64, f64) {
        match self {
            Contrast::Tanh => {
                let t = u.tanh();
                (t, 1.0 - t * t)
            }
            Contrast::Cube => (u * u * u, 3.0 * u * u),
        }
    }

    /// The contrast function `G` itself.
    pub fn big_g(self, u: f64) -> f64 {
        match self {
            Contrast::Tanh => {
                // log cosh u = |u| + log(1 + e^{-2|u|}) - log 2, stable for large |u|.
                let a = u.abs();
                a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
            }
            Contrast::Cube => u.powi(4) / 4.0,
        }
    }

    /// `E{G(ν)}` for a standard normal `ν`.
    pub fn gaussian_mean(self) -> f64 {
        match self {
            Contrast::Tanh => GAUSSIAN_LOGCOSH_MEAN,
            Contrast::Cube => 0.75,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FastIcaOptions {
    pub contrast: Contrast,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for FastIcaOptions {
    fn default() -> Self {
        FastIcaOptions { contrast: Contrast::Tanh, max_iter: 500, tol: 1e-6, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IcaModel {
    /// `r × r` unmixing matrix acting on whitened data; rows orthonormal.
    pub unmixing: DMatrix<f64>,
    /// `r × N` estimated sources, `unmixing · Z`.
    pub sources: DMatrix<f64>,
    pub contrast: Contrast,
    pub seed: u64,
    pub iterations_used: usize,
    pub converged: bool,
}

impl IcaModel {
    /// `W_f = W · projection`, acting on centred raw data.
    pub fn composite_unmixing(&self, whitening: &WhiteningModel) -> DMatrix<f64> {
        &self.unmixing * &whitening.projection
    }

    /// Pseudo-inverse of the composite unmixing. With orthonormal `W` this is
    /// `dewhitening · Wᵀ`.
    pub fn mixing_estimate(&self, whitening: &WhiteningModel) -> DMatrix<f64> {
        &whitening.dewhitening * self.unmixing.transpose()
    }
}

/// `(W·Wᵀ)^{-1/2}·W`.
fn symmetric_decorrelation(w: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eigen = SymmetricEigen::new(w * w.transpose());
    if eigen.eigenvalues.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
        return Err(Error::Numerical("unmixing matrix became singular".into()));
    }
    let inv_sqrt = DMatrix::from_diagonal(&eigen.eigenvalues.map(|l| 1.0 / l.sqrt()));
    Ok(&eigen.eigenvectors * inv_sqrt * eigen.eigenvectors.transpose() * w)
}

/// Symmetric fixed-point FastICA on whitened data.
pub fn fastica(z: &DataMatrix, options: &FastIcaOptions) -> Result<IcaModel> {
    let r = z.channels();
    let n = z.samples();
    if r == 0 || n == 0 {
        return Err(Error::Shape("empty whitened data".into()));
    }
    if options.max_iter == 0 || !(options.tol > 0.0) {
        return Err(Error::Config("FastICA needs max_iter ≥ 1 and tol > 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let init = DMatrix::from_fn(r, r, |_, _| StandardNormal.sample(&mut rng));
    let mut w = symmetric_decorrelation(&init)?;
    let mut converged = false;
    let mut iterations_used = 0;
    let zt = z.values.transpose();
    for iter in 1..=options.max_iter {
        iterations_used = iter;
        let projected = &w * &z.values;
        let mut g = projected.clone();
        let mut mean_dg = DVector::zeros(r);
        for row in 0..r {
            let mut acc = 0.0;
            for col in 0..n {
                let (gv, dg) = options.contrast.g(projected[(row, col)]);
                g[(row, col)] = gv;
                acc += dg;
            }
            mean_dg[row] = acc / n as f64;
        }
        let mut updated = (&g * &zt) / n as f64;
        for row in 0..r {
            let scaled = w.row(row) * mean_dg[row];
            let mut target = updated.row_mut(row);
            target -= scaled;
        }
        if updated.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("FastICA update produced non-finite values".into()));
        }
        let next = symmetric_decorrelation(&updated)?;
        let change = (0..r)
            .map(|row| (1.0 - next.row(row).dot(&w.row(row)).abs()).abs())
            .fold(0.0, f64::max);
        w = next;
        if change < options.tol {
            converged = true;
            break;
        }
    }
    let sources = &w * &z.values;
    Ok(IcaModel {
        unmixing: w,
        sources,
        contrast: options.contrast,
        seed: options.seed,
        iterations_used,
        converged,
    })
}

/// Negentropy proxy of the projection `wᵀz` (w is normalized first).
pub fn negentropy(w: &DVector<f64>, z: &DataMatrix, contrast: Contrast) -> f64 {
    let w = w.normalize();
    let projected = w.transpose() * &z.values;
    let mean_g = projected.iter().map(|&u| contrast.big_g(u)).sum::<f64>() / z.samples() as f64;
    (mean_g - contrast.gaussian_mean()).powi(2)
}

/// Centering, whitening and FastICA in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedIca {
    pub whitening: WhiteningModel,
    pub model: IcaModel,
}

impl FittedIca {
    pub fn composite_unmixing(&self) -> DMatrix<f64> {
        self.model.composite_unmixing(&self.whitening)
    }
}

pub fn fit(x: &DataMatrix, retain: Retain, options: &FastIcaOptions) -> Result<FittedIca> {
    let (xc, mean) = center(x);
    let (z, mut whitening) = whiten(&xc, retain)?;
    whitening.mean = mean;
    let model = fastica(&z, options)?;
    Ok(FittedIca { whitening, model })
}

/// `S = W · projection · (X − mean)`.
pub fn unmix(model: &IcaModel, whitening: &WhiteningModel, x: &DataMatrix) -> Result<DMatrix<f64>> {
    let z = whitening.apply(&x.values)?;
    if z.nrows() != model.unmixing.ncols() {
        return Err(Error::Shape("whitening rank does not match the unmixing matrix".into()));
    }
    Ok(&model.unmixing * z)
}

/// Channel construction used by the performance index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Embedding {
    ThreePhase,
    Delay { dim: usize, phase: Phase },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PiConfig {
    /// Nominal fundamental; bounds the search for the actual period.
    pub nominal_fundamental_hz: f64,
    pub embedding: Embedding,
    pub retain: Retain,
    pub fastica: FastIcaOptions,
}

impl Default for PiConfig {
    fn default() -> Self {
        PiConfig {
            nominal_fundamental_hz: 50.0,
            embedding: Embedding::ThreePhase,
            retain: Retain::VarianceFraction(0.98),
            fastica: FastIcaOptions::default(),
        }
    }
}

/// `PI(k)` values for `k ∈ [start_sample, start_sample + values.len())`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiSeries {
    pub sample_rate_hz: f64,
    pub start_sample: usize,
    pub values: Vec<f64>,
    /// Template period actually used, in samples.
    pub period_samples: f64,
    pub reference: String,
    pub fitted: FittedIca,
}

/// 4-point Lagrange interpolation of `x` at fractional position `p`; needs
/// `floor(p) − 1 ≥ 0` and `floor(p) + 2 < x.len()`.
fn cubic_at(x: &[f64], p: f64) -> f64 {
    let i = p.floor() as usize;
    let t = p - i as f64;
    let (y0, y1, y2, y3) = (x[i - 1], x[i], x[i + 1], x[i + 2]);
    let a = -t * (t - 1.0) * (t - 2.0) / 6.0;
    let b = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    let c = -(t + 1.0) * t * (t - 2.0) / 2.0;
    let d = (t + 1.0) * t * (t - 1.0) / 6.0;
    a * y0 + b * y1 + c * y2 + d * y3
}

/// Residual energy of the least-squares fit of `a·cos ωk + b·sin ωk + c`
/// to every row over `span`, with `ω = 2π / period`.
fn sinusoid_residual(rows: &[&[f64]], span: SampleSpan, period: f64) -> f64 {
    let omega = 2.0 * std::f64::consts::PI / period;
    let basis = DMatrix::from_fn(span.len(), 3, |r, c| {
        let phase = omega * (span.start + r) as f64;
        match c {
            0 => phase.cos(),
            1 => phase.sin(),
            _ => 1.0,
        }
    });
    let svd = basis.clone().svd(true, true);
    rows.iter()
        .map(|row| {
            let y = DVector::from_column_slice(&row[span.range()]);
            let fit = svd.solve(&y, 1e-12).expect("svd has both factors");
            (&basis * fit - &y).norm_squared()
        })
        .sum()
}

/// Period of the pre-fault segment in samples: the period, within ±10 % of
/// nominal, whose sinusoid best fits all rows in the least-squares sense.
pub fn estimate_period(rows: &[&[f64]], prefault: SampleSpan, nominal_period: f64) -> Result<f64> {
    let (lo, hi) = (0.9 * nominal_period, 1.1 * nominal_period);
    if lo < 2.0 || (prefault.len() as f64) < hi + 4.0 {
        return Err(Error::Bounds(format!(
            "pre-fault span of {} samples is too short for period {nominal_period:.2}",
            prefault.len()
        )));
    }
    let cost = |period: f64| sinusoid_residual(rows, prefault, period);
    const GRID: usize = 40;
    let step = (hi - lo) / GRID as f64;
    let best = (0..=GRID)
        .map(|i| lo + step * i as f64)
        .map(|p| (p, cost(p)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(p, _)| p)
        .expect("non-empty grid");
    // Golden-section refinement on the bracketing grid cells.
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (cost(c), cost(d));
    for _ in 0..50 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = cost(d);
        }
    }
    Ok((a + b) / 2.0)
}

/// Extends each row over the analysis span with its periodic pre-fault
/// shape: sample `k` averages the (interpolated) values at `k − q·period`
/// for every whole `q` that lands inside the pre-fault span.
fn tile_template(row: &[f64], prefault: SampleSpan, period: f64, analysis: SampleSpan) -> Vec<f64> {
    let (first, limit) = ((prefault.start + 1) as f64, (prefault.end - 2) as f64);
    analysis
        .range()
        .map(|k| {
            let k = k as f64;
            let mut q = ((k - limit) / period).ceil().max(0.0);
            if k - q * period >= limit {
                q += 1.0;
            }
            let (mut acc, mut count) = (0.0, 0usize);
            while k - q * period >= first {
                acc += cubic_at(row, k - q * period);
                count += 1;
                q += 1.0;
            }
            acc / count as f64
        })
        .collect()
}

/// Fault performance index `PI(k) = ‖ |W_f·x_n(k) − s_f(k)| ‖²`.
///
/// `W_f` and `s_f(k) = W_f·(x(k) − mean)` come from an ICA fit on the
/// analysis span. The normal template `x_n` is the pre-fault segment tiled
/// periodically over the analysis span at the period estimated from the
/// pre-fault data, and is centred with the same mean.
pub fn performance_index(
    record: &ThreePhaseRecord,
    prefault: SampleSpan,
    analysis: SampleSpan,
    config: &PiConfig,
) -> Result<PiSeries> {
    record.validate()?;
    prefault.check_within(record.len(), "pre-fault")?;
    analysis.check_within(record.len(), "analysis")?;
    if prefault.end > analysis.start {
        return Err(Error::Bounds("pre-fault span must end before the analysis span starts".into()));
    }
    if !(config.nominal_fundamental_hz > 0.0) {
        return Err(Error::Config("nominal fundamental must be positive".into()));
    }
    let nominal_period = record.sample_rate_hz / config.nominal_fundamental_hz;
    if (prefault.len() as f64) < 2.0 * nominal_period {
        return Err(Error::Bounds(format!(
            "pre-fault span of {} samples covers fewer than 2 cycles of {nominal_period:.1}",
            prefault.len()
        )));
    }
    let rows: Vec<&[f64]> = match config.embedding {
        Embedding::ThreePhase => record.phases.iter().map(Vec::as_slice).collect(),
        Embedding::Delay { phase, .. } => vec![record.phase(phase)],
    };
    if rows.iter().all(|row| row[prefault.range()].iter().all(|&v| v == 0.0)) {
        return Err(Error::Degenerate("pre-fault data is identically zero".into()));
    }
    let period = estimate_period(&rows, prefault, nominal_period)?;
    let templates: Vec<Vec<f64>> =
        rows.iter().map(|row| tile_template(row, prefault, period, analysis)).collect();
    let actual: Vec<&[f64]> = rows.iter().map(|row| &row[analysis.range()]).collect();

    let (x_actual, x_template, start_sample) = match config.embedding {
        Embedding::ThreePhase => {
            let n = analysis.len();
            (
                DMatrix::from_fn(3, n, |r, c| actual[r][c]),
                DMatrix::from_fn(3, n, |r, c| templates[r][c]),
                analysis.start,
            )
        }
        Embedding::Delay { dim, .. } => (
            delay_embed(actual[0], dim)?,
            delay_embed(&templates[0], dim)?,
            analysis.start + dim - 1,
        ),
    };
    let origin = match config.embedding {
        Embedding::ThreePhase => ChannelOrigin::ThreePhase,
        Embedding::Delay { dim, .. } => ChannelOrigin::DelayEmbedding { dim },
    };
    let data = DataMatrix { values: x_actual, origin };
    check_matrix(&data.values)?;
    let fitted = fit(&data, config.retain, &config.fastica)?;
    let sources = &fitted.model.sources;
    let template_sources = fitted.model.unmixing.clone() * fitted.whitening.apply(&x_template)?;
    let values = (0..sources.ncols())
        .map(|k| {
            (0..sources.nrows())
                .map(|r| (template_sources[(r, k)] - sources[(r, k)]).abs().powi(2))
                .sum()
        })
        .collect();
    Ok(PiSeries {
        sample_rate_hz: record.sample_rate_hz,
        start_sample,
        values,
        period_samples: period,
        reference: format!(
            "pre-fault samples [{}, {}) tiled at period {period:.4} samples",
            prefault.start, prefault.end
        ),
        fitted,
    })
}
