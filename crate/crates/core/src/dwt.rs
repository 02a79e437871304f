//! Daubechies-4 (8-tap, four vanishing moments) orthogonal filter bank.
//!
//! The pyramid runs with periodic extension, so every level halves the
//! coefficient count and the transform is orthonormal: energy is preserved
//! and reconstruction is exact up to rounding.
//!
//! Conventions, with `L = 8`:
//!
//! ```text
//! a_j(k) = Σ_n h[n]  · a_{j-1}((2k + n) mod N_{j-1})
//! d_j(k) = Σ_n h1[n] · a_{j-1}((2k + n) mod N_{j-1})
//! h1[n]  = (-1)^n · h[L - 1 - n]
//! ```
//!
//! with `a_0` the input samples. Level 1 is the finest detail band.

use std::io::Write;

use crate::error::{Error, Result};
use crate::signal_model::Trace;
use crate::span::SampleSpan;

pub const FILTER_LEN: usize = 8;

const DB4_LOWPASS: [f64; FILTER_LEN] = [
    0.230_377_813_308_855_23,
    0.714_846_570_552_541_5,
    0.630_880_767_929_590_4,
    -0.027_983_769_416_983_85,
    -0.187_034_811_718_881_14,
    0.030_841_381_835_986_965,
    0.032_883_011_666_982_945,
    -0.010_597_401_784_997_278,
];

/// Analysis lowpass `h` and highpass `h1` of an orthogonal wavelet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletFilterPair {
    pub lowpass: [f64; FILTER_LEN],
    pub highpass: [f64; FILTER_LEN],
}

impl WaveletFilterPair {
    /// Energy centroid `Σ n·g[n]²` of a unit-norm filter, in taps.
    fn centroid(taps: &[f64; FILTER_LEN]) -> f64 {
        taps.iter().enumerate().map(|(n, g)| n as f64 * g * g).sum()
    }
}

/// The db4 filter pair; the highpass is the quadrature mirror of the lowpass.
pub fn db4_filters() -> WaveletFilterPair {
    let lowpass = DB4_LOWPASS;
    let mut highpass = [0.0; FILTER_LEN];
    for (n, g) in highpass.iter_mut().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        *g = sign * lowpass[FILTER_LEN - 1 - n];
    }
    WaveletFilterPair { lowpass, highpass }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    Periodic,
}

/// Detail bands `d_1..d_J` plus the coarsest approximation `a_J`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTree {
    /// `details[j - 1]` holds `d_j`.
    pub details: Vec<Vec<f64>>,
    pub approximation: Vec<f64>,
    pub original_length: usize,
    pub sample_rate_hz: f64,
    pub boundary: BoundaryMode,
}

impl DecompositionTree {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn detail(&self, level: usize) -> Result<&[f64]> {
        self.check_level(level)?;
        Ok(&self.details[level - 1])
    }

    pub fn coefficient_count(&self) -> usize {
        self.details.iter().map(Vec::len).sum::<usize>() + self.approximation.len()
    }

    pub fn energy(&self) -> f64 {
        self.details
            .iter()
            .flatten()
            .chain(&self.approximation)
            .map(|c| c * c)
            .sum()
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.levels() {
            return Err(Error::Bounds(format!(
                "level {level} outside 1..={} of the decomposition",
                self.levels()
            )));
        }
        Ok(())
    }

    /// Writes `level,k,value` rows; detail levels are `1..=J` and the
    /// approximation `a_J` is written as level `0`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "level,k,value")?;
        for (j, band) in self.details.iter().enumerate() {
            for (k, v) in band.iter().enumerate() {
                writeln!(out, "{},{},{}", j + 1, k, v)?;
            }
        }
        for (k, v) in self.approximation.iter().enumerate() {
            writeln!(out, "0,{k},{v}")?;
        }
        Ok(())
    }
}

fn analysis_step(signal: &[f64], filters: &WaveletFilterPair) -> (Vec<f64>, Vec<f64>) {
    let n = signal.len();
    let half = n / 2;
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    for k in 0..half {
        let (mut a, mut d) = (0.0, 0.0);
        for tap in 0..FILTER_LEN {
            let x = signal[(2 * k + tap) % n];
            a += filters.lowpass[tap] * x;
            d += filters.highpass[tap] * x;
        }
        approx[k] = a;
        detail[k] = d;
    }
    (approx, detail)
}

fn synthesis_step(approx: &[f64], detail: &[f64], filters: &WaveletFilterPair) -> Vec<f64> {
    let n = 2 * approx.len();
    let mut out = vec![0.0; n];
    for (k, (&a, &d)) in approx.iter().zip(detail).enumerate() {
        for tap in 0..FILTER_LEN {
            out[(2 * k + tap) % n] += filters.lowpass[tap] * a + filters.highpass[tap] * d;
        }
    }
    out
}

/// Multi-level periodic db4 decomposition.
pub fn dwt_decompose(trace: &Trace, levels: usize) -> Result<DecompositionTree> {
    let n = trace.len();
    if levels == 0 {
        return Err(Error::Shape("at least one decomposition level is required".into()));
    }
    if n < FILTER_LEN {
        return Err(Error::Shape(format!("trace of {n} samples is shorter than the filter")));
    }
    if levels >= usize::BITS as usize || !n.is_multiple_of(1usize << levels) {
        return Err(Error::Shape(format!("trace length {n} is not divisible by 2^{levels}")));
    }
    let filters = db4_filters();
    let mut approx = trace.samples.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (a, d) = analysis_step(&approx, &filters);
        details.push(d);
        approx = a;
    }
    Ok(DecompositionTree {
        details,
        approximation: approx,
        original_length: n,
        sample_rate_hz: trace.sample_rate_hz,
        boundary: BoundaryMode::Periodic,
    })
}

/// Inverse pyramid.
pub fn dwt_reconstruct(tree: &DecompositionTree) -> Result<Trace> {
    let levels = tree.levels();
    if levels == 0 {
        return Err(Error::Shape("decomposition has no levels".into()));
    }
    let n = tree.original_length;
    for (j, band) in tree.details.iter().enumerate() {
        if band.len() << (j + 1) != n {
            return Err(Error::Shape(format!(
                "level {} has {} coefficients, expected {}",
                j + 1,
                band.len(),
                n >> (j + 1)
            )));
        }
    }
    if tree.approximation.len() << levels != n {
        return Err(Error::Shape("approximation length does not match the coarsest level".into()));
    }
    let filters = db4_filters();
    let mut approx = tree.approximation.clone();
    for detail in tree.details.iter().rev() {
        approx = synthesis_step(&approx, detail, &filters);
    }
    Ok(Trace::new(tree.sample_rate_hz, approx))
}

/// Input-sample support of detail coefficient `k` at `level`: first sample
/// and length of the equivalent filter, before periodic wrapping.
pub fn coefficient_support(level: usize, k: usize) -> (usize, usize) {
    let scale = 1usize << level;
    (scale * k, (scale - 1) * (FILTER_LEN - 1) + 1)
}

/// True when the coefficient's support runs past the end of the input and
/// therefore mixes the two ends of the record.
pub fn is_boundary_coefficient(level: usize, k: usize, signal_len: usize) -> bool {
    let (start, len) = coefficient_support(level, k);
    start + len > signal_len
}

/// Delay, in samples, between the start of a level-`level` coefficient
/// block and the energy centroid of its equivalent highpass filter.
pub fn detail_delay(level: usize) -> usize {
    let f = db4_filters();
    let half = (1usize << (level - 1)) as f64;
    let centroid = half * WaveletFilterPair::centroid(&f.highpass)
        + (half - 1.0) * WaveletFilterPair::centroid(&f.lowpass);
    let block_centre = ((1usize << level) as f64 - 1.0) / 2.0;
    (centroid - block_centre).round().max(0.0) as usize
}

/// Coefficient index feeding sample `sample` of the aligned detail series.
pub fn coefficient_for_sample(level: usize, sample: usize, coefficient_count: usize) -> usize {
    let shifted = sample as isize - detail_delay(level) as isize;
    (shifted.div_euclid(1isize << level)).rem_euclid(coefficient_count as isize) as usize
}

/// `|d_level|` on the original time axis: each coefficient is repeated
/// `2^level` times and shifted by [`detail_delay`] so that a step in the
/// input lines up with the coefficient that responds to it.
pub fn detail_series(tree: &DecompositionTree, level: usize) -> Result<Trace> {
    let band = tree.detail(level)?;
    let samples = (0..tree.original_length)
        .map(|s| band[coefficient_for_sample(level, s, band.len())].abs())
        .collect();
    Ok(Trace::new(tree.sample_rate_hz, samples))
}

/// Samples of the aligned detail series that are fed by coefficients whose
/// support does not wrap around the record ends.
pub fn interior_samples(level: usize, signal_len: usize) -> SampleSpan {
    let count = signal_len >> level;
    let first = (0..signal_len)
        .find(|&s| !is_boundary_coefficient(level, coefficient_for_sample(level, s, count), signal_len));
    let last = (0..signal_len)
        .rev()
        .find(|&s| !is_boundary_coefficient(level, coefficient_for_sample(level, s, count), signal_len));
    match (first, last) {
        (Some(a), Some(b)) if a <= b => SampleSpan::new(a, b + 1),
        _ => SampleSpan::new(0, 0),
    }
}

/// Whether the (wrapped) support of coefficient `k` touches `span`.
pub fn support_intersects(level: usize, k: usize, signal_len: usize, span: SampleSpan) -> bool {
    let (start, len) = coefficient_support(level, k);
    let start = start % signal_len;
    if len >= signal_len {
        return true;
    }
    let end = start + len;
    let overlaps = |a: usize, b: usize| a < span.end && span.start < b;
    overlaps(start, end.min(signal_len)) || (end > signal_len && overlaps(0, end - signal_len))
}

/// Detail energy of `tree` at `level` over `span`, normalized by span length.
pub fn tree_energy_index(tree: &DecompositionTree, level: usize, span: SampleSpan) -> Result<f64> {
    let band = tree.detail(level)?;
    span.check_within(tree.original_length, "energy")?;
    let total: f64 = band
        .iter()
        .enumerate()
        .filter(|(k, _)| support_intersects(level, *k, tree.original_length, span))
        .map(|(_, d)| d * d)
        .sum();
    Ok(total / span.len() as f64)
}

/// Σ d_level(k)² over coefficients whose support intersects `span`,
/// divided by the span length in samples.
pub fn wavelet_energy_index(trace: &Trace, level: usize, span: SampleSpan) -> Result<f64> {
    if span.is_empty() {
        return Err(Error::Bounds("energy span is empty".into()));
    }
    let tree = dwt_decompose(trace, level)?;
    tree_energy_index(&tree, level, span)
}
