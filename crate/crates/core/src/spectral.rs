//! One-sided DFT and Hann-windowed STFT with high-band energy indices.
//!
//! Normalization: for an `N`-point transform `X[k] = Σ x[n]·e^{-2πikn/N}` the
//! stored magnitude is `|X[k]|·sqrt(c_k / N)` with `c_k = 1` for the DC bin
//! and (for even `N`) the Nyquist bin, and `c_k = 2` otherwise. Under this
//! scaling `Σ_k magnitude[k]² = Σ_n x[n]²` exactly. STFT frames use the same
//! scaling with `N` replaced by the window length.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::signal_model::Trace;
use crate::span::SampleSpan;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub bin_hz: f64,
    pub magnitudes: Vec<f64>,
    pub phase: Vec<f64>,
}

impl Spectrum {
    pub fn bin_frequency(&self, k: usize) -> f64 {
        k as f64 * self.bin_hz
    }

    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().map(|m| m * m).sum()
    }

    /// Σ magnitude² over bins at or above `cutoff_hz`.
    pub fn highband_energy(&self, cutoff_hz: f64) -> f64 {
        highband_sum(&self.magnitudes, self.bin_hz, cutoff_hz)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "bin_hz,magnitude")?;
        for (k, m) in self.magnitudes.iter().enumerate() {
            writeln!(out, "{},{}", self.bin_frequency(k), m)?;
        }
        Ok(())
    }
}

fn highband_sum(magnitudes: &[f64], bin_hz: f64, cutoff_hz: f64) -> f64 {
    magnitudes
        .iter()
        .enumerate()
        .filter(|(k, _)| *k as f64 * bin_hz >= cutoff_hz - 1e-9 * bin_hz)
        .map(|(_, m)| m * m)
        .sum()
}

fn one_sided_scale(k: usize, n: usize) -> f64 {
    let edge = k == 0 || (n.is_multiple_of(2) && k == n / 2);
    let c = if edge { 1.0 } else { 2.0 };
    (c / n as f64).sqrt()
}

struct Transformer {
    fft: Arc<dyn Fft<f64>>,
    len: usize,
    buffer: Vec<Complex<f64>>,
}

impl Transformer {
    fn new(len: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(len);
        Transformer { fft, len, buffer: vec![Complex::default(); len] }
    }

    /// Scaled one-sided magnitudes and phases of `samples · window`.
    fn run(&mut self, samples: &[f64], window: Option<&[f64]>) -> (Vec<f64>, Vec<f64>) {
        for (i, slot) in self.buffer.iter_mut().enumerate() {
            let w = window.map_or(1.0, |w| w[i]);
            *slot = Complex::new(samples[i] * w, 0.0);
        }
        self.fft.process(&mut self.buffer);
        let bins = self.len / 2 + 1;
        let mags = (0..bins).map(|k| self.buffer[k].norm() * one_sided_scale(k, self.len)).collect();
        let phases = (0..bins).map(|k| self.buffer[k].arg()).collect();
        (mags, phases)
    }
}

pub fn dft(trace: &Trace) -> Result<Spectrum> {
    dft_of(&trace.samples, trace.sample_rate_hz)
}

fn dft_of(samples: &[f64], sample_rate_hz: f64) -> Result<Spectrum> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::Shape("DFT needs at least 2 samples".into()));
    }
    let (magnitudes, phase) = Transformer::new(n).run(samples, None);
    Ok(Spectrum { bin_hz: sample_rate_hz / n as f64, magnitudes, phase })
}

/// Periodic Hann window.
pub fn hann(len: usize) -> Vec<f64> {
    (0..len).map(|n| 0.5 * (1.0 - (2.0 * PI * n as f64 / len as f64).cos())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowFn {
    Hann,
}

/// Frame-major STFT magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    pub window_len: usize,
    pub hop: usize,
    pub window_fn: WindowFn,
    pub sample_rate_hz: f64,
    pub signal_len: usize,
    /// `frames[f][k]`, `window_len / 2 + 1` bins per frame.
    pub frames: Vec<Vec<f64>>,
    /// Window centre of each frame, in seconds.
    pub frame_times_s: Vec<f64>,
}

impl Spectrogram {
    pub fn bin_hz(&self) -> f64 {
        self.sample_rate_hz / self.window_len as f64
    }

    pub fn frame_span(&self, frame: usize) -> SampleSpan {
        let start = frame * self.hop;
        SampleSpan::new(start, start + self.window_len)
    }

    /// High-band energy of each frame.
    pub fn frame_highband_energy(&self, cutoff_hz: f64) -> Result<Vec<f64>> {
        check_cutoff(cutoff_hz, self.sample_rate_hz)?;
        Ok(self.frames.iter().map(|f| highband_sum(f, self.bin_hz(), cutoff_hz)).collect())
    }

    /// Σ over frames that intersect `span` of their high-band energy,
    /// divided by the span length in samples.
    pub fn highband_energy_index(&self, cutoff_hz: f64, span: SampleSpan) -> Result<f64> {
        span.check_within(self.signal_len, "energy")?;
        let per_frame = self.frame_highband_energy(cutoff_hz)?;
        Ok(sum_intersecting(&per_frame, self.hop, self.window_len, span) / span.len() as f64)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "frame_time_s,bin_hz,magnitude")?;
        let bin = self.bin_hz();
        for (frame, t) in self.frames.iter().zip(&self.frame_times_s) {
            for (k, m) in frame.iter().enumerate() {
                writeln!(out, "{t},{},{m}", k as f64 * bin)?;
            }
        }
        Ok(())
    }
}

/// Sum of `per_frame` values over frames `[f·hop, f·hop + window)` that
/// intersect `span`.
pub(crate) fn sum_intersecting(per_frame: &[f64], hop: usize, window: usize, span: SampleSpan) -> f64 {
    if span.is_empty() {
        return 0.0;
    }
    // Frame f intersects iff f·hop < span.end and f·hop + window > span.start.
    let first = (span.start + 1).saturating_sub(window).div_ceil(hop);
    let last = (span.end - 1) / hop;
    (first..=last.min(per_frame.len().saturating_sub(1)))
        .filter(|&f| f < per_frame.len())
        .map(|f| per_frame[f])
        .sum()
}

pub fn stft(trace: &Trace, window_len: usize, hop: usize) -> Result<Spectrogram> {
    let n = trace.len();
    if window_len < 2 {
        return Err(Error::Config("STFT window must span at least 2 samples".into()));
    }
    if hop == 0 {
        return Err(Error::Config("STFT hop must be at least 1".into()));
    }
    if window_len > n {
        return Err(Error::Shape(format!("window of {window_len} samples exceeds trace length {n}")));
    }
    let window = hann(window_len);
    let frame_count = (n - window_len) / hop + 1;
    let mut transformer = Transformer::new(window_len);
    let mut frames = Vec::with_capacity(frame_count);
    let mut frame_times_s = Vec::with_capacity(frame_count);
    for f in 0..frame_count {
        let start = f * hop;
        let (mags, _) = transformer.run(&trace.samples[start..start + window_len], Some(&window));
        frames.push(mags);
        frame_times_s.push((start as f64 + window_len as f64 / 2.0) / trace.sample_rate_hz);
    }
    Ok(Spectrogram {
        window_len,
        hop,
        window_fn: WindowFn::Hann,
        sample_rate_hz: trace.sample_rate_hz,
        signal_len: n,
        frames,
        frame_times_s,
    })
}

fn check_cutoff(cutoff_hz: f64, sample_rate_hz: f64) -> Result<()> {
    if !(cutoff_hz > 0.0) || cutoff_hz >= sample_rate_hz / 2.0 {
        return Err(Error::Config(format!(
            "cutoff {cutoff_hz} Hz must lie in (0, {}) Hz",
            sample_rate_hz / 2.0
        )));
    }
    Ok(())
}

/// FT energy index: the span is transformed in isolation and the high-band
/// energy is divided by the span length.
pub fn ft_energy_index(trace: &Trace, cutoff_hz: f64, span: SampleSpan) -> Result<f64> {
    check_cutoff(cutoff_hz, trace.sample_rate_hz)?;
    span.check_within(trace.len(), "energy")?;
    if span.len() < 2 {
        return Err(Error::Shape("FT energy span needs at least 2 samples".into()));
    }
    let spectrum = dft_of(&trace.samples[span.range()], trace.sample_rate_hz)?;
    Ok(spectrum.highband_energy(cutoff_hz) / span.len() as f64)
}

/// FT energy index for every trailing window `[k + 1 - window, k]`,
/// `k = window - 1 .. N`, sharing one FFT plan.
pub(crate) fn ft_energy_windows(trace: &Trace, cutoff_hz: f64, window: usize) -> Result<Vec<f64>> {
    check_cutoff(cutoff_hz, trace.sample_rate_hz)?;
    if window < 2 || window > trace.len() {
        return Err(Error::Shape(format!("energy window {window} does not fit the trace")));
    }
    let mut transformer = Transformer::new(window);
    let bin_hz = trace.sample_rate_hz / window as f64;
    Ok(trace
        .samples
        .windows(window)
        .map(|w| highband_sum(&transformer.run(w, None).0, bin_hz, cutoff_hz) / window as f64)
        .collect())
}

/// STFT energy index for every trailing window `[k + 1 - window, k]`. Each
/// window is framed in isolation, so only frames lying inside it count.
pub(crate) fn stft_energy_windows(
    trace: &Trace,
    cutoff_hz: f64,
    frame_len: usize,
    hop: usize,
    window: usize,
) -> Result<Vec<f64>> {
    check_cutoff(cutoff_hz, trace.sample_rate_hz)?;
    if window > trace.len() || frame_len > window {
        return Err(Error::Shape(format!(
            "STFT frame {frame_len} and energy window {window} must fit inside the trace of {} samples",
            trace.len()
        )));
    }
    // Every frame start is needed because windows slide one sample at a time.
    let per_start = stft(trace, frame_len, 1)?.frame_highband_energy(cutoff_hz)?;
    let frames = (window - frame_len) / hop + 1;
    Ok((0..=trace.len() - window)
        .map(|s| (0..frames).map(|j| per_start[s + j * hop]).sum::<f64>() / window as f64)
        .collect())
}
