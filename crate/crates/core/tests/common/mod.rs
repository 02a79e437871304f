#![allow(dead_code)]

use faultwave::prelude::*;

pub const ONSET_S: f64 = 0.065;
pub const ONSET_SAMPLE: usize = 130;

/// Record at fundamental `f0` with optional 20 dB-style noise.
pub fn record(fault_type: FaultType, f0: f64, snr_db: Option<f64>, seed: u64) -> ThreePhaseRecord {
    let waveform = WaveformConfig { fundamental_hz: f0, ..WaveformConfig::default() };
    let fault = if fault_type == FaultType::NONE { FaultSpec::none() } else { FaultSpec::new(fault_type, ONSET_S) };
    synthesize(&waveform, &fault, &NoiseSpec { snr_db, seed }).expect("valid scenario")
}

/// The three operating conditions: clean, 20 dB noise, ±1 % fundamental.
pub const CONDITIONS: [(f64, Option<f64>); 4] = [(50.0, None), (50.0, Some(20.0)), (49.5, None), (50.5, None)];

pub fn seeded_trace(seed: u64, n: usize) -> Trace {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Trace::new(2000.0, (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
}
