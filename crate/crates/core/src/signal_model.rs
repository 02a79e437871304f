//! Synthetic three-phase voltage records.
//!
//! Records are generated in per-unit from a balanced sinusoidal baseline.
//! Faults are modelled as a sag of the faulted phases to a retained voltage
//! plus an exponentially decaying high-frequency burst starting at onset.
//! Noise is white Gaussian at a per-row target SNR and is fully determined
//! by its seed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{config_err, Error, Result};

/// Nominal line voltage of the modelled grid. Carried as metadata only;
/// all samples are per-unit.
pub const NOMINAL_LINE_KV: f64 = 230.0;

/// Slack used when converting times to sample indices.
const TIME_EPS: f64 = 1e-9;

/// One phase conductor of a three-phase record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    A,
    B,
    C,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::A, Phase::B, Phase::C];

    pub fn index(self) -> usize {
        match self {
            Phase::A => 0,
            Phase::B => 1,
            Phase::C => 2,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::A => "a",
            Phase::B => "b",
            Phase::C => "c",
        })
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Phase::A),
            "b" => Ok(Phase::B),
            "c" => Ok(Phase::C),
            other => config_err(format!("unknown phase `{other}`")),
        }
    }
}

/// A single sampled channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub sample_rate_hz: f64,
    pub samples: Vec<f64>,
}

impl Trace {
    pub fn new(sample_rate_hz: f64, samples: Vec<f64>) -> Self {
        Trace { sample_rate_hz, samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time_of(&self, sample: usize) -> f64 {
        sample as f64 / self.sample_rate_hz
    }

    pub fn scaled(&self, factor: f64) -> Trace {
        Trace::new(self.sample_rate_hz, self.samples.iter().map(|v| v * factor).collect())
    }
}

/// Parameters of the balanced baseline waveform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveformConfig {
    pub sample_rate_hz: f64,
    pub fundamental_hz: f64,
    pub amplitude_pu: f64,
    pub duration_s: f64,
    pub phase_offsets_rad: [f64; 3],
}

impl Default for WaveformConfig {
    fn default() -> Self {
        WaveformConfig {
            sample_rate_hz: 2000.0,
            fundamental_hz: 50.0,
            amplitude_pu: 1.0,
            duration_s: 0.2,
            phase_offsets_rad: [0.0, -2.0 * PI / 3.0, 2.0 * PI / 3.0],
        }
    }
}

impl WaveformConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.sample_rate_hz, self.fundamental_hz, self.amplitude_pu, self.duration_s]
            .iter()
            .chain(self.phase_offsets_rad.iter())
            .all(|v| v.is_finite());
        if !finite {
            return config_err("waveform parameters must be finite");
        }
        if self.sample_rate_hz <= 0.0 {
            return config_err("sample_rate_hz must be positive");
        }
        if self.fundamental_hz <= 0.0 {
            return config_err("fundamental_hz must be positive");
        }
        if self.duration_s <= 0.0 {
            return config_err("duration_s must be positive");
        }
        if self.amplitude_pu < 0.0 {
            return config_err("amplitude_pu must be nonnegative");
        }
        if self.sample_rate_hz <= 2.0 * self.fundamental_hz {
            return config_err(format!(
                "fundamental_hz {} violates Nyquist at sample_rate_hz {}",
                self.fundamental_hz, self.sample_rate_hz
            ));
        }
        self.sample_count().map(|_| ())
    }

    /// Number of samples implied by `duration_s × sample_rate_hz`, which must
    /// be an integer of at least 2.
    pub fn sample_count(&self) -> Result<usize> {
        let exact = self.duration_s * self.sample_rate_hz;
        let n = exact.round();
        if (exact - n).abs() > 1e-6 * n.max(1.0) {
            return config_err(format!(
                "duration_s × sample_rate_hz = {exact} is not an integer sample count"
            ));
        }
        if n < 2.0 {
            return config_err("record must contain at least 2 samples");
        }
        Ok(n as usize)
    }

    /// Samples per nominal fundamental cycle (not necessarily an integer).
    pub fn samples_per_cycle(&self) -> f64 {
        self.sample_rate_hz / self.fundamental_hz
    }
}

/// Fault categories by involved phases. `G` (ground) adds no extra phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaultType {
    AG,
    BG,
    CG,
    AB,
    BC,
    ABCG,
    ABC,
    #[serde(alias = "none")]
    NONE,
}

impl FaultType {
    /// The six fault types of the energy comparison table.
    pub const TABLE: [FaultType; 6] = [
        FaultType::AG,
        FaultType::BG,
        FaultType::CG,
        FaultType::AB,
        FaultType::BC,
        FaultType::ABC,
    ];

    pub fn phases(self) -> &'static [Phase] {
        match self {
            FaultType::AG => &[Phase::A],
            FaultType::BG => &[Phase::B],
            FaultType::CG => &[Phase::C],
            FaultType::AB => &[Phase::A, Phase::B],
            FaultType::BC => &[Phase::B, Phase::C],
            FaultType::ABCG | FaultType::ABC => &[Phase::A, Phase::B, Phase::C],
            FaultType::NONE => &[],
        }
    }

    pub fn involves(self, phase: Phase) -> bool {
        self.phases().contains(&phase)
    }
}

impl fmt::Display for FaultType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for FaultType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "AG" => FaultType::AG,
            "BG" => FaultType::BG,
            "CG" => FaultType::CG,
            "AB" => FaultType::AB,
            "BC" => FaultType::BC,
            "ABCG" => FaultType::ABCG,
            "ABC" => FaultType::ABC,
            "NONE" => FaultType::NONE,
            other => return config_err(format!("unknown fault type `{other}`")),
        })
    }
}

/// Description of an injected fault.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FaultSpec {
    pub fault_type: FaultType,
    pub onset_s: f64,
    /// `None` keeps the fault until the end of the record.
    pub clear_s: Option<f64>,
    pub retained_voltage_pu: f64,
    pub transient_gain: f64,
    pub transient_freq_hz: f64,
    pub transient_tau_s: f64,
}

impl Default for FaultSpec {
    fn default() -> Self {
        FaultSpec {
            fault_type: FaultType::NONE,
            onset_s: 0.065,
            clear_s: None,
            retained_voltage_pu: 0.3,
            transient_gain: 0.2,
            transient_freq_hz: 500.0,
            transient_tau_s: 0.01,
        }
    }
}

impl FaultSpec {
    /// A fault of the given type with the default severity parameters.
    pub fn new(fault_type: FaultType, onset_s: f64) -> Self {
        FaultSpec { fault_type, onset_s, ..FaultSpec::default() }
    }

    pub fn none() -> Self {
        FaultSpec::default()
    }

    pub fn with_retained(mut self, retained_voltage_pu: f64) -> Self {
        self.retained_voltage_pu = retained_voltage_pu;
        self
    }

    pub fn with_clear(mut self, clear_s: f64) -> Self {
        self.clear_s = Some(clear_s);
        self
    }

    pub fn is_none(&self) -> bool {
        self.fault_type == FaultType::NONE
    }

    /// Onset expressed as the first affected sample index.
    pub fn onset_sample(&self, sample_rate_hz: f64) -> usize {
        time_to_sample(self.onset_s, sample_rate_hz)
    }

    fn validate(&self) -> Result<()> {
        if !self.onset_s.is_finite() || self.onset_s < 0.0 {
            return config_err("onset_s must be a nonnegative finite time");
        }
        if let Some(clear) = self.clear_s {
            if !clear.is_finite() || clear <= self.onset_s {
                return config_err("clear_s must be later than onset_s");
            }
        }
        // 1.0 is admitted so that a zero-depth sag is expressible.
        if !(0.0..=1.0).contains(&self.retained_voltage_pu) {
            return config_err("retained_voltage_pu must lie in [0, 1]");
        }
        if !self.transient_gain.is_finite() || self.transient_gain < 0.0 {
            return config_err("transient_gain must be nonnegative");
        }
        if !(self.transient_freq_hz > 0.0) || !(self.transient_tau_s > 0.0) {
            return config_err("transient_freq_hz and transient_tau_s must be positive");
        }
        Ok(())
    }
}

/// Additive white Gaussian noise parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSpec {
    pub snr_db: Option<f64>,
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec { snr_db: None, seed: 1 }
    }
}

impl NoiseSpec {
    pub fn snr(snr_db: f64, seed: u64) -> Self {
        NoiseSpec { snr_db: Some(snr_db), seed }
    }
}

/// Sampled phase voltages (rows a, b, c) with an optional ground-truth label.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreePhaseRecord {
    pub sample_rate_hz: f64,
    pub phases: [Vec<f64>; 3],
    pub fault: Option<FaultSpec>,
}

impl ThreePhaseRecord {
    pub fn new(sample_rate_hz: f64, phases: [Vec<f64>; 3]) -> Result<Self> {
        let record = ThreePhaseRecord { sample_rate_hz, phases, fault: None };
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sample_rate_hz > 0.0) || !self.sample_rate_hz.is_finite() {
            return config_err("sample_rate_hz must be positive");
        }
        let n = self.phases[0].len();
        if self.phases.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("phase rows differ in length".into()));
        }
        if n < 2 {
            return Err(Error::Shape("record must contain at least 2 samples".into()));
        }
        if self.phases.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("record contains non-finite samples".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.phases[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases[0].is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.len() as f64 / self.sample_rate_hz
    }

    pub fn phase(&self, phase: Phase) -> &[f64] {
        &self.phases[phase.index()]
    }

    pub fn scaled(&self, factor: f64) -> ThreePhaseRecord {
        let mut out = self.clone();
        out.phases.iter_mut().flatten().for_each(|v| *v *= factor);
        out
    }
}

pub(crate) fn time_to_sample(t: f64, sample_rate_hz: f64) -> usize {
    (t * sample_rate_hz - TIME_EPS).ceil().max(0.0) as usize
}

/// Balanced sinusoidal record: row `p` is `A·sin(2π·f0·n/fs + φ_p)`.
pub fn generate_baseline(config: &WaveformConfig) -> Result<ThreePhaseRecord> {
    config.validate()?;
    let n = config.sample_count()?;
    let w = 2.0 * PI * config.fundamental_hz / config.sample_rate_hz;
    let phases = config.phase_offsets_rad.map(|offset| {
        (0..n).map(|i| config.amplitude_pu * (w * i as f64 + offset).sin()).collect()
    });
    Ok(ThreePhaseRecord { sample_rate_hz: config.sample_rate_hz, phases, fault: None })
}

/// Applies the sag-plus-burst fault envelope to the faulted phases.
pub fn inject_fault(record: &ThreePhaseRecord, fault: &FaultSpec) -> Result<ThreePhaseRecord> {
    fault.validate()?;
    let mut out = record.clone();
    if fault.is_none() {
        return Ok(out);
    }
    let fs = record.sample_rate_hz;
    let duration = record.duration_s();
    if fault.onset_s >= duration {
        return Err(Error::Bounds(format!(
            "fault onset {} s lies beyond the record end {} s",
            fault.onset_s, duration
        )));
    }
    if let Some(clear) = fault.clear_s {
        if clear > duration + TIME_EPS {
            return Err(Error::Bounds(format!(
                "fault clearing {clear} s lies beyond the record end {duration} s"
            )));
        }
    }
    let start = fault.onset_sample(fs);
    let end = fault.clear_s.map_or(record.len(), |c| time_to_sample(c, fs)).min(record.len());
    let w = 2.0 * PI * fault.transient_freq_hz;
    for &phase in fault.fault_type.phases() {
        let row = &mut out.phases[phase.index()];
        for (i, v) in row.iter_mut().enumerate().take(end).skip(start) {
            let dt = i as f64 / fs - fault.onset_s;
            let burst = fault.transient_gain * (-dt / fault.transient_tau_s).exp() * (w * dt).sin();
            *v = *v * fault.retained_voltage_pu + burst;
        }
    }
    out.fault = Some(fault.clone());
    Ok(out)
}

/// Adds white Gaussian noise to every row at `snr_db` relative to that row's
/// mean power. Rows are drawn in order a, b, c from one seeded stream.
pub fn add_noise(record: &ThreePhaseRecord, noise: &NoiseSpec) -> Result<ThreePhaseRecord> {
    let Some(snr_db) = noise.snr_db else {
        return Ok(record.clone());
    };
    if !snr_db.is_finite() {
        return config_err("snr_db must be finite");
    }
    if record.is_empty() {
        return Err(Error::Degenerate("cannot add noise to an empty record".into()));
    }
    let powers: Vec<f64> = record.phases.iter().map(|row| mean_square(row)).collect();
    if powers.iter().all(|&p| p == 0.0) {
        return Err(Error::Degenerate("record has zero power; SNR is undefined".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let mut out = record.clone();
    for (row, power) in out.phases.iter_mut().zip(powers) {
        let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
        if sigma == 0.0 {
            continue;
        }
        let normal = Normal::new(0.0, sigma).map_err(|e| Error::Numerical(e.to_string()))?;
        row.iter_mut().for_each(|v| *v += normal.sample(&mut rng));
    }
    Ok(out)
}

/// Returns `config` with its fundamental moved to `new_fundamental_hz`.
pub fn with_frequency_deviation(config: &WaveformConfig, new_fundamental_hz: f64) -> Result<WaveformConfig> {
    if !new_fundamental_hz.is_finite() || new_fundamental_hz <= 0.0 {
        return config_err("fundamental must be positive");
    }
    if 2.0 * new_fundamental_hz >= config.sample_rate_hz {
        return config_err(format!(
            "fundamental {new_fundamental_hz} Hz violates Nyquist at {} Hz",
            config.sample_rate_hz
        ));
    }
    Ok(WaveformConfig { fundamental_hz: new_fundamental_hz, ..config.clone() })
}

pub fn select_channel(record: &ThreePhaseRecord, phase: Phase) -> Trace {
    Trace::new(record.sample_rate_hz, record.phase(phase).to_vec())
}

/// Baseline, fault and noise in one call.
pub fn synthesize(config: &WaveformConfig, fault: &FaultSpec, noise: &NoiseSpec) -> Result<ThreePhaseRecord> {
    let record = inject_fault(&generate_baseline(config)?, fault)?;
    add_noise(&record, noise)
}

pub(crate) fn mean_square(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(duration_s: f64) -> WaveformConfig {
        WaveformConfig { duration_s, ..WaveformConfig::default() }
    }

    #[test]
    fn baseline_has_expected_shape_and_values() {
        let rec = generate_baseline(&cfg(0.2)).unwrap();
        assert_eq!(rec.len(), 400);
        assert!(rec.fault.is_none());
        for (p, offset) in [0.0, -2.0 * PI / 3.0, 2.0 * PI / 3.0].iter().enumerate() {
            for n in [0usize, 7, 133, 399] {
                let expect = (2.0 * PI * 50.0 * n as f64 / 2000.0 + offset).sin();
                assert!((rec.phases[p][n] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_amplitude_gives_zero_record() {
        let rec = generate_baseline(&WaveformConfig { amplitude_pu: 0.0, ..cfg(0.1) }).unwrap();
        assert!(rec.phases.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn one_cycle_is_periodic() {
        let c = cfg(0.02);
        let rec = generate_baseline(&c).unwrap();
        assert_eq!(rec.len(), 40);
        let w = 2.0 * PI * 50.0 / 2000.0;
        for (p, row) in rec.phases.iter().enumerate() {
            let next = (w * 40.0 + c.phase_offsets_rad[p]).sin();
            assert!((row[0] - next).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(generate_baseline(&WaveformConfig { sample_rate_hz: 0.0, ..cfg(0.2) }).is_err());
        assert!(generate_baseline(&cfg(-1.0)).is_err());
        assert!(generate_baseline(&cfg(0.0001)).is_err());
        assert!(generate_baseline(&cfg(0.20025)).is_err());
        assert!(generate_baseline(&WaveformConfig { fundamental_hz: 1000.0, ..cfg(0.2) }).is_err());
    }

    #[test]
    fn rows_are_shifted_by_a_third_of_a_cycle() {
        let c = WaveformConfig { sample_rate_hz: 3000.0, ..cfg(0.1) };
        let rec = generate_baseline(&c).unwrap();
        // 60 samples per cycle: b lags a by 20 samples, c lags b by 20.
        for n in 20..rec.len() {
            assert!((rec.phases[1][n] - rec.phases[0][n - 20]).abs() < 1e-12);
            assert!((rec.phases[2][n] - rec.phases[1][n - 20]).abs() < 1e-12);
        }
    }

    #[test]
    fn ag_fault_attenuates_only_phase_a_from_onset() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        let fault = FaultSpec::new(FaultType::AG, 0.065);
        let rec = inject_fault(&base, &fault).unwrap();
        assert_eq!(fault.onset_sample(2000.0), 130);
        assert_eq!(&rec.phases[0][..130], &base.phases[0][..130]);
        assert_ne!(rec.phases[0][131], base.phases[0][131]);
        assert_eq!(rec.phases[1], base.phases[1]);
        assert_eq!(rec.phases[2], base.phases[2]);
        assert_eq!(rec.fault.as_ref(), Some(&fault));
        // Far from onset the burst has decayed and only the sag remains.
        let n = 390;
        assert!((rec.phases[0][n] - 0.3 * base.phases[0][n]).abs() < 1e-6);
    }

    #[test]
    fn none_fault_is_identity_and_clearing_restores_waveform() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        assert_eq!(inject_fault(&base, &FaultSpec::none()).unwrap(), base);
        let rec = inject_fault(&base, &FaultSpec::new(FaultType::BC, 0.05).with_clear(0.1)).unwrap();
        assert_eq!(&rec.phases[1][200..], &base.phases[1][200..]);
        assert_ne!(&rec.phases[1][100..200], &base.phases[1][100..200]);
    }

    #[test]
    fn bolted_three_phase_fault_leaves_only_the_burst() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        let fault = FaultSpec { transient_gain: 0.0, ..FaultSpec::new(FaultType::ABC, 0.065).with_retained(0.0) };
        let rec = inject_fault(&base, &fault).unwrap();
        assert!(rec.phases.iter().all(|row| row[130..].iter().all(|&v| v == 0.0)));
        let with_burst = inject_fault(&base, &FaultSpec::new(FaultType::ABC, 0.065).with_retained(0.0)).unwrap();
        assert!(with_burst.phases[0][131].abs() > 0.0);
    }

    #[test]
    fn unit_retention_without_burst_is_identity() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        let fault = FaultSpec { transient_gain: 0.0, ..FaultSpec::new(FaultType::ABCG, 0.03).with_retained(1.0) };
        assert_eq!(inject_fault(&base, &fault).unwrap().phases, base.phases);
    }

    #[test]
    fn fault_bounds_are_checked() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        assert!(matches!(inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.3)), Err(Error::Bounds(_))));
        assert!(matches!(
            inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.1).with_clear(0.5)),
            Err(Error::Bounds(_))
        ));
        assert!(inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.1).with_clear(0.05)).is_err());
    }

    #[test]
    fn noise_hits_target_snr() {
        let base = generate_baseline(&WaveformConfig { duration_s: 2.0, ..cfg(2.0) }).unwrap();
        let noisy = add_noise(&base, &NoiseSpec::snr(20.0, 7)).unwrap();
        for p in 0..3 {
            let sig = mean_square(&base.phases[p]);
            let resid: Vec<f64> = noisy.phases[p].iter().zip(&base.phases[p]).map(|(a, b)| a - b).collect();
            let snr = 10.0 * (sig / mean_square(&resid)).log10();
            assert!((snr - 20.0).abs() < 0.5, "row {p}: {snr}");
        }
    }

    #[test]
    fn noise_identity_determinism_and_degenerate_input() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        assert_eq!(add_noise(&base, &NoiseSpec::default()).unwrap(), base);
        let a = add_noise(&base, &NoiseSpec::snr(20.0, 3)).unwrap();
        let b = add_noise(&base, &NoiseSpec::snr(20.0, 3)).unwrap();
        let c = add_noise(&base, &NoiseSpec::snr(20.0, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let zero = generate_baseline(&WaveformConfig { amplitude_pu: 0.0, ..cfg(0.2) }).unwrap();
        assert!(matches!(add_noise(&zero, &NoiseSpec::snr(20.0, 1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn frequency_deviation() {
        let c = WaveformConfig::default();
        let moved = with_frequency_deviation(&c, 50.5).unwrap();
        assert_eq!(moved.fundamental_hz, 50.5);
        assert_eq!(WaveformConfig { fundamental_hz: 50.0, ..moved.clone() }, c);
        assert_eq!(with_frequency_deviation(&c, 50.0).unwrap(), c);
        assert!(with_frequency_deviation(&c, 1200.0).is_err());
        assert!(with_frequency_deviation(&c, 0.0).is_err());
    }

    #[test]
    fn select_channel_projects_rows() {
        let base = generate_baseline(&cfg(0.2)).unwrap();
        let rec = inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.065)).unwrap();
        let a = select_channel(&base, Phase::A);
        assert_eq!(a.len(), 400);
        assert_eq!(a.sample_rate_hz, 2000.0);
        assert_eq!(a.samples[0], 0.0);
        assert_eq!(select_channel(&rec, Phase::B).samples, base.phases[1]);
    }

    #[test]
    fn names_parse() {
        assert_eq!("abcg".parse::<FaultType>().unwrap(), FaultType::ABCG);
        assert_eq!("B".parse::<Phase>().unwrap(), Phase::B);
        assert!("x".parse::<Phase>().is_err());
        assert!(FaultType::ABCG.involves(Phase::C));
        assert!(!FaultType::AB.involves(Phase::C));
    }
}
