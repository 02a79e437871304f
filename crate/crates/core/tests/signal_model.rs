mod common;

use faultwave::prelude::*;
use proptest::prelude::*;

fn power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

#[test]
fn none_fault_leaves_the_record_alone() {
    let base = generate_baseline(&WaveformConfig::default()).unwrap();
    let once = inject_fault(&base, &FaultSpec::none()).unwrap();
    assert_eq!(once.phases, base.phases);
    assert_eq!(inject_fault(&once, &FaultSpec::none()).unwrap().phases, base.phases);
}

#[test]
fn zero_depth_sag_without_burst_is_identity() {
    let base = generate_baseline(&WaveformConfig::default()).unwrap();
    for ft in FaultType::TABLE {
        let spec = FaultSpec { transient_gain: 0.0, ..FaultSpec::new(ft, 0.065).with_retained(1.0) };
        assert_eq!(inject_fault(&base, &spec).unwrap().phases, base.phases, "{ft}");
    }
}

#[test]
fn faults_touch_only_their_phases() {
    let base = generate_baseline(&WaveformConfig::default()).unwrap();
    for ft in FaultType::TABLE {
        let rec = inject_fault(&base, &FaultSpec::new(ft, 0.065)).unwrap();
        for phase in Phase::ALL {
            let same = rec.phase(phase) == base.phase(phase);
            assert_eq!(same, !ft.involves(phase), "{ft} {phase:?}");
        }
        let onset = 130;
        for phase in ft.phases() {
            assert_eq!(&rec.phase(*phase)[..onset], &base.phase(*phase)[..onset]);
        }
    }
}

#[test]
fn noise_hits_the_requested_snr() {
    let cfg = WaveformConfig { duration_s: 2.0, ..WaveformConfig::default() };
    let clean = generate_baseline(&cfg).unwrap();
    for seed in 0..5 {
        let noisy = add_noise(&clean, &NoiseSpec::snr(20.0, seed)).unwrap();
        for phase in Phase::ALL {
            let s = clean.phase(phase);
            let n: Vec<f64> = noisy.phase(phase).iter().zip(s).map(|(a, b)| a - b).collect();
            let snr = 10.0 * (power(s) / power(&n)).log10();
            assert!((snr - 20.0).abs() <= 0.5, "seed {seed}: {snr}");
        }
        assert_eq!(noisy, add_noise(&clean, &NoiseSpec::snr(20.0, seed)).unwrap());
    }
}

#[test]
fn phases_are_a_third_of_a_cycle_apart() {
    let cfg = WaveformConfig { sample_rate_hz: 3000.0, ..WaveformConfig::default() };
    let rec = generate_baseline(&cfg).unwrap();
    let shift = 20;
    for k in shift..rec.len() {
        assert!((rec.phases[1][k] - rec.phases[0][k - shift]).abs() < 1e-12);
        assert!((rec.phases[2][k] - rec.phases[1][k - shift]).abs() < 1e-12);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = [
        WaveformConfig { sample_rate_hz: 0.0, ..WaveformConfig::default() },
        WaveformConfig { fundamental_hz: 1500.0, ..WaveformConfig::default() },
        WaveformConfig { duration_s: f64::NAN, ..WaveformConfig::default() },
    ];
    for cfg in bad {
        assert!(generate_baseline(&cfg).is_err(), "{cfg:?}");
    }
    let base = generate_baseline(&WaveformConfig::default()).unwrap();
    assert!(inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.065).with_retained(1.5)).is_err());
    assert!(inject_fault(&base, &FaultSpec::new(FaultType::AG, 0.065).with_clear(0.05)).is_err());
    assert!(add_noise(&base, &NoiseSpec::snr(f64::INFINITY, 1)).is_err());
}

#[test]
fn frequency_deviation_only_moves_the_fundamental() {
    let base = WaveformConfig::default();
    let moved = with_frequency_deviation(&base, 49.5).unwrap();
    assert_eq!(moved.fundamental_hz, 49.5);
    assert_eq!(moved.sample_rate_hz, base.sample_rate_hz);
    assert!(with_frequency_deviation(&base, -1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn synthesis_is_pure(seed in any::<u64>(), ft in prop::sample::select(FaultType::TABLE.to_vec())) {
        let a = common::record(ft, 50.0, Some(20.0), seed);
        let b = common::record(ft, 50.0, Some(20.0), seed);
        prop_assert_eq!(a, b);
    }
}
