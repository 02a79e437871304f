mod common;

use std::f64::consts::PI;

use faultwave::prelude::*;
use faultwave::spectral::{dft, ft_energy_index, hann, stft};
use proptest::prelude::*;

/// Direct O(N²) one-sided DFT with the same √(c_k/N) scaling.
fn naive_magnitudes(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..=n / 2)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (i, v) in x.iter().enumerate() {
                let a = -2.0 * PI * (k * i) as f64 / n as f64;
                re += v * a.cos();
                im += v * a.sin();
            }
            let c = if k == 0 || (n.is_multiple_of(2) && k == n / 2) { 1.0 } else { 2.0 };
            (re * re + im * im).sqrt() * (c / n as f64).sqrt()
        })
        .collect()
}

#[test]
fn fft_matches_direct_sum() {
    for n in [64usize, 100, 129] {
        let x = common::seeded_trace(n as u64, n);
        let fast = dft(&x).unwrap();
        let slow = naive_magnitudes(&x.samples);
        assert_eq!(fast.magnitudes.len(), slow.len());
        for (a, b) in fast.magnitudes.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-9, "n={n}: {a} vs {b}");
        }
        assert!((fast.bin_hz - 2000.0 / n as f64).abs() < 1e-12);
    }
}

#[test]
fn tone_lands_in_its_bin() {
    let x = Trace::new(2000.0, (0..400).map(|i| (2.0 * PI * 250.0 * i as f64 / 2000.0).sin()).collect());
    let s = dft(&x).unwrap();
    let peak = (0..s.magnitudes.len()).max_by(|&a, &b| s.magnitudes[a].total_cmp(&s.magnitudes[b])).unwrap();
    assert!((s.bin_frequency(peak) - 250.0).abs() < 1e-9);
    // Unit-amplitude tone carries N/2 of energy, all in one bin.
    assert!((s.magnitudes[peak].powi(2) - 200.0).abs() < 1e-8);
}

#[test]
fn hann_is_periodic() {
    let w = hann(8);
    assert_eq!(w[0], 0.0);
    assert!((w[4] - 1.0).abs() < 1e-15);
    assert!((w[1] - w[7]).abs() < 1e-15);
}

#[test]
fn stft_frames_and_times() {
    let x = common::seeded_trace(5, 400);
    let sg = stft(&x, 64, 16).unwrap();
    assert_eq!(sg.frames.len(), (400 - 64) / 16 + 1);
    assert!(sg.frames.iter().all(|f| f.len() == 33));
    assert!((sg.frame_times_s[0] - 32.0 / 2000.0).abs() < 1e-15);
    assert_eq!(sg.frame_span(2), SampleSpan::new(32, 96));
    assert!(stft(&x, 500, 16).is_err());
    assert!(stft(&x, 64, 0).is_err());
}

#[test]
fn cutoff_outside_band_is_rejected() {
    let x = common::seeded_trace(1, 200);
    assert!(ft_energy_index(&x, 0.0, SampleSpan::new(0, 80)).is_err());
    assert!(ft_energy_index(&x, 1000.0, SampleSpan::new(0, 80)).is_err());
    assert!(ft_energy_index(&x, 150.0, SampleSpan::new(150, 250)).is_err());
}

#[test]
fn stft_index_counts_intersecting_frames() {
    let x = common::seeded_trace(8, 256);
    let sg = stft(&x, 32, 16).unwrap();
    let per = sg.frame_highband_energy(150.0).unwrap();
    // [40, 72) meets frames starting at 16, 32, 48, 64.
    let expected = (per[1] + per[2] + per[3] + per[4]) / 32.0;
    let got = sg.highband_energy_index(150.0, SampleSpan::new(40, 72)).unwrap();
    assert!((got - expected).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval_holds(seed in any::<u64>()) {
        let x = common::seeded_trace(seed, 1024);
        let energy: f64 = x.samples.iter().map(|v| v * v).sum();
        let s = dft(&x).unwrap();
        prop_assert!((s.energy() - energy).abs() <= 1e-9 * energy);
    }

    #[test]
    fn shifting_by_hop_shifts_frames(seed in any::<u64>(), hops in 1usize..5) {
        let hop = 16;
        let x = common::seeded_trace(seed, 512);
        let shifted = Trace::new(2000.0, x.samples[hops * hop..].to_vec());
        let a = stft(&x, 64, hop).unwrap();
        let b = stft(&shifted, 64, hop).unwrap();
        for (f, frame) in b.frames.iter().enumerate() {
            for (u, v) in frame.iter().zip(&a.frames[f + hops]) {
                prop_assert!((u - v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn raising_the_cutoff_never_adds_energy(seed in any::<u64>(), lo in 10.0f64..900.0, step in 0.0f64..90.0) {
        let x = common::seeded_trace(seed, 160);
        let span = SampleSpan::new(20, 140);
        let a = ft_energy_index(&x, lo, span).unwrap();
        let b = ft_energy_index(&x, (lo + step).min(999.0), span).unwrap();
        prop_assert!(b <= a + 1e-15);
    }
}
