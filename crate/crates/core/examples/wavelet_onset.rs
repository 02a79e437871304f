// db4 decomposition of a faulted phase, then onset localization with the
// wavelet detector under the three operating conditions.
//
//     cargo run --example wavelet_onset

use faultwave::dwt;
use faultwave::prelude::*;

fn main() -> faultwave::Result<()> {
    let record = synthesize(&WaveformConfig::default(), &FaultSpec::new(FaultType::AG, 0.065), &NoiseSpec::default())?;
    let trace = select_channel(&record, Phase::A);
    let tree = dwt::dwt_decompose(&trace, 3)?;
    println!("energy of phase a {:.4}, of its coefficients {:.4}", trace.samples.iter().map(|v| v * v).sum::<f64>(), tree.energy());
    for level in 1..=3 {
        let d = tree.detail(level)?;
        let (k, peak) = d.iter().enumerate().fold((0, 0.0), |acc, (k, v)| if v.abs() > acc.1 { (k, v.abs()) } else { acc });
        let (start, len) = dwt::coefficient_support(level, k);
        println!("  d{level}: {} coefficients, largest |d| = {peak:.3} covering samples {start}..{}", d.len(), start + len);
    }

    let spans = Spans::default();
    let cfg = DetectorConfig::default();
    println!("\nfault  condition  onset (s)  channel");
    for fault_type in [FaultType::AG, FaultType::AB, FaultType::ABCG] {
        for (label, f0, snr) in [("clean", 50.0, None), ("20 dB", 50.0, Some(20.0)), ("49.5 Hz", 49.5, None)] {
            let waveform = WaveformConfig { fundamental_hz: f0, ..WaveformConfig::default() };
            let record = synthesize(&waveform, &FaultSpec::new(fault_type, 0.065), &NoiseSpec { snr_db: snr, seed: 1 })?;
            let report = wavelet_detect_record(&record, &cfg, &spans)?;
            let onset = report.onset_time_s.map_or("-".to_string(), |t| format!("{t:.4}"));
            let channel = report.channel.map_or("-".to_string(), |p| p.to_string());
            println!("{:<6} {label:<10} {onset:<10} {channel}", fault_type.to_string());
        }
    }
    Ok(())
}
