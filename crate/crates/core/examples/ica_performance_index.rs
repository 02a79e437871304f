// FastICA on the three phase voltages and the fault performance index built
// from a tiled pre-fault template.
//
//     cargo run --example ica_performance_index

use faultwave::ica;
use faultwave::prelude::*;

fn main() -> faultwave::Result<()> {
    let spans = Spans::default();
    let config = PiConfig::default();
    for (label, snr) in [("clean", None), ("20 dB", Some(20.0))] {
        let record = synthesize(&WaveformConfig::default(), &FaultSpec::new(FaultType::AG, 0.065), &NoiseSpec { snr_db: snr, seed: 2 })?;
        let resolved = spans.resolve(record.sample_rate_hz, record.len());
        let pi = ica::performance_index(&record, resolved.prefault, resolved.analysis, &config)?;
        let onset = 130 - pi.start_sample;
        let before = pi.values[..onset].iter().sum::<f64>() / onset as f64;
        let peak = pi.values.iter().cloned().fold(0.0, f64::max);
        println!(
            "{label}: period {:.3} samples, {} components kept, converged {} after {} iterations",
            pi.period_samples,
            pi.fitted.whitening.eigenvalues.len(),
            pi.fitted.model.converged,
            pi.fitted.model.iterations_used
        );
        println!("  mean PI before onset {before:.4}, peak {peak:.3}, ratio {:.4}", before / peak);

        let report = ica_detect(&record, &DetectorConfig::for_method(Method::Ica), &config, &spans)?;
        println!("  threshold {:.4}, onset {:?} s", report.threshold_used, report.onset_time_s);
    }

    // No fault at an off-nominal fundamental: the template follows the
    // estimated period, so the index stays flat.
    let waveform = WaveformConfig { fundamental_hz: 50.5, ..WaveformConfig::default() };
    let record = synthesize(&waveform, &FaultSpec::none(), &NoiseSpec::default())?;
    let report = ica_detect(&record, &DetectorConfig::for_method(Method::Ica), &config, &spans)?;
    println!("no fault at 50.5 Hz: detected {}", report.detected);
    Ok(())
}
