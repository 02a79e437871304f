// One-sided DFT and Hann STFT of a faulted phase and the high-band energy
// indices the FT and STFT detectors are built on.
//
//     cargo run --example spectral_energy

use faultwave::prelude::*;
use faultwave::spectral;

fn main() -> faultwave::Result<()> {
    let record = synthesize(&WaveformConfig::default(), &FaultSpec::new(FaultType::AG, 0.065), &NoiseSpec::default())?;
    let trace = select_channel(&record, Phase::A);

    let spectrum = spectral::dft(&trace)?;
    println!(
        "DFT: {} bins of {} Hz, energy {:.4} (time domain {:.4})",
        spectrum.magnitudes.len(),
        spectrum.bin_hz,
        spectrum.energy(),
        trace.samples.iter().map(|v| v * v).sum::<f64>()
    );

    let gram = spectral::stft(&trace, 64, 16)?;
    let per_frame = gram.frame_highband_energy(150.0)?;
    println!("STFT: {} frames, high-band (>= 150 Hz) energy per frame:", gram.frames.len());
    for (t, e) in gram.frame_times_s.iter().zip(&per_frame) {
        println!("  {t:.3} s {e:>10.6} {}", "#".repeat((e * 200.0).round().min(60.0) as usize));
    }

    // FT spans hold whole cycles so the fundamental does not leak. STFT
    // frames reach 63 samples past a span, so its "before" span ends early.
    let before = (SampleSpan::new(40, 120), SampleSpan::new(0, 64));
    let after = (SampleSpan::new(130, 210), SampleSpan::new(130, 194));
    for (label, (ft_span, stft_span)) in [("before", before), ("after", after)] {
        println!(
            "{label} onset: FT index {:.3e}, STFT index {:.3e}",
            spectral::ft_energy_index(&trace, 150.0, ft_span)?,
            gram.highband_energy_index(150.0, stft_span)?
        );
    }
    Ok(())
}
