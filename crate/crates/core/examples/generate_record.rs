// Synthesizes a faulted three-phase record, writes it as CSV plus sidecar
// JSON and reads it back.
//
//     cargo run --example generate_record [out-dir]

use std::path::PathBuf;

use faultwave::io;
use faultwave::prelude::*;

fn out_dir(name: &str) -> PathBuf {
    let dir = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join(name), PathBuf::from);
    std::fs::create_dir_all(&dir).expect("output directory");
    dir
}

fn main() -> faultwave::Result<()> {
    let waveform = WaveformConfig::default();
    let fault = FaultSpec::new(FaultType::AG, 0.065).with_clear(0.15);
    let noise = NoiseSpec { snr_db: Some(20.0), seed: 7 };
    let record = synthesize(&waveform, &fault, &noise)?;

    println!(
        "{} samples at {} Hz ({:.3} s), fault {} from {} s",
        record.len(),
        record.sample_rate_hz,
        record.duration_s(),
        fault.fault_type,
        fault.onset_s
    );
    for phase in Phase::ALL {
        let x = record.phase(phase);
        let rms = |r: std::ops::Range<usize>| (x[r.clone()].iter().map(|v| v * v).sum::<f64>() / r.len() as f64).sqrt();
        println!("  phase {phase}: rms before {:.3} pu, during {:.3} pu", rms(0..130), rms(140..300));
    }

    let path = out_dir("faultwave-generate").join("ag_20db.csv");
    io::save_record(&path, &record)?;
    let back = io::load_record(&path)?;
    assert_eq!(back.phases, record.phases);
    println!("wrote {} and {}", path.display(), io::sidecar_path(&path).display());
    Ok(())
}
