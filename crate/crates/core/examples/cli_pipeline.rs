// generate -> detect -> plot-data through the same functions the binary
// calls, in a scratch directory.
//
//     cargo run --example cli_pipeline [out-dir]

use std::path::PathBuf;

use faultwave::cli::{self, RunConfig};
use faultwave::io;
use faultwave::prelude::{DetectorConfig, FaultSpec, FaultType, Method, NoiseSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("faultwave-pipeline"), PathBuf::from);
    std::fs::create_dir_all(&dir)?;

    for method in [Method::Wavelet, Method::Ica, Method::EnergyStft] {
        let config = RunConfig {
            fault: FaultSpec::new(FaultType::AG, 0.065),
            noise: NoiseSpec { snr_db: None, seed: 11 },
            detector: DetectorConfig::for_method(method),
            ..RunConfig::default()
        };
        let config_path = dir.join(format!("{}_config.json", method.name()));
        io::write_json(&config_path, &config)?;

        let trace = dir.join("ag_trace.csv");
        cli::cmd_generate(Some(&config_path), &trace)?;
        let report = cli::cmd_detect(&trace, Some(&config_path), &dir.join(format!("{}_report.json", method.name())))?;
        let plots = cli::cmd_plot_data(&trace, Some(&config_path), &dir.join(format!("{}_plot", method.name())))?;
        println!(
            "{:<12} detected {} at {:?} s; plot data in {}",
            method.name(),
            report.detected,
            report.onset_time_s,
            plots.index.parent().unwrap().display()
        );
    }

    match cli::cmd_detect(&dir.join("missing.csv"), None, &dir.join("r.json")) {
        Err(e) => println!("missing trace: exit {} ({e})", e.code),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
