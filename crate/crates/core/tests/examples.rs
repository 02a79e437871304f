// Runs every example binary that cargo built alongside the tests.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 6] = [
    "generate_record",
    "wavelet_onset",
    "ica_performance_index",
    "spectral_energy",
    "energy_table",
    "cli_pipeline",
];

fn example_path(name: &str) -> PathBuf {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_faultwave"));
    let dir = bin.parent().unwrap().join("examples");
    dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

#[test]
fn examples_run() {
    let scratch = tempfile::TempDir::new().unwrap();
    for name in EXAMPLES {
        let path = example_path(name);
        if !path.exists() {
            eprintln!("skipping {name}: not built");
            continue;
        }
        let out = Command::new(&path).arg(scratch.path()).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
