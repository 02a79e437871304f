use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use faultwave::cli::{ReportFile, RunConfig};
use faultwave::io;
use faultwave::prelude::*;
use serde_json::json;
use tempfile::TempDir;

fn faultwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faultwave")).args(args).output().expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn config(dir: &Path, name: &str, value: serde_json::Value) -> PathBuf {
    write(dir, name, &value.to_string())
}

fn ag_config(dir: &Path, method: &str) -> PathBuf {
    config(
        dir,
        &format!("{method}.json"),
        json!({
            "scenario": "AG",
            "fault": { "fault_type": "AG", "onset_s": 0.065 },
            "noise": { "snr_db": 20.0, "seed": 11 },
            "detector": { "method": method }
        }),
    )
}

#[test]
fn generated_trace_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = ag_config(dir.path(), "wavelet");
    let csv = dir.path().join("ag.csv");
    let out = faultwave(&["generate", "--config", arg(&cfg), "--out", arg(&csv)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let expected = RunConfig::load(&cfg).unwrap().synthesize().unwrap();
    let back = io::load_record(&csv).unwrap();
    assert_eq!(back.sample_rate_hz, expected.sample_rate_hz);
    assert_eq!(back.fault, expected.fault);
    for (a, b) in back.phases.iter().zip(&expected.phases) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-9);
        }
    }
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,va,vb,vc\n"));
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("ag.json")).unwrap()).unwrap();
    assert_eq!(meta["sample_rate_hz"], 2000.0);
    assert_eq!(meta["fault"]["fault_type"], "AG");
}

#[test]
fn commands_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for method in ["wavelet", "ica", "energy_stft"] {
        let cfg = ag_config(dir.path(), method);
        let mut outputs = Vec::new();
        for run in 0..2 {
            let csv = dir.path().join(format!("{method}{run}.csv"));
            let report = dir.path().join(format!("{method}{run}.report.json"));
            assert!(faultwave(&["generate", "--config", arg(&cfg), "--out", arg(&csv)]).status.success());
            let out = faultwave(&["detect", "--in", arg(&csv), "--config", arg(&cfg), "--out", arg(&report)]);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            outputs.push([fs::read(&csv).unwrap(), fs::read(&report).unwrap(), fs::read(report.with_extension("csv")).unwrap()]);
        }
        assert_eq!(outputs[0], outputs[1], "{method}");
    }
}

#[test]
fn report_carries_the_materialized_config() {
    let dir = TempDir::new().unwrap();
    let cfg = ag_config(dir.path(), "ica");
    let csv = dir.path().join("ag.csv");
    let report = dir.path().join("report.json");
    assert!(faultwave(&["generate", "--config", arg(&cfg), "--out", arg(&csv)]).status.success());
    let out = faultwave(&["detect", "--in", arg(&csv), "--config", arg(&cfg), "--out", arg(&report)]);
    assert!(out.status.success());
    let parsed: ReportFile = io::read_json(&report).unwrap();
    assert_eq!(parsed.method, Method::Ica);
    assert!(parsed.detected);
    assert_eq!(parsed.scenario, "AG");
    assert_eq!(parsed.config.detector.threshold, ThresholdPolicy::Adaptive { k_sigma: 5.0 });
    let raw: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["method", "detected", "onset_sample", "onset_time_s", "threshold", "config", "scenario"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = faultwave(&["detect", "--in", arg(&missing), "--out", arg(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", r#"{"detector": {"level": "deep"}}"#);
    let out = faultwave(&["generate", "--config", arg(&bad), "--out", arg(&dir.path().join("x.csv"))]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("detector.level"), "{stderr}");

    let unknown = config(dir.path(), "unknown.json", json!({ "waveform": { "samplerate": 1.0 } }));
    let out = faultwave(&["generate", "--config", arg(&unknown), "--out", arg(&dir.path().join("x.csv"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("samplerate"));

    let empty = write(dir.path(), "empty.csv", "t,va,vb,vc\n");
    let out = faultwave(&["detect", "--in", arg(&empty), "--out", arg(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = faultwave(&["detect", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_errors_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let cfg = config(
        dir.path(),
        "short_config.json",
        json!({ "waveform": { "duration_s": 0.03 }, "detector": { "method": "ica" } }),
    );
    let csv = dir.path().join("short.csv");
    assert!(faultwave(&["generate", "--config", arg(&cfg), "--out", arg(&csv)]).status.success());
    let out = faultwave(&["detect", "--in", arg(&csv), "--config", arg(&cfg), "--out", arg(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn empty_suite_writes_a_header_only_table() {
    let dir = TempDir::new().unwrap();
    let suite = config(dir.path(), "suite.json", json!({ "scenarios": [] }));
    let table = dir.path().join("table.csv");
    let out = faultwave(&["energy-table", "--config", arg(&suite), "--out", arg(&table)]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&table).unwrap().trim_end(), "scenario,e_ft,e_stft,e_wt,det_ft,det_stft,det_wt,error");
}

#[test]
fn one_bad_scenario_does_not_sink_the_suite() {
    let dir = TempDir::new().unwrap();
    let mut scenarios: Vec<_> = ["AG", "BG", "CG", "AB", "ABC"]
        .iter()
        .map(|ft| json!({ "name": ft, "overrides": { "fault": { "fault_type": ft } } }))
        .collect();
    scenarios.insert(2, json!({ "name": "broken", "overrides": { "waveform": { "sample_rate_hz": -5.0 } } }));
    let suite = config(dir.path(), "suite.json", json!({ "scenarios": scenarios }));
    let table = dir.path().join("table.csv");
    let out = faultwave(&["energy-table", "--config", arg(&suite), "--out", arg(&table)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&table).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[3].starts_with("broken,") && lines[3].contains("sample_rate_hz"), "{}", lines[3]);
    for line in lines[1..].iter().filter(|l| !l.starts_with("broken")) {
        assert!(line.contains("true,true,true"), "{line}");
    }

    let all_bad = config(
        dir.path(),
        "bad_suite.json",
        json!({ "scenarios": [{ "name": "x", "overrides": { "waveform": { "duration_s": 0.0 } } }] }),
    );
    let out = faultwave(&["energy-table", "--config", arg(&all_bad), "--out", arg(&table)]);
    assert_eq!(out.status.code(), Some(3));

    let dup = config(dir.path(), "dup.json", json!({ "scenarios": [{ "name": "a" }, { "name": "a" }] }));
    let out = faultwave(&["energy-table", "--config", arg(&dup), "--out", arg(&table)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_data_pairs_voltage_and_index() {
    let dir = TempDir::new().unwrap();
    for (method, extra) in [("wavelet", "coefficients.csv"), ("ica", "model.json"), ("energy_ft", "")] {
        let cfg = ag_config(dir.path(), method);
        let csv = dir.path().join("ag.csv");
        let plots = dir.path().join(format!("plots-{method}"));
        assert!(faultwave(&["generate", "--config", arg(&cfg), "--out", arg(&csv)]).status.success());
        let out = faultwave(&["plot-data", "--in", arg(&csv), "--config", arg(&cfg), "--out", arg(&plots)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let times = |name: &str| -> Vec<String> {
            fs::read_to_string(plots.join(name)).unwrap().lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect()
        };
        let (v, i) = (times("voltage.csv"), times("index.csv"));
        assert!(!v.is_empty());
        assert_eq!(v, i, "{method}");
        assert!(plots.join("report.json").exists());
        if !extra.is_empty() {
            assert!(plots.join(extra).exists(), "{method}: {extra}");
        }
    }
}
