//! File formats: trace CSV with a JSON sidecar, index-series CSV and the
//! ICA model dump. Every writer goes through [`write_atomic`].

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::detect::IndexSeries;
use crate::error::{Error, Result};
use crate::ica::{Contrast, FittedIca};
use crate::signal_model::{FaultSpec, ThreePhaseRecord};

pub const TRACE_HEADER: &str = "t,va,vb,vc";

/// Relative disagreement tolerated between the sidecar sample rate and the
/// one implied by the time column.
const RATE_TOLERANCE: f64 = 1e-6;

/// Writes through a temporary file in the target directory, then renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("{} is not a file path", path.display())))?
        .to_string_lossy()
        .into_owned();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut out = BufWriter::new(File::create(&tmp)?);
        body(&mut out)?;
        out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Sidecar metadata stored next to a trace CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordMeta {
    pub sample_rate_hz: f64,
    #[serde(default)]
    pub fault: Option<FaultSpec>,
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

pub fn write_trace_csv<W: Write + ?Sized>(record: &ThreePhaseRecord, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    let [a, b, c] = &record.phases;
    for i in 0..record.len() {
        let t = i as f64 / record.sample_rate_hz;
        writeln!(out, "{t:.12e},{},{},{}", a[i], b[i], c[i])?;
    }
    Ok(())
}

/// Parses a trace CSV. The sample rate comes from the time column, so at
/// least two rows are required.
pub fn read_trace_csv<R: Read>(input: R) -> Result<ThreePhaseRecord> {
    let mut lines = BufReader::new(input).lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::Parse("trace file is empty".into())),
    };
    if header.trim() != TRACE_HEADER {
        return Err(Error::Parse(format!("expected header `{TRACE_HEADER}`, found `{}`", header.trim())));
    }
    let mut t = Vec::new();
    let mut phases: [Vec<f64>; 3] = Default::default();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 fields, found {}", i + 1, fields.len())));
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: `{s}`: {e}", i + 1)))
        };
        t.push(parse(fields[0])?);
        for (row, field) in phases.iter_mut().zip(&fields[1..]) {
            row.push(parse(field)?);
        }
    }
    if t.len() < 2 {
        return Err(Error::Shape(format!("trace has {} samples; at least 2 are needed", t.len())));
    }
    let span = t[t.len() - 1] - t[0];
    if !(span > 0.0) {
        return Err(Error::Parse("time column is not increasing".into()));
    }
    let sample_rate_hz = (t.len() - 1) as f64 / span;
    ThreePhaseRecord::new(sample_rate_hz, phases)
}

/// Writes `path` (CSV) and its sidecar JSON.
pub fn save_record(path: &Path, record: &ThreePhaseRecord) -> Result<()> {
    record.validate()?;
    write_atomic(path, |out| write_trace_csv(record, out))?;
    let meta = RecordMeta { sample_rate_hz: record.sample_rate_hz, fault: record.fault.clone() };
    write_json(&sidecar_path(path), &meta)
}

/// Reads a trace CSV; when a sidecar exists its exact sample rate and fault
/// label are used after checking them against the time column.
pub fn load_record(path: &Path) -> Result<ThreePhaseRecord> {
    let file = File::open(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let mut record = read_trace_csv(file)?;
    let meta_path = sidecar_path(path);
    if meta_path.exists() {
        let meta: RecordMeta = read_json(&meta_path)?;
        let rel = (meta.sample_rate_hz - record.sample_rate_hz).abs() / meta.sample_rate_hz;
        if !(rel <= RATE_TOLERANCE) {
            return Err(Error::Parse(format!(
                "sidecar sample rate {} Hz disagrees with the time column ({} Hz)",
                meta.sample_rate_hz, record.sample_rate_hz
            )));
        }
        record.sample_rate_hz = meta.sample_rate_hz;
        record.fault = meta.fault;
    }
    Ok(record)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    write_atomic(path, |out| writeln!(out, "{text}"))
}

/// Deserializes JSON, naming the offending key on failure.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    parse_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        if key == "." {
            Error::Parse(e.inner().to_string())
        } else {
            Error::Parse(format!("at `{key}`: {}", e.inner()))
        }
    })
}

pub fn save_index(path: &Path, series: &IndexSeries, column: &str) -> Result<()> {
    write_atomic(path, |out| series.write_csv(out, column))
}

/// JSON dump of a fitted ICA model; matrices are row-major nested arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDump {
    pub mean: Vec<f64>,
    pub projection: Vec<Vec<f64>>,
    #[serde(rename = "W")]
    pub unmixing: Vec<Vec<f64>>,
    pub contrast: Contrast,
    pub seed: u64,
    pub converged: bool,
    pub iterations: usize,
}

impl From<&FittedIca> for ModelDump {
    fn from(fitted: &FittedIca) -> Self {
        let rows = |m: &nalgebra::DMatrix<f64>| {
            m.row_iter().map(|r| r.iter().copied().collect()).collect::<Vec<Vec<f64>>>()
        };
        ModelDump {
            mean: fitted.whitening.mean.iter().copied().collect(),
            projection: rows(&fitted.whitening.projection),
            unmixing: rows(&fitted.model.unmixing),
            contrast: fitted.model.contrast,
            seed: fitted.model.seed,
            converged: fitted.model.converged,
            iterations: fitted.model.iterations_used,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal_model::{synthesize, FaultType, NoiseSpec, WaveformConfig};

    #[test]
    fn csv_round_trip_is_exact() {
        let rec = synthesize(
            &WaveformConfig::default(),
            &FaultSpec::new(FaultType::AB, 0.065),
            &NoiseSpec { snr_db: Some(20.0), seed: 3 },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&rec, &mut buf).unwrap();
        let back = read_trace_csv(buf.as_slice()).unwrap();
        assert_eq!(back.phases, rec.phases);
        assert!((back.sample_rate_hz - 2000.0).abs() < 1e-6);
    }

    #[test]
    fn malformed_traces_are_rejected() {
        assert!(matches!(read_trace_csv("".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(read_trace_csv("t,va,vb,vc\n".as_bytes()), Err(Error::Shape(_))));
        assert!(matches!(read_trace_csv("t,va\n0,1\n".as_bytes()), Err(Error::Parse(_))));
        let bad = "t,va,vb,vc\n0,1,2,3\n0.1,x,2,3\n";
        let err = read_trace_csv(bad.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn json_errors_name_the_key() {
        let err = parse_json::<WaveformConfig>(r#"{"sample_rate_hz": "fast"}"#).unwrap_err().to_string();
        assert!(err.contains("sample_rate_hz"), "{err}");
    }
}
