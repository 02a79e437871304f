use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal_model::time_to_sample;

/// Half-open range of sample indices `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpan {
    pub start: usize,
    pub end: usize,
}

impl SampleSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SampleSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn contains(&self, sample: usize) -> bool {
        (self.start..self.end).contains(&sample)
    }

    pub fn intersect(&self, other: SampleSpan) -> SampleSpan {
        let start = self.start.max(other.start);
        SampleSpan { start, end: self.end.min(other.end).max(start) }
    }

    pub(crate) fn check_within(&self, len: usize, what: &str) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Bounds(format!("{what} span is empty")));
        }
        if self.end > len {
            return Err(Error::Bounds(format!(
                "{what} span [{}, {}) exceeds record length {len}",
                self.start, self.end
            )));
        }
        Ok(())
    }
}

/// Span in seconds as written in configuration files. A missing `end_s`
/// extends to the end of the record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpan {
    pub start_s: f64,
    #[serde(default)]
    pub end_s: Option<f64>,
}

impl TimeSpan {
    pub fn new(start_s: f64, end_s: Option<f64>) -> Self {
        TimeSpan { start_s, end_s }
    }

    pub fn to_samples(&self, sample_rate_hz: f64, len: usize) -> SampleSpan {
        let start = time_to_sample(self.start_s, sample_rate_hz).min(len);
        let end = self.end_s.map_or(len, |e| time_to_sample(e, sample_rate_hz)).min(len);
        SampleSpan::new(start, end.max(start))
    }
}

/// The three spans every detector works with.
///
/// `prefault` supplies the normal template for the performance index,
/// `calibration` is assumed fault-free and sets adaptive thresholds, and
/// `analysis` is where onsets are searched for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Spans {
    pub prefault: TimeSpan,
    pub calibration: TimeSpan,
    pub analysis: TimeSpan,
}

impl Default for Spans {
    fn default() -> Self {
        Spans {
            prefault: TimeSpan::new(0.0, Some(0.04)),
            calibration: TimeSpan::new(0.0, Some(0.06)),
            analysis: TimeSpan::new(0.04, None),
        }
    }
}

/// [`Spans`] resolved against a concrete record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedSpans {
    pub prefault: SampleSpan,
    pub calibration: SampleSpan,
    pub analysis: SampleSpan,
}

impl Spans {
    pub fn resolve(&self, sample_rate_hz: f64, len: usize) -> ResolvedSpans {
        ResolvedSpans {
            prefault: self.prefault.to_samples(sample_rate_hz, len),
            calibration: self.calibration.to_samples(sample_rate_hz, len),
            analysis: self.analysis.to_samples(sample_rate_hz, len),
        }
    }
}
