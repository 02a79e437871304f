//! Fault detection for three-phase power-system voltage records.
//!
//! The crate contains a synthetic record generator ([`signal_model`]), a db4
//! wavelet filter bank ([`dwt`]), DFT/STFT energy indices ([`spectral`]),
//! FastICA with a fault performance index ([`ica`]), the detectors built on
//! top of them ([`detect`]) and the file formats plus command-line front end
//! ([`io`], [`cli`]).
//!
//! ```
//! use faultwave::prelude::*;
//!
//! let record = synthesize(
//!     &WaveformConfig::default(),
//!     &FaultSpec::new(FaultType::AG, 0.065),
//!     &NoiseSpec::default(),
//! )?;
//! let report = wavelet_detect_record(&record, &DetectorConfig::default(), &Spans::default())?;
//! assert!(report.detected);
//! # Ok::<(), faultwave::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bound.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod detect;
pub mod dwt;
mod error;
pub mod ica;
pub mod io;
pub mod signal_model;
pub mod span;
pub mod spectral;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::detect::{
        detect_record, energy_detect_record, energy_table, ica_detect, wavelet_detect, wavelet_detect_record,
        DetectionReport, DetectorConfig, EnergySetup, EnergyTable, Method, ThresholdPolicy,
    };
    pub use crate::ica::{Contrast, Embedding, FastIcaOptions, PiConfig, Retain};
    pub use crate::signal_model::{
        add_noise, generate_baseline, inject_fault, select_channel, synthesize, with_frequency_deviation,
        FaultSpec, FaultType, NoiseSpec, Phase, ThreePhaseRecord, Trace, WaveformConfig,
    };
    pub use crate::span::{SampleSpan, Spans, TimeSpan};
    pub use crate::{Error, Result};
}
