use thiserror::Error;

use crate::flatness::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the model, planner, controller and simulator.
///
/// Oscillator indices are stored 0-based and displayed 1-based, matching
/// the labels used in scenario files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("oscillator index {index} out of range for a network of {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error(
        "singular reference at t = {time}: coupling denominator of oscillator {} is {denominator:e}",
        oscillator + 1
    )]
    Singular {
        oscillator: usize,
        time: f64,
        denominator: f64,
    },

    #[error("no settling time found within {limit} s")]
    Infeasible { limit: f64 },

    #[error("run refused: reference plan has {} violation(s)", report.violations.len())]
    Refused { report: ValidationReport },

    #[error("simulation diverged at t = {time} (oscillator {})", oscillator + 1)]
    Diverged { time: f64, oscillator: usize },

    #[error("unknown preset `{0}` (valid: paper-multiplicative, paper-additive)")]
    UnknownPreset(String),
}

pub(crate) fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
