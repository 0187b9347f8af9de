//! Command-line front end: scenario files, CSV traces, SVG figures and
//! metrics for the Kuramoto HEOL simulator.

pub mod commands;
pub mod expr;
pub mod output;
pub mod scenario;
pub mod svg;

pub use commands::{CliError, Overrides, Source};
