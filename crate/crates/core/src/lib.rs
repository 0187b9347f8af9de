//! Synchronization of Kuramoto oscillator networks by flatness-based
//! reference generation and HEOL closed-loop correction.
//!
//! * [`model`]: the network plant, multiplicative or additive control.
//! * [`flatness`]: reference phases, flat inversion for `u*`, feasibility checks.
//! * [`heol`]: homeostat gain, algebraic estimator of `F`, intelligent P controller.
//! * [`sim`]: sampled closed-loop runs and synchronization metrics.
//! * [`presets`]: the three-oscillator experiments.

pub mod error;
pub mod flatness;
pub mod heol;
pub mod model;
pub mod presets;
pub mod sim;

pub use error::{Error, Result};
pub use flatness::{
    nominal_control, solve_g, validate_plan, Condition, FilterSample, ReferencePlan,
    ReferenceState, SyncFunction, ValidationReport, Violation, DENOM_EPSILON,
};
pub use heol::{alpha, ip_control, ControllerState, Correction, EstimatorWindow, WindowSample};
pub use model::{ControlMode, NetworkModel, UncertaintySet};
pub use sim::{
    metrics, run, Event, EventKind, FeedbackMode, SimulationConfig, SimulationTrace, Simulator,
    SyncMetrics, TraceRow,
};
