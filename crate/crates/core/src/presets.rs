//! The two three-oscillator experiments: multiplicative control with model
//! mismatch and measurement noise, and its additive-control counterpart.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::flatness::{ReferencePlan, SyncFunction, DEFAULT_SETTLE_TOL};
use crate::heol::{DEFAULT_ALPHA_FLOOR, DEFAULT_WINDOW};
use crate::model::{ControlMode, NetworkModel, UncertaintySet};
use crate::sim::{FeedbackMode, SimulationConfig};

pub const PAPER_MULTIPLICATIVE: &str = "paper-multiplicative";
pub const PAPER_ADDITIVE: &str = "paper-additive";
pub const PRESET_NAMES: [&str; 2] = [PAPER_MULTIPLICATIVE, PAPER_ADDITIVE];

pub const DEFAULT_SEED: u64 = 1;

/// `f(t) = 2 sin(0.5 t) + 7.5 t + 7`.
pub fn preset_sync() -> SyncFunction {
    SyncFunction {
        linear_rate: 7.5,
        offset: 7.0,
        sine_amplitude: 2.0,
        sine_frequency: 0.5,
        sine_phase: 0.0,
    }
}

/// Frequency, coupling and initial-phase multipliers of the mismatched plant.
pub fn preset_uncertainty() -> UncertaintySet {
    UncertaintySet {
        freq_scale: vec![1.2, 0.8, 1.2],
        coupling_scale: 0.8,
        init_scale: vec![0.8, 1.2, 0.8],
    }
}

fn three_oscillator(mode: ControlMode, offsets: Vec<f64>) -> SimulationConfig {
    let nominal_phases = vec![0.5, 1.0, 2.0];
    let model =
        NetworkModel::all_to_all(vec![5.0, 7.0, 8.0], 1.0, mode).expect("preset network is valid");
    let plan = ReferencePlan::from_initial_phases(
        preset_sync(),
        offsets,
        1.0,
        &nominal_phases,
        DEFAULT_SETTLE_TOL,
    )
    .expect("preset plan is valid");
    SimulationConfig {
        model,
        uncertainty: preset_uncertainty(),
        plan,
        sampling_period: 0.01,
        horizon: 40.0,
        noise_std: 0.1,
        kp: vec![1.0; 3],
        window_horizon: DEFAULT_WINDOW,
        alpha_floor: DEFAULT_ALPHA_FLOOR,
        seed: DEFAULT_SEED,
        initial_phases: nominal_phases,
        feedback: FeedbackMode::Closed,
        force: false,
    }
}

pub fn paper_multiplicative() -> SimulationConfig {
    three_oscillator(ControlMode::Multiplicative, vec![PI / 2.0, PI / 2.0, PI])
}

pub fn paper_additive() -> SimulationConfig {
    three_oscillator(ControlMode::Additive, vec![PI / 2.0; 3])
}

pub fn preset(name: &str) -> Result<SimulationConfig> {
    match name {
        PAPER_MULTIPLICATIVE => Ok(paper_multiplicative()),
        PAPER_ADDITIVE => Ok(paper_additive()),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
