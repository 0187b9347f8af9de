//! Scenario files.
//!
//! A scenario is a TOML document with the sections `[network]`,
//! `[uncertainty]`, `[trajectory]` (plus `[trajectory.sync]`), `[controller]`,
//! `[simulation]` and `[output]`. Oscillator vectors are listed in label order
//! 1..N. Any number may also be written as a string expression over `pi`,
//! e.g. `offsets = ["pi/2", "pi/2", "pi"]`. Unknown keys are rejected.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use kuramoto_heol::flatness::DEFAULT_SETTLE_TOL;
use kuramoto_heol::heol::{DEFAULT_ALPHA_FLOOR, DEFAULT_WINDOW};
use kuramoto_heol::presets::DEFAULT_SEED;
use kuramoto_heol::{
    ControlMode, FeedbackMode, NetworkModel, ReferencePlan, SimulationConfig, SyncFunction,
    UncertaintySet,
};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
}

/// A scenario number: a TOML float/integer or a string expression.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Num(f64);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NumVisitor;
        impl Visitor<'_> for NumVisitor {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or an expression string such as \"pi/2\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                crate::expr::eval(v).map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(NumVisitor)
    }
}

fn values(v: &[Num]) -> Vec<f64> {
    v.iter().map(|n| n.0).collect()
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Multiplicative,
    Additive,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Feedback {
    Closed,
    Open,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Gains {
    Uniform(Num),
    PerOscillator(Vec<Num>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    network: NetworkSection,
    uncertainty: Option<UncertaintySection>,
    trajectory: TrajectorySection,
    #[serde(default)]
    controller: ControllerSection,
    simulation: SimulationSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkSection {
    mode: Mode,
    omega: Vec<Num>,
    coupling: Num,
    adjacency: Option<Vec<Vec<Num>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UncertaintySection {
    freq_scale: Option<Vec<Num>>,
    coupling_scale: Option<Num>,
    init_scale: Option<Vec<Num>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrajectorySection {
    offsets: Vec<Num>,
    tau: Num,
    settle_tol: Option<Num>,
    sync: SyncSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SyncSection {
    linear_rate: Num,
    offset: Num,
    sine_amplitude: Num,
    sine_frequency: Num,
    sine_phase: Option<Num>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControllerSection {
    kp: Option<Gains>,
    window: Option<Num>,
    alpha_floor: Option<Num>,
    feedback: Option<Feedback>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulationSection {
    sampling_period: Num,
    horizon: Num,
    noise_std: Option<Num>,
    seed: Option<u64>,
    initial_phases: Vec<Num>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    dir: Option<PathBuf>,
}

/// A parsed scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: SimulationConfig,
    pub output_dir: Option<PathBuf>,
}

pub fn load(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, path)
}

pub fn parse(text: &str, path: &Path) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| line_column(text, span.start))
            .unwrap_or((0, 0));
        ScenarioError::Syntax {
            path: path.to_path_buf(),
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    build(file).map_err(|message| ScenarioError::Invalid {
        path: path.to_path_buf(),
        message,
    })
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn build(file: ScenarioFile) -> Result<Scenario, String> {
    let net = file.network;
    let omega = values(&net.omega);
    let n = omega.len();
    let mode = match net.mode {
        Mode::Multiplicative => ControlMode::Multiplicative,
        Mode::Additive => ControlMode::Additive,
    };
    let model = match net.adjacency {
        Some(rows) => NetworkModel::new(
            omega,
            net.coupling.0,
            rows.iter().map(|r| values(r)).collect(),
            mode,
        ),
        None => NetworkModel::all_to_all(omega, net.coupling.0, mode),
    }
    .map_err(|e| e.to_string())?;

    let check_len = |name: &str, len: usize| {
        if len == n {
            Ok(())
        } else {
            Err(format!("{name} has {len} entries, expected {n}"))
        }
    };

    let uncertainty = match file.uncertainty {
        None => UncertaintySet::identity(n),
        Some(u) => {
            let freq = u.freq_scale.map_or(vec![1.0; n], |v| values(&v));
            let init = u.init_scale.map_or(vec![1.0; n], |v| values(&v));
            check_len("uncertainty.freq_scale", freq.len())?;
            check_len("uncertainty.init_scale", init.len())?;
            UncertaintySet::new(freq, u.coupling_scale.map_or(1.0, |c| c.0), init)
                .map_err(|e| e.to_string())?
        }
    };

    let sim = file.simulation;
    let initial_phases = values(&sim.initial_phases);
    check_len("simulation.initial_phases", initial_phases.len())?;

    let traj = file.trajectory;
    let offsets = values(&traj.offsets);
    check_len("trajectory.offsets", offsets.len())?;
    let sync = SyncFunction {
        linear_rate: traj.sync.linear_rate.0,
        offset: traj.sync.offset.0,
        sine_amplitude: traj.sync.sine_amplitude.0,
        sine_frequency: traj.sync.sine_frequency.0,
        sine_phase: traj.sync.sine_phase.map_or(0.0, |p| p.0),
    };
    let plan = ReferencePlan::from_initial_phases(
        sync,
        offsets,
        traj.tau.0,
        &initial_phases,
        traj.settle_tol.map_or(DEFAULT_SETTLE_TOL, |t| t.0),
    )
    .map_err(|e| e.to_string())?;

    let ctl = file.controller;
    let kp = match ctl.kp {
        None => vec![1.0; n],
        Some(Gains::Uniform(k)) => vec![k.0; n],
        Some(Gains::PerOscillator(v)) => {
            check_len("controller.kp", v.len())?;
            values(&v)
        }
    };

    let config = SimulationConfig {
        model,
        uncertainty,
        plan,
        sampling_period: sim.sampling_period.0,
        horizon: sim.horizon.0,
        noise_std: sim.noise_std.map_or(0.0, |s| s.0),
        kp,
        window_horizon: ctl.window.map_or(DEFAULT_WINDOW, |w| w.0),
        alpha_floor: ctl.alpha_floor.map_or(DEFAULT_ALPHA_FLOOR, |a| a.0),
        seed: sim.seed.unwrap_or(DEFAULT_SEED),
        initial_phases,
        feedback: match ctl.feedback {
            Some(Feedback::Open) => FeedbackMode::Open,
            Some(Feedback::Closed) | None => FeedbackMode::Closed,
        },
        force: false,
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(Scenario {
        config,
        output_dir: file.output.dir,
    })
}

fn list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

/// Writes a configuration as a scenario document that parses back to the
/// same configuration.
pub fn to_toml(config: &SimulationConfig) -> String {
    let n = config.n();
    let mut out = String::new();
    let mode = match config.model.mode() {
        ControlMode::Multiplicative => "multiplicative",
        ControlMode::Additive => "additive",
    };
    let adjacency: Vec<String> = (0..n)
        .map(|i| {
            list(
                &(0..n)
                    .map(|j| config.model.weight(i, j))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let unc = &config.uncertainty;
    let plan = &config.plan;
    let sync = &plan.sync;
    let feedback = match config.feedback {
        FeedbackMode::Closed => "closed",
        FeedbackMode::Open => "open",
    };
    // `{:?}` keeps a decimal point on integral floats and round-trips exactly.
    let _ = write!(
        out,
        "[network]\n\
         mode = \"{mode}\"\n\
         omega = {}\n\
         coupling = {:?}\n\
         adjacency = [{}]\n\
         \n\
         [uncertainty]\n\
         freq_scale = {}\n\
         coupling_scale = {:?}\n\
         init_scale = {}\n\
         \n\
         [trajectory]\n\
         offsets = {}\n\
         tau = {:?}\n\
         settle_tol = {:?}\n\
         \n\
         [trajectory.sync]\n\
         linear_rate = {:?}\n\
         offset = {:?}\n\
         sine_amplitude = {:?}\n\
         sine_frequency = {:?}\n\
         sine_phase = {:?}\n\
         \n\
         [controller]\n\
         kp = {}\n\
         window = {:?}\n\
         alpha_floor = {:?}\n\
         feedback = \"{feedback}\"\n\
         \n\
         [simulation]\n\
         sampling_period = {:?}\n\
         horizon = {:?}\n\
         noise_std = {:?}\n\
         seed = {}\n\
         initial_phases = {}\n",
        list(config.model.omega()),
        config.model.coupling(),
        adjacency.join(", "),
        list(&unc.freq_scale),
        unc.coupling_scale,
        list(&unc.init_scale),
        list(&plan.offsets),
        plan.tau,
        plan.settle_tol,
        sync.linear_rate,
        sync.offset,
        sync.sine_amplitude,
        sync.sine_frequency,
        sync.sine_phase,
        list(&config.kp),
        config.window_horizon,
        config.alpha_floor,
        config.sampling_period,
        config.horizon,
        config.noise_std,
        config.seed,
        list(&config.initial_phases),
    );
    out
}
