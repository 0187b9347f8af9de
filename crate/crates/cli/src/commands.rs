//! `run`, `validate` and `scenario` subcommands.
//!
//! Exit codes: 0 success, 1 output failure, 2 usage or scenario error,
//! 3 reference plan refused, 4 simulation diverged or hit a singularity.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::Context;
use kuramoto_heol::{
    metrics, presets, run, validate_plan, ControlMode, Error, FeedbackMode, SimulationConfig,
    SimulationTrace, UncertaintySet,
};
use thiserror::Error;

use crate::output::{metrics_text, write_trace_csv, RunInfo};
use crate::scenario::{self, ScenarioError};
use crate::svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_DIVERGENCE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Simulation(#[from] Error),
    #[error("{0:#}")]
    Output(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Scenario(_) | CliError::Usage(_) => EXIT_PARSE,
            CliError::Simulation(e) => match e {
                Error::Refused { .. } => EXIT_VALIDATION,
                Error::Diverged { .. } | Error::Singular { .. } => EXIT_DIVERGENCE,
                Error::Config(_) | Error::UnknownPreset(_) | Error::IndexOutOfRange { .. } => {
                    EXIT_PARSE
                }
                Error::Infeasible { .. } => EXIT_FAILURE,
            },
            CliError::Output(_) => EXIT_FAILURE,
        }
    }
}

/// Where the configuration comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Preset(String),
    Scenario(PathBuf),
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::Preset(name) => format!("preset {name}"),
            Source::Scenario(path) => format!("scenario {}", path.display()),
        }
    }

    fn load(&self) -> Result<(SimulationConfig, Option<PathBuf>), CliError> {
        match self {
            Source::Preset(name) => Ok((
                presets::preset(name).map_err(|e| CliError::Usage(e.to_string()))?,
                None,
            )),
            Source::Scenario(path) => {
                let s = scenario::load(path)?;
                Ok((s.config, s.output_dir))
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub no_noise: bool,
    pub open_loop: bool,
    pub force: bool,
    /// Identity uncertainties (the plant equals the nominal model).
    pub nominal: bool,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut SimulationConfig) {
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.no_noise {
            cfg.noise_std = 0.0;
        }
        if self.open_loop {
            cfg.feedback = FeedbackMode::Open;
        }
        if self.nominal {
            cfg.uncertainty = UncertaintySet::identity(cfg.n());
        }
        cfg.force |= self.force;
    }
}

/// Settling time used for metrics, with the rule that produced it.
pub fn metrics_start(cfg: &SimulationConfig) -> (f64, &'static str) {
    match cfg.plan.settle_time() {
        Ok(t) if t < cfg.horizon => (t, "settle_time"),
        _ => (cfg.horizon / 2.0, "fallback_half_horizon"),
    }
}

pub struct RunOutcome {
    pub trace: SimulationTrace,
    pub out_dir: PathBuf,
    pub metrics: String,
}

pub fn run_command(
    source: &Source,
    out: Option<&Path>,
    overrides: &Overrides,
) -> Result<RunOutcome, CliError> {
    let (mut cfg, scenario_out) = source.load()?;
    overrides.apply(&mut cfg);
    let out_dir = out
        .map(Path::to_path_buf)
        .or(scenario_out)
        .unwrap_or_else(|| PathBuf::from("results"));

    let trace = run(&cfg)?;
    let (t_f, t_f_source) = metrics_start(&cfg);
    let m = metrics(&trace, t_f);

    fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let csv_path = out_dir.join("trace.csv");
    let file =
        fs::File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
    write_trace_csv(&trace, BufWriter::new(file))?;
    for fig in svg::figures() {
        let path = out_dir.join(fig.file);
        fs::write(&path, svg::render(&fig, &trace))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let info = RunInfo {
        source: &source.label(),
        mode: match cfg.model.mode() {
            ControlMode::Multiplicative => "multiplicative",
            ControlMode::Additive => "additive",
        },
        feedback: match cfg.feedback {
            FeedbackMode::Closed => "closed",
            FeedbackMode::Open => "open",
        },
        seed: cfg.seed,
        noise_std: cfg.noise_std,
        t_f_source,
    };
    let text = metrics_text(&info, &m, &trace);
    let path = out_dir.join("metrics.txt");
    fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    Ok(RunOutcome {
        trace,
        out_dir,
        metrics: text,
    })
}

/// Returns the printable report and whether the plan is feasible.
pub fn validate_command(
    source: &Source,
    overrides: &Overrides,
) -> Result<(String, bool), CliError> {
    let (mut cfg, _) = source.load()?;
    overrides.apply(&mut cfg);
    cfg.validate()?;
    let report = validate_plan(&cfg.plan, &cfg.model, cfg.horizon, cfg.sampling_period)?;
    Ok((report.to_string(), report.is_ok()))
}

pub fn scenario_command(name: &str) -> Result<String, CliError> {
    let cfg = presets::preset(name).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(scenario::to_toml(&cfg))
}
