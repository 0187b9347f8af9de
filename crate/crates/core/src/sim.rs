//! Closed-loop experiment runner.
//!
//! Every sampling period the controller measures the true phases (plus
//! Gaussian noise), updates the per-oscillator HEOL controllers and applies
//! `u(s) = u*(s) + δu_k` to the true plant over `[t_k, t_k + T_e]`. The
//! correction `δu_k` is held constant over the period; the flat feedforward
//! `u*` is an explicit function of time and is evaluated at each integrator
//! stage. Integration uses the classical 4-stage Runge-Kutta scheme with one
//! step per sampling period.

use log::{debug, warn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{config_err, Error, Result};
use crate::flatness::{nominal_control_into, validate_plan, ReferencePlan};
use crate::heol::{alpha, ControllerState, Correction, EstimatorWindow};
use crate::model::{NetworkModel, UncertaintySet};

/// `|θ̇|` above which a run is declared diverged.
pub const DIVERGENCE_RATE: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeedbackMode {
    /// Flat feedforward plus HEOL correction.
    Closed,
    /// Flat feedforward only; `δu ≡ 0`.
    Open,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub model: NetworkModel,
    pub uncertainty: UncertaintySet,
    pub plan: ReferencePlan,
    pub sampling_period: f64,
    pub horizon: f64,
    pub noise_std: f64,
    pub kp: Vec<f64>,
    pub window_horizon: f64,
    pub alpha_floor: f64,
    pub seed: u64,
    /// Nominal initial phases; the true plant starts from these scaled by
    /// `uncertainty.init_scale`.
    pub initial_phases: Vec<f64>,
    pub feedback: FeedbackMode,
    /// Run even if the plan has blocking violations.
    pub force: bool,
}

impl SimulationConfig {
    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn true_initial_phases(&self) -> Vec<f64> {
        self.uncertainty.scale_initial(&self.initial_phases)
    }

    /// Number of sampling periods in the horizon.
    pub fn steps(&self) -> usize {
        (self.horizon / self.sampling_period + 1e-9).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.plan.n() != n
            || self.uncertainty.n() != n
            || self.kp.len() != n
            || self.initial_phases.len() != n
        {
            return Err(config_err(format!(
                "all per-oscillator vectors must have length {n}"
            )));
        }
        if !(self.sampling_period > 0.0 && self.sampling_period.is_finite()) {
            return Err(config_err("sampling period must be > 0"));
        }
        if !(self.horizon.is_finite() && self.horizon >= self.window_horizon) {
            return Err(config_err(format!(
                "horizon {} s is shorter than the estimator window {} s",
                self.horizon, self.window_horizon
            )));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(config_err(
                "noise standard deviation must be finite and >= 0",
            ));
        }
        if self.initial_phases.iter().any(|p| !p.is_finite()) {
            return Err(config_err("initial phases must be finite"));
        }
        // Window geometry and gains are checked by their constructors.
        EstimatorWindow::new(self.window_horizon, self.sampling_period)?;
        for &kp in &self.kp {
            ControllerState::new(
                kp,
                EstimatorWindow::new(self.window_horizon, self.sampling_period)?,
                self.alpha_floor,
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    AlphaGuard,
    EstimatorWarmup,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub oscillator: usize,
    pub kind: EventKind,
}

/// One recorded sampling instant.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub time: f64,
    pub theta: Vec<f64>,
    pub theta_star: Vec<f64>,
    pub thetadot: Vec<f64>,
    pub thetadot_star: Vec<f64>,
    pub u: Vec<f64>,
    pub u_star: Vec<f64>,
    /// True tracking error `θ − θ*`.
    pub delta_theta: Vec<f64>,
    /// Latest estimate of `F`, zero during warm-up.
    pub f_est: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimulationTrace {
    pub rows: Vec<TraceRow>,
    pub events: Vec<Event>,
}

impl SimulationTrace {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, |r| r.theta.len())
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.time)
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

/// Stepwise closed-loop simulation.
pub struct Simulator<'a> {
    config: &'a SimulationConfig,
    step: usize,
    steps: usize,
    theta: Vec<f64>,
    controllers: Vec<ControllerState>,
    previous_alpha_delta_u: Vec<f64>,
    rng: ChaCha8Rng,
}

impl<'a> Simulator<'a> {
    /// Validates the configuration and the reference plan. A plan with
    /// blocking violations is refused unless `config.force` is set.
    pub fn new(config: &'a SimulationConfig) -> Result<Self> {
        config.validate()?;
        let report = validate_plan(
            &config.plan,
            &config.model,
            config.horizon,
            config.sampling_period,
        )?;
        if !report.is_ok() {
            if !config.force {
                return Err(Error::Refused { report });
            }
            warn!(
                "running despite {} plan violation(s)",
                report.violations.len()
            );
        }
        let controllers = config
            .kp
            .iter()
            .map(|&kp| {
                let window = EstimatorWindow::new(config.window_horizon, config.sampling_period)?;
                ControllerState::new(kp, window, config.alpha_floor)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config,
            step: 0,
            steps: config.steps(),
            theta: config.true_initial_phases(),
            controllers,
            previous_alpha_delta_u: vec![0.0; config.n()],
            rng: ChaCha8Rng::seed_from_u64(config.seed),
        })
    }

    pub fn is_finished(&self) -> bool {
        self.step > self.steps
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.config.sampling_period
    }

    /// Measures, updates the controllers, records the current instant and
    /// advances the plant by one sampling period (except after the last row).
    pub fn step(&mut self, events: &mut Vec<Event>) -> Result<TraceRow> {
        let cfg = self.config;
        let n = cfg.n();
        let t = self.time();

        let reference = cfg.plan.reference_state(t);
        let mut u_star = vec![0.0; n];
        nominal_control_into(
            &cfg.model,
            &reference.theta,
            &reference.thetadot,
            t,
            &mut u_star,
        )?;

        let mut delta_u = vec![0.0; n];
        let mut f_est = vec![0.0; n];
        for i in 0..n {
            let noise = if cfg.noise_std > 0.0 {
                let z: f64 = StandardNormal.sample(&mut self.rng);
                cfg.noise_std * z
            } else {
                0.0
            };
            let measured_error = self.theta[i] + noise - reference.theta[i];
            let alpha_now = alpha(i, &reference.theta, &cfg.model);
            let correction = self.controllers[i].update(
                t,
                measured_error,
                self.previous_alpha_delta_u[i],
                alpha_now,
            )?;
            f_est[i] = self.controllers[i].f_est().unwrap_or(0.0);
            match correction {
                Correction::Warmup => events.push(Event {
                    time: t,
                    oscillator: i,
                    kind: EventKind::EstimatorWarmup,
                }),
                Correction::AlphaGuard => {
                    debug!("alpha guard on oscillator {} at t = {t}", i + 1);
                    events.push(Event {
                        time: t,
                        oscillator: i,
                        kind: EventKind::AlphaGuard,
                    });
                }
                Correction::Active(_) => {}
            }
            if cfg.feedback == FeedbackMode::Closed {
                delta_u[i] = correction.delta_u();
            }
            self.previous_alpha_delta_u[i] = alpha_now * delta_u[i];
        }

        let u: Vec<f64> = u_star.iter().zip(&delta_u).map(|(a, b)| a + b).collect();
        let mut thetadot = vec![0.0; n];
        cfg.model
            .plant_rhs(&cfg.uncertainty, &self.theta, &u, &mut thetadot);
        if let Some(i) = (0..n).find(|&i| {
            !self.theta[i].is_finite()
                || !thetadot[i].is_finite()
                || thetadot[i].abs() > DIVERGENCE_RATE
        }) {
            return Err(Error::Diverged {
                time: t,
                oscillator: i,
            });
        }

        let row = TraceRow {
            time: t,
            delta_theta: self
                .theta
                .iter()
                .zip(&reference.theta)
                .map(|(a, b)| a - b)
                .collect(),
            theta: self.theta.clone(),
            theta_star: reference.theta,
            thetadot,
            thetadot_star: reference.thetadot,
            u,
            u_star,
            f_est,
        };

        if self.step < self.steps {
            self.advance(t, &delta_u)?;
        }
        self.step += 1;
        Ok(row)
    }

    fn advance(&mut self, t: f64, delta_u: &[f64]) -> Result<()> {
        let h = self.config.sampling_period;
        let theta = &self.theta;
        let k1 = self.derivative(t, theta, delta_u)?;
        let k2 = self.derivative(t + h / 2.0, &offset(theta, &k1, h / 2.0), delta_u)?;
        let k3 = self.derivative(t + h / 2.0, &offset(theta, &k2, h / 2.0), delta_u)?;
        let k4 = self.derivative(t + h, &offset(theta, &k3, h), delta_u)?;
        for i in 0..theta.len() {
            self.theta[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        Ok(())
    }

    fn derivative(&self, t: f64, theta: &[f64], delta_u: &[f64]) -> Result<Vec<f64>> {
        let cfg = self.config;
        let n = cfg.n();
        let reference = cfg.plan.reference_state(t);
        let mut u = vec![0.0; n];
        nominal_control_into(&cfg.model, &reference.theta, &reference.thetadot, t, &mut u)?;
        for (u, du) in u.iter_mut().zip(delta_u) {
            *u += du;
        }
        let mut out = vec![0.0; n];
        cfg.model.plant_rhs(&cfg.uncertainty, theta, &u, &mut out);
        Ok(out)
    }
}

fn offset(x: &[f64], dx: &[f64], h: f64) -> Vec<f64> {
    x.iter().zip(dx).map(|(a, b)| a + h * b).collect()
}

/// Runs the whole horizon.
pub fn run(config: &SimulationConfig) -> Result<SimulationTrace> {
    let mut sim = Simulator::new(config)?;
    let mut trace = SimulationTrace {
        rows: Vec::with_capacity(config.steps() + 1),
        events: Vec::new(),
    };
    while !sim.is_finished() {
        let row = sim.step(&mut trace.events)?;
        trace.rows.push(row);
    }
    Ok(trace)
}

/// Synchronization and tracking figures over `t ≥ t_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncMetrics {
    pub t_f: f64,
    pub samples: usize,
    /// `max_t max_{i,j} |θ̇_i − θ̇_j|` from true plant rates.
    pub sync_error: f64,
    pub rms_delta_theta: Vec<f64>,
    pub max_abs_delta_theta: f64,
    pub thetadot_min: f64,
    pub thetadot_max: f64,
}

impl SyncMetrics {
    /// RMS of `δθ` pooled over all oscillators.
    pub fn overall_rms(&self) -> f64 {
        let n = self.rms_delta_theta.len().max(1) as f64;
        (self.rms_delta_theta.iter().map(|r| r * r).sum::<f64>() / n).sqrt()
    }
}

pub fn metrics(trace: &SimulationTrace, t_f: f64) -> SyncMetrics {
    let n = trace.n();
    let tail: Vec<&TraceRow> = trace.rows.iter().filter(|r| r.time >= t_f - 1e-9).collect();
    let mut sync_error: f64 = 0.0;
    let mut sum_sq = vec![0.0; n];
    let mut max_abs: f64 = 0.0;
    let mut thetadot_min = f64::INFINITY;
    let mut thetadot_max = f64::NEG_INFINITY;
    for row in &tail {
        let (lo, hi) = row
            .thetadot
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
                (lo.min(r), hi.max(r))
            });
        sync_error = sync_error.max(hi - lo);
        thetadot_min = thetadot_min.min(lo);
        thetadot_max = thetadot_max.max(hi);
        for (i, e) in row.delta_theta.iter().enumerate() {
            sum_sq[i] += e * e;
            max_abs = max_abs.max(e.abs());
        }
    }
    let count = tail.len().max(1) as f64;
    SyncMetrics {
        t_f,
        samples: tail.len(),
        sync_error,
        rms_delta_theta: sum_sq.iter().map(|s| (s / count).sqrt()).collect(),
        max_abs_delta_theta: max_abs,
        thetadot_min,
        thetadot_max,
    }
}
