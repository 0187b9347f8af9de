//! Closed-loop correction around the flat reference.
//!
//! Each oscillator's tracking error obeys the homeostat
//! `d(δθ_i)/dt = F_i + α_i δu_i`, where `α_i` is known from the reference and
//! `F_i` lumps every mismatch and disturbance. `F_i` is estimated from a
//! sliding window of data with the algebraic estimator
//!
//! ```text
//! F_est = −(6/T³) ∫₀ᵀ [ (T − 2σ) δθ(σ + t − T) + σ(T − σ) α δu(σ + t − T) ] dσ
//! ```
//!
//! and cancelled by the intelligent proportional controller
//! `δu = −(F_est + K_P δθ) / α`.

use std::collections::VecDeque;

use crate::error::{config_err, Result};
use crate::model::{ControlMode, NetworkModel};

/// Minimum `|α|` for which the iP correction is applied.
pub const DEFAULT_ALPHA_FLOOR: f64 = 1e-3;

/// Default estimator window length `T` in seconds.
pub const DEFAULT_WINDOW: f64 = 0.3;

/// Homeostat input gain of oscillator `i` along the reference phases.
pub fn alpha(i: usize, theta_star: &[f64], model: &NetworkModel) -> f64 {
    match model.mode() {
        ControlMode::Multiplicative => {
            model.coupling() / model.n() as f64 * model.coupling_sum_at(i, theta_star)
        }
        ControlMode::Additive => 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSample {
    pub time: f64,
    pub delta_theta: f64,
    /// `α·δu` held over the sampling interval that ends at `time`.
    pub alpha_delta_u: f64,
}

/// Sliding buffer feeding the algebraic estimator.
///
/// The window spans `[t − T, t]` with `T/T_e + 1` uniformly spaced nodes.
/// Quadrature is exact for the sampled-data signals the loop produces:
/// `δθ` is interpolated linearly between nodes and `α δu` is held constant
/// over each interval, so both kernels are integrated in closed form.
#[derive(Debug, Clone)]
pub struct EstimatorWindow {
    horizon: f64,
    period: f64,
    samples: VecDeque<WindowSample>,
    theta_weights: Vec<f64>,
    input_weights: Vec<f64>,
}

impl EstimatorWindow {
    pub fn new(horizon: f64, period: f64) -> Result<Self> {
        if !(horizon > 0.0 && period > 0.0 && horizon.is_finite() && period.is_finite()) {
            return Err(config_err(
                "estimator window and sampling period must be > 0",
            ));
        }
        let ratio = horizon / period;
        let intervals = ratio.round();
        if (ratio - intervals).abs() > 1e-9 * ratio.max(1.0) {
            return Err(config_err(format!(
                "estimator window {horizon} s is not a multiple of the sampling period {period} s"
            )));
        }
        let intervals = intervals as usize;
        if intervals < 2 {
            return Err(config_err(
                "estimator window must span at least 2 sampling periods",
            ));
        }

        let h = horizon / intervals as f64;
        let t = horizon;
        let kernel = |s: f64| t - 2.0 * s;
        let kernel_antiderivative = |s: f64| t * s * s / 2.0 - s * s * s / 3.0;
        let mut theta_weights = vec![0.0; intervals + 1];
        let mut input_weights = vec![0.0; intervals + 1];
        for j in 1..=intervals {
            let a = (j - 1) as f64 * h;
            let b = j as f64 * h;
            theta_weights[j - 1] += h * (2.0 * kernel(a) + kernel(b)) / 6.0;
            theta_weights[j] += h * (kernel(a) + 2.0 * kernel(b)) / 6.0;
            input_weights[j] = kernel_antiderivative(b) - kernel_antiderivative(a);
        }
        let scale = -6.0 / (t * t * t);
        theta_weights.iter_mut().for_each(|w| *w *= scale);
        input_weights.iter_mut().for_each(|w| *w *= scale);

        Ok(Self {
            horizon,
            period,
            samples: VecDeque::with_capacity(intervals + 1),
            theta_weights,
            input_weights,
        })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn capacity(&self) -> usize {
        self.theta_weights.len()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.samples.len() == self.capacity()
    }

    pub fn samples(&self) -> impl Iterator<Item = &WindowSample> {
        self.samples.iter()
    }

    pub fn clear(&mut self) {
        self.samples.clear();
    }

    /// Appends a sample, evicting the oldest once the window is full.
    /// Samples must arrive exactly one period apart.
    pub fn push(&mut self, sample: WindowSample) -> Result<()> {
        if let Some(last) = self.samples.back() {
            let gap = sample.time - last.time;
            if (gap - self.period).abs() > 1e-6 * self.period {
                return Err(config_err(format!(
                    "estimator sample at t = {} is {gap} s after the previous one, expected {}",
                    sample.time, self.period
                )));
            }
        }
        if self.is_full() {
            self.samples.pop_front();
        }
        self.samples.push_back(sample);
        Ok(())
    }

    /// Current estimate of `F`, or `None` while the window is filling up.
    pub fn estimate(&self) -> Option<f64> {
        if !self.is_full() {
            return None;
        }
        let theta: f64 = self
            .samples
            .iter()
            .zip(&self.theta_weights)
            .map(|(s, w)| w * s.delta_theta)
            .sum();
        // input_weights[0] is zero: the first sample's input belongs to the
        // interval before the window.
        let input: f64 = self
            .samples
            .iter()
            .zip(&self.input_weights)
            .map(|(s, w)| w * s.alpha_delta_u)
            .sum();
        Some(theta + input)
    }
}

/// Outcome of one iP update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correction {
    /// Estimator window not yet full; no correction.
    Warmup,
    /// `|α|` below the floor; correction held at zero.
    AlphaGuard,
    Active(f64),
}

impl Correction {
    pub fn delta_u(self) -> f64 {
        match self {
            Correction::Active(du) => du,
            Correction::Warmup | Correction::AlphaGuard => 0.0,
        }
    }
}

/// `δu = −(F_est + K_P δθ) / α`, or [`Correction::AlphaGuard`] when
/// `|α| < alpha_floor`.
pub fn ip_control(
    f_est: f64,
    kp: f64,
    delta_theta: f64,
    alpha: f64,
    alpha_floor: f64,
) -> Correction {
    if alpha.abs() < alpha_floor {
        return Correction::AlphaGuard;
    }
    Correction::Active(-(f_est + kp * delta_theta) / alpha)
}

/// Per-oscillator HEOL controller.
#[derive(Debug, Clone)]
pub struct ControllerState {
    kp: f64,
    alpha_floor: f64,
    window: EstimatorWindow,
    f_est: Option<f64>,
}

impl ControllerState {
    pub fn new(kp: f64, window: EstimatorWindow, alpha_floor: f64) -> Result<Self> {
        if !(kp > 0.0 && kp.is_finite()) {
            return Err(config_err(format!(
                "proportional gain must be > 0, got {kp}"
            )));
        }
        if !(alpha_floor >= 0.0 && alpha_floor.is_finite()) {
            return Err(config_err("alpha floor must be finite and >= 0"));
        }
        Ok(Self {
            kp,
            alpha_floor,
            window,
            f_est: None,
        })
    }

    pub fn kp(&self) -> f64 {
        self.kp
    }

    pub fn f_est(&self) -> Option<f64> {
        self.f_est
    }

    pub fn window(&self) -> &EstimatorWindow {
        &self.window
    }

    /// Records the new measurement together with the `α δu` applied over
    /// the interval that just ended, then computes the next correction.
    pub fn update(
        &mut self,
        time: f64,
        delta_theta: f64,
        previous_alpha_delta_u: f64,
        alpha_now: f64,
    ) -> Result<Correction> {
        self.window.push(WindowSample {
            time,
            delta_theta,
            alpha_delta_u: previous_alpha_delta_u,
        })?;
        self.f_est = self.window.estimate();
        Ok(match self.f_est {
            None => Correction::Warmup,
            Some(f) => ip_control(f, self.kp, delta_theta, alpha_now, self.alpha_floor),
        })
    }
}
