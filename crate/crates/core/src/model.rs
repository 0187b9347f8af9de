//! The Kuramoto network plant.
//!
//! Two control placements are supported:
//!
//! * multiplicative: `dθ_i/dt = ω_i + u_i (K/N) Σ_j a_ij sin(θ_j − θ_i)`
//! * additive:       `dθ_i/dt = ω_i + (K/N) Σ_j a_ij sin(θ_j − θ_i) + u_i`
//!
//! [`UncertaintySet`] scales the natural frequencies and the coupling of the
//! *true* plant only. Everything on the controller side works with the
//! nominal [`NetworkModel`].

use crate::error::{config_err, Error, Result};

/// Where the control variable enters the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlMode {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkModel {
    omega: Vec<f64>,
    coupling: f64,
    /// Row-major `n × n`. The diagonal is kept but never read.
    adjacency: Vec<f64>,
    mode: ControlMode,
}

impl NetworkModel {
    pub fn new(
        omega: Vec<f64>,
        coupling: f64,
        adjacency: Vec<Vec<f64>>,
        mode: ControlMode,
    ) -> Result<Self> {
        let n = omega.len();
        if n < 2 {
            return Err(config_err(format!(
                "network needs at least 2 oscillators, got {n}"
            )));
        }
        if omega.iter().any(|w| !w.is_finite()) {
            return Err(config_err("natural frequencies must be finite"));
        }
        if !coupling.is_finite() {
            return Err(config_err("coupling strength must be finite"));
        }
        if adjacency.len() != n || adjacency.iter().any(|row| row.len() != n) {
            return Err(config_err(format!("adjacency must be {n}x{n}")));
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.iter().any(|a| !a.is_finite() || *a < 0.0) {
                return Err(config_err(format!(
                    "adjacency row {} has a negative or non-finite entry",
                    i + 1
                )));
            }
            if !row.iter().enumerate().any(|(j, a)| j != i && *a > 0.0) {
                return Err(config_err(format!(
                    "oscillator {} has no neighbours in the adjacency matrix",
                    i + 1
                )));
            }
        }
        Ok(Self {
            omega,
            coupling,
            adjacency: adjacency.into_iter().flatten().collect(),
            mode,
        })
    }

    /// Every pair of distinct oscillators coupled with weight 1.
    pub fn all_to_all(omega: Vec<f64>, coupling: f64, mode: ControlMode) -> Result<Self> {
        let n = omega.len();
        let adjacency = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        Self::new(omega, coupling, adjacency, mode)
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn mode(&self) -> ControlMode {
        self.mode
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adjacency[i * self.n() + j]
    }

    pub fn with_mode(mut self, mode: ControlMode) -> Self {
        self.mode = mode;
        self
    }

    /// `Σ_{j≠i} a_ij sin(θ_j − θ_i)`.
    pub fn coupling_sum(&self, i: usize, phases: &[f64]) -> Result<f64> {
        let n = self.n();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if phases.len() != n {
            return Err(config_err(format!(
                "expected {n} phases, got {}",
                phases.len()
            )));
        }
        Ok(self.coupling_sum_at(i, phases))
    }

    pub(crate) fn coupling_sum_at(&self, i: usize, phases: &[f64]) -> f64 {
        let n = self.n();
        let row = &self.adjacency[i * n..(i + 1) * n];
        let theta_i = phases[i];
        row.iter()
            .zip(phases)
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (a, theta_j))| a * (theta_j - theta_i).sin())
            .sum()
    }

    /// Right-hand side of the nominal model (no uncertainty multipliers).
    pub fn nominal_rhs(&self, phases: &[f64], controls: &[f64], out: &mut [f64]) {
        let gain = self.coupling / self.n() as f64;
        for (i, dtheta) in out.iter_mut().enumerate() {
            let coupling = gain * self.coupling_sum_at(i, phases);
            *dtheta = match self.mode {
                ControlMode::Multiplicative => self.omega[i] + controls[i] * coupling,
                ControlMode::Additive => self.omega[i] + coupling + controls[i],
            };
        }
    }

    /// Right-hand side of the true plant: natural frequencies scaled by
    /// `freq_scale`, coupling strength scaled by `coupling_scale`.
    pub fn plant_rhs(
        &self,
        unc: &UncertaintySet,
        phases: &[f64],
        controls: &[f64],
        out: &mut [f64],
    ) {
        let gain = self.coupling * unc.coupling_scale / self.n() as f64;
        for (i, dtheta) in out.iter_mut().enumerate() {
            let omega = self.omega[i] * unc.freq_scale[i];
            let coupling = gain * self.coupling_sum_at(i, phases);
            *dtheta = match self.mode {
                ControlMode::Multiplicative => omega + controls[i] * coupling,
                ControlMode::Additive => omega + coupling + controls[i],
            };
        }
    }
}

/// Multipliers that turn the nominal model into the "true" plant.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintySet {
    pub freq_scale: Vec<f64>,
    pub coupling_scale: f64,
    pub init_scale: Vec<f64>,
}

impl UncertaintySet {
    pub fn new(freq_scale: Vec<f64>, coupling_scale: f64, init_scale: Vec<f64>) -> Result<Self> {
        if freq_scale.len() != init_scale.len() {
            return Err(config_err("freq_scale and init_scale lengths differ"));
        }
        let positive = |x: &f64| x.is_finite() && *x > 0.0;
        if !freq_scale.iter().all(positive)
            || !init_scale.iter().all(positive)
            || !positive(&coupling_scale)
        {
            return Err(config_err("uncertainty multipliers must be finite and > 0"));
        }
        Ok(Self {
            freq_scale,
            coupling_scale,
            init_scale,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            freq_scale: vec![1.0; n],
            coupling_scale: 1.0,
            init_scale: vec![1.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.freq_scale.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coupling_scale == 1.0
            && self
                .freq_scale
                .iter()
                .chain(&self.init_scale)
                .all(|x| *x == 1.0)
    }

    /// Applies `init_scale` to nominal initial phases.
    pub fn scale_initial(&self, nominal: &[f64]) -> Vec<f64> {
        nominal
            .iter()
            .zip(&self.init_scale)
            .map(|(p, s)| p * s)
            .collect()
    }
}
