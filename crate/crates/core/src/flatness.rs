//! Open-loop reference generation.
//!
//! Phase angles are flat outputs of the Kuramoto network, so the reference
//! control is an algebraic function of the reference phases and their first
//! derivative. Each reference phase is `θ*_i(t) = g_i(t) + f(t)` where `f` is
//! a common synchronization function and `g_i` is the output of the
//! critically damped filter `τ² g̈ + 2τ ġ + g = c_i`, whose closed-form
//! solution is `g(t) = c + (A + Bt) e^{−t/τ}`.

use std::fmt;

use crate::error::{config_err, Error, Result};
use crate::model::{ControlMode, NetworkModel};

/// Minimum `|Σ_j a_ij sin(θ*_j − θ*_i)|` accepted by the multiplicative
/// inversion.
pub const DENOM_EPSILON: f64 = 1e-3;

/// Default relative settling tolerance for `g_i(t_f)`.
pub const DEFAULT_SETTLE_TOL: f64 = 1e-3;

/// `f(t) = amplitude·sin(frequency·t + phase) + rate·t + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncFunction {
    pub linear_rate: f64,
    pub offset: f64,
    pub sine_amplitude: f64,
    pub sine_frequency: f64,
    pub sine_phase: f64,
}

impl SyncFunction {
    pub fn value(&self, t: f64) -> f64 {
        self.sine_amplitude * (self.sine_frequency * t + self.sine_phase).sin()
            + self.linear_rate * t
            + self.offset
    }

    pub fn rate(&self, t: f64) -> f64 {
        self.sine_amplitude
            * self.sine_frequency
            * (self.sine_frequency * t + self.sine_phase).cos()
            + self.linear_rate
    }

    /// True when the affine slope dominates the sinusoid, so `ḟ > 0` everywhere.
    pub fn is_strictly_increasing(&self) -> bool {
        self.linear_rate > (self.sine_amplitude * self.sine_frequency).abs()
    }
}

/// Filter output and its first two derivatives at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSample {
    pub g: f64,
    pub gdot: f64,
    pub gddot: f64,
}

/// Closed-form solution of `τ² g̈ + 2τ ġ + g = c` with `g(0) = g0`, `ġ(0) = gdot0`.
pub fn solve_g(c: f64, g0: f64, gdot0: f64, tau: f64, t: f64) -> Result<FilterSample> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(config_err(format!(
            "filter time constant must be > 0, got {tau}"
        )));
    }
    Ok(filter_at(c, g0, gdot0, tau, t))
}

fn filter_at(c: f64, g0: f64, gdot0: f64, tau: f64, t: f64) -> FilterSample {
    let a = g0 - c;
    let b = gdot0 + a / tau;
    let decay = (-t / tau).exp();
    let poly = a + b * t;
    FilterSample {
        g: c + poly * decay,
        gdot: decay * (b - poly / tau),
        gddot: decay * (poly / (tau * tau) - 2.0 * b / tau),
    }
}

/// Reference phases and rates at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceState {
    pub theta: Vec<f64>,
    pub thetadot: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePlan {
    pub sync: SyncFunction,
    /// Steady offsets `c_i`.
    pub offsets: Vec<f64>,
    pub tau: f64,
    pub g0: Vec<f64>,
    pub gdot0: Vec<f64>,
    pub settle_tol: f64,
}

impl ReferencePlan {
    pub fn new(
        sync: SyncFunction,
        offsets: Vec<f64>,
        tau: f64,
        g0: Vec<f64>,
        gdot0: Vec<f64>,
        settle_tol: f64,
    ) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(config_err(format!(
                "filter time constant must be > 0, got {tau}"
            )));
        }
        if !(settle_tol > 0.0 && settle_tol < 1.0) {
            return Err(config_err(format!(
                "settle_tol must lie in (0, 1), got {settle_tol}"
            )));
        }
        let n = offsets.len();
        if g0.len() != n || gdot0.len() != n {
            return Err(config_err(
                "offsets and filter initial conditions differ in length",
            ));
        }
        let all = offsets.iter().chain(&g0).chain(&gdot0);
        if all.clone().any(|x| !x.is_finite()) {
            return Err(config_err("reference plan contains non-finite values"));
        }
        Ok(Self {
            sync,
            offsets,
            tau,
            g0,
            gdot0,
            settle_tol,
        })
    }

    /// Plan whose reference starts exactly at `initial_phases` with
    /// `θ̇*(0) = ḟ(0)`: `g0_i = θ_i(0) − f(0)`, `ġ0_i = 0`.
    pub fn from_initial_phases(
        sync: SyncFunction,
        offsets: Vec<f64>,
        tau: f64,
        initial_phases: &[f64],
        settle_tol: f64,
    ) -> Result<Self> {
        let f0 = sync.value(0.0);
        let g0 = initial_phases.iter().map(|p| p - f0).collect();
        let gdot0 = vec![0.0; initial_phases.len()];
        Self::new(sync, offsets, tau, g0, gdot0, settle_tol)
    }

    pub fn n(&self) -> usize {
        self.offsets.len()
    }

    pub fn filter(&self, i: usize, t: f64) -> FilterSample {
        filter_at(self.offsets[i], self.g0[i], self.gdot0[i], self.tau, t)
    }

    pub fn reference_state(&self, t: f64) -> ReferenceState {
        let mut state = ReferenceState {
            theta: vec![0.0; self.n()],
            thetadot: vec![0.0; self.n()],
        };
        self.reference_state_into(t, &mut state.theta, &mut state.thetadot);
        state
    }

    pub fn reference_state_into(&self, t: f64, theta: &mut [f64], thetadot: &mut [f64]) {
        let f = self.sync.value(t);
        let fdot = self.sync.rate(t);
        for i in 0..self.n() {
            let s = self.filter(i, t);
            theta[i] = s.g + f;
            thetadot[i] = s.gdot + fdot;
        }
    }

    /// Earliest point of the `0.1τ` grid after which every `g_i` with
    /// `c_i ≠ 0` stays within `settle_tol` (relative) of `c_i` up to `20τ`.
    pub fn settle_time(&self) -> Result<f64> {
        const STEPS: usize = 200;
        let limit = 20.0 * self.tau;
        if self.offsets.iter().all(|c| *c == 0.0) {
            return Err(config_err("settle_time needs at least one non-zero offset"));
        }
        let settled = |k: usize| {
            let t = k as f64 * self.tau / 10.0;
            self.offsets
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0.0 || ((self.filter(i, t).g - c) / c).abs() <= self.settle_tol)
        };
        // Walk back from the end of the grid while the bound keeps holding.
        let mut first = None;
        for k in (1..=STEPS).rev() {
            if settled(k) {
                first = Some(k);
            } else {
                break;
            }
        }
        first
            .map(|k| k as f64 * self.tau / 10.0)
            .ok_or(Error::Infeasible { limit })
    }
}

/// Nominal reference control at `t`, obtained by inverting the model along
/// the reference phases. Uses the nominal `ω` and `K`.
///
/// Multiplicative: `u*_i = N(θ̇*_i − ω_i) / (K Σ_j a_ij sin(θ*_j − θ*_i))`.
/// Additive: `u*_i = θ̇*_i − ω_i − (K/N) Σ_j a_ij sin(θ*_j − θ*_i)`.
pub fn nominal_control(plan: &ReferencePlan, model: &NetworkModel, t: f64) -> Result<Vec<f64>> {
    let state = plan.reference_state(t);
    let mut u = vec![0.0; model.n()];
    nominal_control_into(model, &state.theta, &state.thetadot, t, &mut u)?;
    Ok(u)
}

/// Same as [`nominal_control`] but from an already evaluated reference state.
/// `t` is only used for error reporting.
pub fn nominal_control_into(
    model: &NetworkModel,
    theta_star: &[f64],
    thetadot_star: &[f64],
    t: f64,
    out: &mut [f64],
) -> Result<()> {
    let n = model.n() as f64;
    let k = model.coupling();
    for (i, u) in out.iter_mut().enumerate() {
        let sum = model.coupling_sum_at(i, theta_star);
        let freq_err = thetadot_star[i] - model.omega()[i];
        *u = match model.mode() {
            ControlMode::Multiplicative => {
                if sum.abs() < DENOM_EPSILON || k == 0.0 {
                    return Err(Error::Singular {
                        oscillator: i,
                        time: t,
                        denominator: sum,
                    });
                }
                n * freq_err / (k * sum)
            }
            ControlMode::Additive => freq_err - k / n * sum,
        };
    }
    Ok(())
}

/// The feasibility conditions a reference must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Multiplicative inversion denominator vanishes.
    SingularDenominator,
    /// A reference phase rate is not strictly positive.
    NonPositiveRate,
    /// A multiplicative reference control is not strictly positive.
    NonPositiveControl,
}

impl Condition {
    pub fn number(self) -> u8 {
        match self {
            Condition::SingularDenominator => 1,
            Condition::NonPositiveRate => 2,
            Condition::NonPositiveControl => 3,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::SingularDenominator => "coupling denominator below threshold",
            Condition::NonPositiveRate => "reference rate not positive",
            Condition::NonPositiveControl => "reference control not positive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub oscillator: usize,
    pub time: f64,
}

/// Result of [`validate_plan`]. Conditions 1 and 2 are blocking
/// `violations`; condition 3 is reported as `warnings`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, condition: Condition) -> usize {
        self.violations
            .iter()
            .chain(&self.warnings)
            .filter(|v| v.condition == condition)
            .count()
    }

    /// One `(condition, oscillator, count, first time, last time)` entry per
    /// distinct condition/oscillator pair, in a stable order.
    pub fn summary(&self) -> Vec<(Condition, usize, usize, f64, f64)> {
        let mut rows: Vec<(Condition, usize, usize, f64, f64)> = Vec::new();
        for v in self.violations.iter().chain(&self.warnings) {
            match rows
                .iter_mut()
                .find(|r| r.0 == v.condition && r.1 == v.oscillator)
            {
                Some(r) => {
                    r.2 += 1;
                    r.3 = r.3.min(v.time);
                    r.4 = r.4.max(v.time);
                }
                None => rows.push((v.condition, v.oscillator, 1, v.time, v.time)),
            }
        }
        rows.sort_by_key(|r| (r.0, r.1));
        rows
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() && self.warnings.is_empty() {
            return writeln!(f, "reference plan feasible: no violations");
        }
        for (cond, osc, count, first, last) in self.summary() {
            let level = if cond == Condition::NonPositiveControl {
                "warning"
            } else {
                "violation"
            };
            writeln!(
                f,
                "{level}: condition {} ({}) oscillator {}: {count} sample(s), t in [{first}, {last}]",
                cond.number(),
                cond.describe(),
                osc + 1
            )?;
        }
        Ok(())
    }
}

/// Samples `[0, horizon]` every `step` seconds and checks the feasibility
/// conditions. Additive plans only check the rate condition.
pub fn validate_plan(
    plan: &ReferencePlan,
    model: &NetworkModel,
    horizon: f64,
    step: f64,
) -> Result<ValidationReport> {
    if !(horizon > 0.0 && step > 0.0) {
        return Err(config_err("validation horizon and step must be > 0"));
    }
    if plan.n() != model.n() {
        return Err(config_err("plan and model have different sizes"));
    }
    let n = model.n();
    let samples = (horizon / step + 1e-9).floor() as usize;
    let mut report = ValidationReport::default();
    let mut theta = vec![0.0; n];
    let mut thetadot = vec![0.0; n];
    let nf = n as f64;
    for k in 0..=samples {
        let t = k as f64 * step;
        plan.reference_state_into(t, &mut theta, &mut thetadot);
        for i in 0..n {
            let flag = |condition| Violation {
                condition,
                oscillator: i,
                time: t,
            };
            if thetadot[i] <= 0.0 {
                report.violations.push(flag(Condition::NonPositiveRate));
            }
            if model.mode() == ControlMode::Multiplicative {
                let sum = model.coupling_sum_at(i, &theta);
                if sum.abs() < DENOM_EPSILON {
                    report.violations.push(flag(Condition::SingularDenominator));
                } else {
                    let u = nf * (thetadot[i] - model.omega()[i]) / (model.coupling() * sum);
                    if u <= 0.0 {
                        report.warnings.push(flag(Condition::NonPositiveControl));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn preset_sync() -> SyncFunction {
        SyncFunction {
            linear_rate: 7.5,
            offset: 7.0,
            sine_amplitude: 2.0,
            sine_frequency: 0.5,
            sine_phase: 0.0,
        }
    }

    fn three_plan(offsets: Vec<f64>) -> ReferencePlan {
        ReferencePlan::from_initial_phases(preset_sync(), offsets, 1.0, &[0.5, 1.0, 2.0], 1e-3)
            .unwrap()
    }

    fn three_model(mode: ControlMode) -> NetworkModel {
        NetworkModel::all_to_all(vec![5.0, 7.0, 8.0], 1.0, mode).unwrap()
    }

    /// Fine RK4 integration of the filter ODE written as a first-order system.
    fn integrate_filter(c: f64, g0: f64, gdot0: f64, tau: f64, t_end: f64) -> f64 {
        let rhs = |y: [f64; 2]| [y[1], (c - y[0] - 2.0 * tau * y[1]) / (tau * tau)];
        let steps = 100_000;
        let h = t_end / steps as f64;
        let mut y = [g0, gdot0];
        for _ in 0..steps {
            let k1 = rhs(y);
            let k2 = rhs([y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
            let k3 = rhs([y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
            let k4 = rhs([y[0] + h * k3[0], y[1] + h * k3[1]]);
            for d in 0..2 {
                y[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
            }
        }
        y[0]
    }

    /// Bisection for `(1 + t) e^{−t} = level` on `t > 0`.
    fn bisect_step_response(level: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 50.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (1.0 + mid) * (-mid).exp() > level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    #[test]
    fn solve_g_examples() {
        let s = solve_g(1.0, 1.0, 0.0, 3.7, 12.3).unwrap();
        assert_eq!((s.g, s.gdot), (1.0, 0.0));

        let s = solve_g(PI / 2.0, 0.4, 0.0, 1.0, 0.0).unwrap();
        assert!((s.g - 0.4).abs() < 1e-15);

        let s = solve_g(0.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let oracle = integrate_filter(0.0, 1.0, 0.0, 1.0, 1.0);
        assert!((oracle - 0.735_758_882_3).abs() < 1e-9);
        assert!((s.g - 0.735_758_882_3).abs() < 1e-9);

        assert!(solve_g(0.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(solve_g(0.0, 1.0, 0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn solve_g_matches_integration_with_initial_rate() {
        let s = solve_g(-0.7, 2.0, -1.5, 0.6, 2.2).unwrap();
        let oracle = integrate_filter(-0.7, 2.0, -1.5, 0.6, 2.2);
        assert!((s.g - oracle).abs() < 1e-9);
    }

    fn step_plan(tol: f64) -> ReferencePlan {
        ReferencePlan::new(preset_sync(), vec![1.0], 1.0, vec![0.0], vec![0.0], tol).unwrap()
    }

    #[test]
    fn settle_time_examples() {
        // Oracle roots: 9.2335 (tol 1e-3) and 1.6783 (tol 0.5); the grid rounds up.
        let root = bisect_step_response(1e-3);
        assert!((root - 9.2335).abs() < 1e-3);
        let expected = (root * 10.0).ceil() / 10.0;
        assert!((step_plan(1e-3).settle_time().unwrap() - expected).abs() < 1e-12);
        assert!((expected - 9.3).abs() < 1e-12);

        let root = bisect_step_response(0.5);
        let expected = (root * 10.0).ceil() / 10.0;
        assert!((step_plan(0.5).settle_time().unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.7).abs() < 1e-12);

        let settled = ReferencePlan::new(
            preset_sync(),
            vec![2.0, -1.0],
            2.0,
            vec![2.0, -1.0],
            vec![0.0; 2],
            1e-3,
        )
        .unwrap();
        assert!((settled.settle_time().unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn settle_time_errors() {
        let zero =
            ReferencePlan::new(preset_sync(), vec![0.0], 1.0, vec![1.0], vec![0.0], 1e-3).unwrap();
        assert!(zero.settle_time().is_err());
        // Huge initial distance cannot settle to 1e-6 within 20τ.
        let far =
            ReferencePlan::new(preset_sync(), vec![1e-3], 1.0, vec![1e6], vec![0.0], 1e-6).unwrap();
        assert!(matches!(far.settle_time(), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn reference_starts_at_initial_phases() {
        let plan = three_plan(vec![PI / 2.0, PI / 2.0, PI]);
        let s = plan.reference_state(0.0);
        for (a, b) in s.theta.iter().zip([0.5, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        for r in &s.thetadot {
            assert!((r - 8.5).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_rate_converges_to_sync_rate() {
        let plan = three_plan(vec![PI / 2.0, PI / 2.0, PI]);
        for t in [30.0, 35.5, 40.0] {
            let s = plan.reference_state(t);
            for r in &s.thetadot {
                assert!((r - ((0.5 * t).cos() + 7.5)).abs() < 1e-9);
                assert!((6.5..=8.5).contains(r));
            }
        }
    }

    #[test]
    fn nominal_control_steady_state() {
        let plan = three_plan(vec![PI / 2.0, PI / 2.0, PI]);
        let model = three_model(ControlMode::Multiplicative);
        let t = 38.0;
        let u = nominal_control(&plan, &model, t).unwrap();
        let rate = (0.5 * t).cos() + 7.5;
        assert!((u[0] - 3.0 * (rate - 5.0)).abs() < 1e-8);
        assert!((u[1] - 3.0 * (rate - 7.0)).abs() < 1e-8);
        // Third denominator: sin(−π/2) + sin(−π/2) = −2.
        assert!((u[2] - 3.0 * (rate - 8.0) / -2.0).abs() < 1e-8);
    }

    #[test]
    fn nominal_control_additive_zero() {
        let sync = SyncFunction {
            linear_rate: 3.0,
            offset: 0.0,
            sine_amplitude: 0.0,
            sine_frequency: 0.0,
            sine_phase: 0.0,
        };
        let plan =
            ReferencePlan::new(sync, vec![0.0; 3], 1.0, vec![0.0; 3], vec![0.0; 3], 1e-3).unwrap();
        let model = NetworkModel::all_to_all(vec![3.0; 3], 1.0, ControlMode::Additive).unwrap();
        assert_eq!(nominal_control(&plan, &model, 4.0).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn nominal_control_reports_singularity() {
        let plan = three_plan(vec![0.0; 3]);
        let model = three_model(ControlMode::Multiplicative);
        match nominal_control(&plan, &model, 30.0) {
            Err(Error::Singular { time, .. }) => assert_eq!(time, 30.0),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn preset_plan_has_no_blocking_violations() {
        let plan = three_plan(vec![PI / 2.0, PI / 2.0, PI]);
        let report =
            validate_plan(&plan, &three_model(ControlMode::Multiplicative), 40.0, 0.01).unwrap();
        assert!(report.is_ok(), "{report}");
        // u*_2 and u*_3 change sign with the sinusoid in f; these are warnings only.
        assert!(report.count(Condition::NonPositiveControl) > 0);
        assert_eq!(report.count(Condition::SingularDenominator), 0);
    }

    #[test]
    fn equal_offsets_are_singular() {
        let plan = three_plan(vec![0.0; 3]);
        let report =
            validate_plan(&plan, &three_model(ControlMode::Multiplicative), 40.0, 0.01).unwrap();
        for i in 0..3 {
            assert!(report.violations.iter().any(|v| v.oscillator == i
                && v.condition == Condition::SingularDenominator
                && v.time > 20.0));
        }
        let additive =
            validate_plan(&plan, &three_model(ControlMode::Additive), 40.0, 0.01).unwrap();
        assert!(additive.is_ok() && additive.warnings.is_empty());
    }

    #[test]
    fn sign_changing_sync_rate_is_flagged() {
        let sync = SyncFunction {
            linear_rate: 0.0,
            ..preset_sync()
        };
        assert!(!sync.is_strictly_increasing());
        assert!(preset_sync().is_strictly_increasing());
        let model = NetworkModel::all_to_all(vec![1.0, 1.0], 1.0, ControlMode::Additive).unwrap();
        let plan =
            ReferencePlan::new(sync, vec![1.0; 2], 1.0, vec![1.0; 2], vec![0.0; 2], 1e-3).unwrap();
        let report = validate_plan(&plan, &model, 20.0, 0.01).unwrap();
        assert!(!report.is_ok());
        for v in &report.violations {
            assert_eq!(v.condition, Condition::NonPositiveRate);
            assert!((0.5 * v.time).cos() <= 1e-12);
        }
        // cos(0.5t) < 0 on (π, 3π); the sampled violations must cover it.
        assert!(report
            .violations
            .iter()
            .any(|v| (v.time - 6.0).abs() < 1e-9));
    }

    proptest! {
        #[test]
        fn filter_satisfies_its_ode(
            c in -10.0f64..10.0,
            g0 in -10.0f64..10.0,
            gdot0 in -10.0f64..10.0,
            tau in 0.05f64..5.0,
            t in 0.0f64..30.0,
        ) {
            let s = solve_g(c, g0, gdot0, tau, t).unwrap();
            let residual = tau * tau * s.gddot + 2.0 * tau * s.gdot + s.g - c;
            prop_assert!(residual.abs() < 1e-9);
        }

        #[test]
        fn filter_rate_matches_central_difference(
            c in -5.0f64..5.0,
            g0 in -5.0f64..5.0,
            gdot0 in -5.0f64..5.0,
            tau in 0.2f64..5.0,
            t in 0.01f64..10.0,
        ) {
            let h = 1e-5;
            let s = solve_g(c, g0, gdot0, tau, t).unwrap();
            let fd = (solve_g(c, g0, gdot0, tau, t + h).unwrap().g
                - solve_g(c, g0, gdot0, tau, t - h).unwrap().g) / (2.0 * h);
            prop_assert!((s.gdot - fd).abs() <= 1e-6 * s.gdot.abs().max(1.0));
        }

        #[test]
        fn settled_reference_meets_tolerance(
            c in prop::collection::vec(0.1f64..4.0, 3),
            g0 in prop::collection::vec(-8.0f64..8.0, 3),
            tau in 0.2f64..3.0,
        ) {
            let plan = ReferencePlan::new(preset_sync(), c.clone(), tau, g0, vec![0.0; 3], 1e-3).unwrap();
            let tf = plan.settle_time().unwrap();
            for (i, ci) in c.iter().enumerate() {
                prop_assert!(((plan.filter(i, tf).g - ci) / ci).abs() <= 1e-3);
            }
        }
    }
}
