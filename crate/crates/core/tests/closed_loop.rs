use kuramoto_heol::presets::{paper_additive, paper_multiplicative, preset, PRESET_NAMES};
use kuramoto_heol::{metrics, run, FeedbackMode, UncertaintySet};

#[test]
fn nominal_plant_synchronizes() {
    for mut cfg in [paper_multiplicative(), paper_additive()] {
        cfg.uncertainty = UncertaintySet::identity(cfg.n());
        cfg.noise_std = 0.0;
        let tf = cfg.plan.settle_time().unwrap();
        let m = metrics(&run(&cfg).unwrap(), tf);
        assert!(m.max_abs_delta_theta < 1e-3, "{m:?}");
        assert!(m.thetadot_min > 6.0 && m.thetadot_max < 9.0, "{m:?}");
    }
}

#[test]
fn feedback_reduces_mismatch_error() {
    for name in PRESET_NAMES {
        let mut closed = preset(name).unwrap();
        closed.noise_std = 0.0;
        let mut open = closed.clone();
        open.feedback = FeedbackMode::Open;
        let tf = closed.plan.settle_time().unwrap();
        let c = metrics(&run(&closed).unwrap(), tf).overall_rms();
        let o = metrics(&run(&open).unwrap(), tf).overall_rms();
        assert!(c * 100.0 < o, "{name}: closed {c}, open {o}");
    }
}

#[test]
fn seeds_change_noise_only() {
    let mut a = paper_multiplicative();
    let mut b = a.clone();
    a.seed = 3;
    b.seed = 4;
    let (ta, tb) = (run(&a).unwrap(), run(&b).unwrap());
    assert_eq!(ta.rows[0].theta, tb.rows[0].theta);
    assert_ne!(ta.rows.last().unwrap().theta, tb.rows.last().unwrap().theta);
    assert_eq!(
        ta.rows.last().unwrap().theta_star,
        tb.rows.last().unwrap().theta_star
    );
}
