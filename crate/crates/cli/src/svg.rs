//! Static SVG line charts, one file per figure group with one panel per
//! oscillator. Measured signals are drawn solid blue, references dashed red.

use std::fmt::Write as _;

use kuramoto_heol::{SimulationTrace, TraceRow};

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 240.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 12.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 36.0;

type Getter = fn(&TraceRow) -> &Vec<f64>;

/// A figure: file stem, title, measured series and optional reference.
pub struct Figure {
    pub file: &'static str,
    pub title: &'static str,
    pub symbol: &'static str,
    actual: Getter,
    reference: Option<Getter>,
}

pub fn figures() -> [Figure; 4] {
    [
        Figure {
            file: "controls.svg",
            title: "Control inputs",
            symbol: "u",
            actual: |r| &r.u,
            reference: Some(|r| &r.u_star),
        },
        Figure {
            file: "outputs.svg",
            title: "Outputs",
            symbol: "θ",
            actual: |r| &r.theta,
            reference: Some(|r| &r.theta_star),
        },
        Figure {
            file: "output-derivatives.svg",
            title: "Time derivative outputs",
            symbol: "dθ/dt",
            actual: |r| &r.thetadot,
            reference: Some(|r| &r.thetadot_star),
        },
        Figure {
            file: "tracking-errors.svg",
            title: "Tracking errors",
            symbol: "δθ",
            actual: |r| &r.delta_theta,
            reference: None,
        },
    ]
}

fn nice_range(lo: f64, hi: f64) -> (f64, f64) {
    if !lo.is_finite() || !hi.is_finite() {
        return (-1.0, 1.0);
    }
    if (hi - lo).abs() < 1e-12 {
        let pad = lo.abs().max(1.0) * 0.05;
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn polyline(out: &mut String, points: impl Iterator<Item = (f64, f64)>, style: &str) {
    let mut coords = String::new();
    for (x, y) in points {
        let _ = write!(coords, "{x:.2},{y:.2} ");
    }
    let _ = writeln!(
        out,
        r#"<polyline fill="none" {style} points="{}"/>"#,
        coords.trim_end()
    );
}

pub fn render(figure: &Figure, trace: &SimulationTrace) -> String {
    let n = trace.n();
    let width = PANEL_W * n.max(1) as f64;
    let height = PANEL_H + 24.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="16" text-anchor="middle" font-size="14">{}</text>"#,
        width / 2.0,
        figure.title
    );

    let (t0, t1) = match (trace.rows.first(), trace.rows.last()) {
        (Some(a), Some(b)) if b.time > a.time => (a.time, b.time),
        _ => (0.0, 1.0),
    };
    for i in 0..n {
        let x0 = PANEL_W * i as f64;
        let y0 = 24.0;
        let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
        let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
        let series = |get: Getter| trace.rows.iter().map(move |r| (r.time, get(r)[i]));
        let (lo, hi) = series(figure.actual)
            .chain(figure.reference.into_iter().flat_map(series))
            .map(|(_, v)| v)
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        let (lo, hi) = nice_range(lo, hi);
        let px = |t: f64| x0 + MARGIN_L + (t - t0) / (t1 - t0) * plot_w;
        let py = |v: f64| y0 + MARGIN_T + (hi - v) / (hi - lo) * plot_h;

        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#888"/>"##,
            x0 + MARGIN_L,
            y0 + MARGIN_T
        );
        let label = match figure.reference {
            Some(_) => format!(
                "{0}_{1} (blue), {0}*_{1} (red dashed)",
                figure.symbol,
                i + 1
            ),
            None => format!("{}_{}", figure.symbol, i + 1),
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            x0 + MARGIN_L + plot_w / 2.0,
            y0 + MARGIN_T - 8.0
        );
        for (v, anchor_y) in [(hi, py(hi) + 4.0), (lo, py(lo))] {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{anchor_y:.2}" text-anchor="end">{v:.3}</text>"#,
                x0 + MARGIN_L - 4.0
            );
        }
        let axis_y = y0 + MARGIN_T + plot_h + 14.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{axis_y:.2}" text-anchor="start">{t0}</text>"#,
            px(t0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{axis_y:.2}" text-anchor="end">{t1} s</text>"#,
            px(t1)
        );

        let clamp = |v: f64| if v.is_finite() { v } else { lo };
        polyline(
            &mut out,
            series(figure.actual).map(|(t, v)| (px(t), py(clamp(v)))),
            r##"stroke="#1f4fd6" stroke-width="1""##,
        );
        if let Some(get) = figure.reference {
            polyline(
                &mut out,
                series(get).map(|(t, v)| (px(t), py(clamp(v)))),
                r##"stroke="#d62728" stroke-width="1" stroke-dasharray="5,3""##,
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_trace() -> SimulationTrace {
        let row = |t: f64| TraceRow {
            time: t,
            theta: vec![t, 2.0 * t],
            theta_star: vec![t, t],
            thetadot: vec![1.0, 2.0],
            thetadot_star: vec![1.0, 1.0],
            u: vec![0.0; 2],
            u_star: vec![0.0; 2],
            delta_theta: vec![0.0, t],
            f_est: vec![0.0; 2],
        };
        SimulationTrace {
            rows: (0..5).map(|k| row(k as f64)).collect(),
            events: vec![],
        }
    }

    #[test]
    fn one_panel_per_oscillator() {
        let trace = tiny_trace();
        for fig in figures() {
            let svg = render(&fig, &trace);
            assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
            let lines = svg.matches("<polyline").count();
            let per_panel = if fig.reference.is_some() { 2 } else { 1 };
            assert_eq!(lines, 2 * per_panel, "{}", fig.file);
            assert!(!svg.contains("NaN"));
        }
    }

    #[test]
    fn flat_series_get_a_range() {
        assert!(nice_range(3.0, 3.0).0 < 3.0);
        assert_eq!(nice_range(f64::NAN, 1.0), (-1.0, 1.0));
    }
}
