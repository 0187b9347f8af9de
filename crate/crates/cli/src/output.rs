//! `trace.csv` and `metrics.txt`.

use std::fmt::Write as _;
use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use kuramoto_heol::{EventKind, SimulationTrace, SyncMetrics, TraceRow};

/// Column groups in file order.
pub const SERIES: [&str; 8] = [
    "theta",
    "theta_star",
    "thetadot",
    "thetadot_star",
    "u",
    "u_star",
    "delta_theta",
    "f_est",
];

pub fn header(n: usize) -> Vec<String> {
    let mut cols = vec!["t".to_string()];
    for name in SERIES {
        cols.extend((1..=n).map(|i| format!("{name}_{i}")));
    }
    cols
}

fn groups(row: &TraceRow) -> [&Vec<f64>; 8] {
    [
        &row.theta,
        &row.theta_star,
        &row.thetadot,
        &row.thetadot_star,
        &row.u,
        &row.u_star,
        &row.delta_theta,
        &row.f_est,
    ]
}

/// Writes the trace with shortest round-trip formatting of every value.
pub fn write_trace_csv<W: Write>(trace: &SimulationTrace, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(trace.n()))?;
    for row in &trace.rows {
        let mut record = vec![row.time.to_string()];
        for group in groups(row) {
            record.extend(group.iter().map(f64::to_string));
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trace written by [`write_trace_csv`]. Events are not stored in
/// the CSV and come back empty.
pub fn read_trace_csv<R: Read>(input: R) -> Result<SimulationTrace> {
    let mut r = csv::Reader::from_reader(input);
    let head: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if head.len() < 1 + SERIES.len() || !(head.len() - 1).is_multiple_of(SERIES.len()) {
        bail!("trace header has {} columns", head.len());
    }
    let n = (head.len() - 1) / SERIES.len();
    if head != header(n) {
        bail!("unexpected trace header");
    }
    let mut trace = SimulationTrace::default();
    for (line, record) in r.records().enumerate() {
        let record = record?;
        let values = record
            .iter()
            .map(|v| v.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("row {}", line + 2))?;
        let group = |k: usize| values[1 + k * n..1 + (k + 1) * n].to_vec();
        trace.rows.push(TraceRow {
            time: values[0],
            theta: group(0),
            theta_star: group(1),
            thetadot: group(2),
            thetadot_star: group(3),
            u: group(4),
            u_star: group(5),
            delta_theta: group(6),
            f_est: group(7),
        });
    }
    Ok(trace)
}

/// Run description written at the top of `metrics.txt`.
pub struct RunInfo<'a> {
    pub source: &'a str,
    pub mode: &'a str,
    pub feedback: &'a str,
    pub seed: u64,
    pub noise_std: f64,
    pub t_f_source: &'a str,
}

pub fn metrics_text(info: &RunInfo, m: &SyncMetrics, trace: &SimulationTrace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "source = {}", info.source);
    let _ = writeln!(s, "mode = {}", info.mode);
    let _ = writeln!(s, "feedback = {}", info.feedback);
    let _ = writeln!(s, "seed = {}", info.seed);
    let _ = writeln!(s, "noise_std = {}", info.noise_std);
    let _ = writeln!(s, "t_f = {}", m.t_f);
    let _ = writeln!(s, "t_f_source = {}", info.t_f_source);
    let _ = writeln!(s, "samples_after_t_f = {}", m.samples);
    let _ = writeln!(s, "sync_error = {}", m.sync_error);
    for (i, r) in m.rms_delta_theta.iter().enumerate() {
        let _ = writeln!(s, "rms_delta_theta_{} = {r}", i + 1);
    }
    let _ = writeln!(s, "rms_delta_theta = {}", m.overall_rms());
    let _ = writeln!(s, "max_abs_delta_theta = {}", m.max_abs_delta_theta);
    let _ = writeln!(s, "thetadot_min = {}", m.thetadot_min);
    let _ = writeln!(s, "thetadot_max = {}", m.thetadot_max);
    let _ = writeln!(
        s,
        "events_alpha_guard = {}",
        trace.count(EventKind::AlphaGuard)
    );
    let _ = writeln!(
        s,
        "events_estimator_warmup = {}",
        trace.count(EventKind::EstimatorWarmup)
    );
    s
}
