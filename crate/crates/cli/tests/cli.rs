use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kuramoto_heol_cli::output::{header, read_trace_csv};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kuramoto-heol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_preset(name: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", "--preset", name, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    bin(&args)
}

fn write_scenario(dir: &Path, preset: &str, edit: impl Fn(String) -> String) -> String {
    let text = String::from_utf8(bin(&["scenario", preset]).stdout).unwrap();
    let path = dir.join("scenario.toml");
    fs::write(&path, edit(text)).unwrap();
    path.to_str().unwrap().to_string()
}

fn zero_offsets(text: String) -> String {
    text.lines()
        .map(|l| {
            if l.starts_with("offsets") {
                "offsets = [0, 0, 0]"
            } else {
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn run_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_preset("paper-multiplicative", dir.path(), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for file in [
        "trace.csv",
        "metrics.txt",
        "controls.svg",
        "outputs.svg",
        "output-derivatives.svg",
        "tracking-errors.svg",
    ] {
        assert!(dir.path().join(file).is_file(), "{file}");
    }
    let metrics = fs::read_to_string(dir.path().join("metrics.txt")).unwrap();
    assert!(metrics.contains("sync_error = 0.911707583385283"));
    assert!(metrics.contains("events_alpha_guard = 0"));
}

#[test]
fn trace_schema() {
    let dir = tempfile::tempdir().unwrap();
    run_preset("paper-additive", dir.path(), &["--no-noise"]);
    let text = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), header(3).join(","));
    let trace = read_trace_csv(text.as_bytes()).unwrap();
    assert_eq!(trace.len(), 4001);
    assert_eq!(trace.rows[0].time, 0.0);
    assert_eq!(trace.rows.last().unwrap().time, 40.0);
}

#[test]
fn open_loop_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_preset(
        "paper-multiplicative",
        dir.path(),
        &["--open-loop", "--no-noise"],
    );
    assert_eq!(out.status.code(), Some(0));
    let metrics = fs::read_to_string(dir.path().join("metrics.txt")).unwrap();
    assert!(metrics.contains("feedback = open"), "{metrics}");
}

#[test]
fn same_seed_same_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_preset("paper-multiplicative", a.path(), &["--seed", "7"]);
    run_preset("paper-multiplicative", b.path(), &["--seed", "7"]);
    let read = |d: &Path| fs::read(d.join("trace.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["run", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(
        bin(&["run", "--scenario", "/nonexistent/scenario.toml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["scenario", "nope"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "paper-additive", |t| t + "\n[bogus]\nx = 1\n");
    let out = bin(&["validate", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_exit_codes() {
    assert_eq!(
        bin(&["validate", "--preset", "paper-additive"])
            .status
            .code(),
        Some(0)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "paper-multiplicative", zero_offsets);
    assert_eq!(
        bin(&["validate", "--scenario", &path]).status.code(),
        Some(3)
    );

    let out_dir = dir.path().join("out");
    let out_dir = out_dir.to_str().unwrap();
    let refused = bin(&["run", "--scenario", &path, "--out", out_dir]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(!Path::new(out_dir).join("trace.csv").exists());

    let forced = bin(&["run", "--scenario", &path, "--out", out_dir, "--force"]);
    assert_eq!(forced.status.code(), Some(4));
}

#[test]
fn additive_accepts_equal_offsets() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "paper-additive", zero_offsets);
    assert_eq!(
        bin(&["validate", "--scenario", &path]).status.code(),
        Some(0)
    );
}

#[test]
fn lists_presets() {
    let out = bin(&["presets"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "paper-multiplicative\npaper-additive\n");
}
