//! End-to-end tests of the `uavcov` binary: output shape, exit codes, and
//! byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uavcov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn field(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing field {key} in:\n{stdout}"))
        .to_string()
}

fn write_scenario(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("scenario written");
    path
}

const REFERENCE: &str = "[building]\nx_b = 20.0\ny_b = 50.0\nz_b = 250.0\n";
const SMALL: &str = "[building]\nx_b = 10.0\ny_b = 10.0\nz_b = 20.0\n\n[users]\ngenerate = 4\n";
const ASYMMETRIC: &str = "[building]\nx_b = 20.0\ny_b = 50.0\nz_b = 200.0\n\n[users]\nexplicit = [[5.0, 10.0, 2.5], [5.0, 35.0, 2.5]]\n";

#[test]
fn worst_case_reports_the_reference_design() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&["worst-case", scenario.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(field(&text, "theta_deg"), "48.6529");
    assert_eq!(field(&text, "cos_theta"), "0.660619");
    assert_eq!(field(&text, "d_opt_m"), "87.1188");
    assert_eq!(field(&text, "p_tmin_dbm"), "-1.42308");
}

#[test]
fn worst_case_json_carries_all_six_fields() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&["worst-case", scenario.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    for key in ["theta_deg", "cos_theta", "d_h_m", "d_opt_m", "worst_corner_loss_db", "p_tmin_dbm"]
    {
        assert!(value.get(key).is_some_and(|v| v.is_number()), "missing {key}: {value}");
    }
}

#[test]
fn infeasible_geometry_exits_2_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let squat =
        write_scenario(dir.path(), "squat.toml", "[building]\nx_b = 20.0\ny_b = 500.0\nz_b = 100.0\n");
    let out = run(&["worst-case", squat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("geometry infeasible"), "stderr: {}", stderr_of(&out));
}

#[test]
fn optimize_converges_on_the_reference_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&["optimize", scenario.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(field(&text, "converged"), "true");
    assert_eq!(field(&text, "feasible"), "true");
    assert_eq!(field(&text, "y_uav_m"), "25");
    assert_eq!(field(&text, "z_uav_m"), "125");
    assert!(field(&text, "iterations").parse::<usize>().unwrap() <= 500);
}

#[test]
fn exhausted_iteration_budget_exits_3_but_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&["optimize", scenario.to_str().unwrap(), "--max-iters", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(field(&stdout_of(&out), "converged"), "false");
}

#[test]
fn asymmetric_layout_exits_4_and_points_to_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "asym.toml", ASYMMETRIC);
    let out = run(&["optimize", scenario.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("oracle"), "stderr: {}", stderr_of(&out));
}

#[test]
fn trace_file_has_one_row_per_iteration_plus_the_start() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let trace = dir.path().join("trace.csv");
    let out = run(&[
        "optimize",
        scenario.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let iterations: usize = field(&stdout_of(&out), "iterations").parse().unwrap();
    let body = std::fs::read_to_string(&trace).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("n,x_uav_m,objective_db_sum"));
    assert_eq!(lines.count(), iterations + 1);
}

#[test]
fn oracle_agrees_with_optimize_within_one_cell() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "small.toml", SMALL);
    let opt = run(&["optimize", scenario.to_str().unwrap()]);
    assert_eq!(opt.status.code(), Some(0));
    let x_opt: f64 = field(&stdout_of(&opt), "x_uav_m").parse().unwrap();

    let oracle = run(&["oracle", scenario.to_str().unwrap(), "--resolution", "0.5"]);
    assert_eq!(oracle.status.code(), Some(0));
    let text = stdout_of(&oracle);
    let x_grid: f64 = field(&text, "x_uav_m").parse().unwrap();
    let y_grid: f64 = field(&text, "y_uav_m").parse().unwrap();
    let z_grid: f64 = field(&text, "z_uav_m").parse().unwrap();
    assert!((x_opt - x_grid).abs() <= 0.5, "optimize {x_opt} vs oracle {x_grid}");
    assert!((y_grid - 5.0).abs() <= 0.5, "lateral minimizer {y_grid}");
    assert!((z_grid - 10.0).abs() <= 0.5, "vertical minimizer {z_grid}");
}

#[test]
fn oversized_resolution_collapses_to_one_lattice_point() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "small.toml", SMALL);
    let out = run(&["oracle", scenario.to_str().unwrap(), "--resolution", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(field(&text, "lattice_points"), "1");
    assert_eq!(field(&text, "x_uav_m"), "-500");
}

#[test]
fn non_positive_resolution_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "small.toml", SMALL);
    for resolution in ["0", "-2"] {
        let out = run(&["oracle", scenario.to_str().unwrap(), "--resolution", resolution]);
        assert_eq!(out.status.code(), Some(64), "resolution {resolution}");
    }
}

#[test]
fn angle_sweep_argmin_lands_on_the_reference_angle() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&[
        "sweep",
        scenario.to_str().unwrap(),
        "--axis",
        "angle",
        "--range",
        "1:90",
        "--steps",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_deg,p_tmin_dbm"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, v) = l.split_once(',').unwrap();
            (a.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 500);
    let step = rows[1].0 - rows[0].0;
    let best = rows.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert!((best.0 - 48.654).abs() <= step, "argmin at {} deg", best.0);
}

#[test]
fn sweep_writes_the_output_file_and_keeps_stdout_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        scenario.to_str().unwrap(),
        "--axis",
        "standoff",
        "--range",
        "1:150",
        "--steps",
        "3",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().next(), Some("standoff_m,p_tmin_dbm"));
    let first_axis: Vec<&str> =
        body.lines().skip(1).map(|l| l.split_once(',').unwrap().0).collect();
    assert_eq!(first_axis, vec!["1", "75.5", "150"]);
}

#[test]
fn height_and_width_sweeps_show_the_documented_trends() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let parse_rows = |text: &str| -> Vec<(f64, f64)> {
        text.lines()
            .skip(1)
            .map(|l| {
                let (a, v) = l.split_once(',').unwrap();
                (a.parse().unwrap(), v.parse().unwrap())
            })
            .collect()
    };

    let heights = run(&[
        "sweep", scenario.to_str().unwrap(), "--axis", "height", "--range", "200:300", "--steps", "3",
    ]);
    assert_eq!(heights.status.code(), Some(0));
    let text = stdout_of(&heights);
    assert_eq!(text.lines().next(), Some("z_b_m,x_uav_m"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 3);
    for pair in rows.windows(2) {
        assert!(-pair[1].1 > -pair[0].1, "standoff not increasing: {rows:?}");
    }

    let widths = run(&[
        "sweep", scenario.to_str().unwrap(), "--axis", "width", "--range", "10:50", "--steps", "5",
    ]);
    assert_eq!(widths.status.code(), Some(0));
    let text = stdout_of(&widths);
    assert_eq!(text.lines().next(), Some("x_b_m,x_uav_m"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 5);
    for pair in rows.windows(2) {
        assert!(-pair[1].1 < -pair[0].1, "standoff not decreasing: {rows:?}");
    }
}

#[test]
fn layout_rebuilding_sweeps_need_generated_users() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "asym.toml", ASYMMETRIC);
    let out = run(&[
        "sweep", scenario.to_str().unwrap(), "--axis", "height", "--range", "200:300", "--steps", "3",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let path = scenario.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["sweep", path, "--axis", "bogus", "--range", "1:2"],
        vec!["sweep", path, "--axis", "standoff", "--range", "50:10", "--steps", "5"],
        vec!["sweep", path, "--axis", "standoff", "--range", "oops", "--steps", "5"],
        vec!["optimize"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let out = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(64), "args: {args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    for args in [["--help"], ["--version"]] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
    }
}

#[test]
fn unreadable_scenario_exits_1() {
    let out = run(&["optimize", "/nonexistent/scenario.toml"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_round_trips_and_counts_users() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.toml");
    let out = run(&[
        "gen", path.to_str().unwrap(), "--x-b", "20", "--y-b", "50", "--z-b", "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(field(&text, "users"), "800");
    assert_eq!(field(&text, "floors"), "40");

    // The generated file is a valid scenario for every other subcommand.
    let reread = run(&["worst-case", path.to_str().unwrap()]);
    assert_eq!(reread.status.code(), Some(0));
}

#[test]
fn gen_rejects_odd_users_and_non_divisor_floors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.toml");
    let odd = run(&[
        "gen", path.to_str().unwrap(), "--x-b", "20", "--y-b", "50", "--z-b", "200",
        "--users-per-floor", "7",
    ]);
    assert_eq!(odd.status.code(), Some(64));
    let nondivisor = run(&[
        "gen", path.to_str().unwrap(), "--x-b", "20", "--y-b", "50", "--z-b", "203",
    ]);
    assert_eq!(nondivisor.status.code(), Some(64));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let path = scenario.to_str().unwrap();
    for args in [
        vec!["worst-case", path],
        vec!["optimize", path],
        vec!["sweep", path, "--axis", "angle", "--range", "1:90", "--steps", "100"],
        vec!["optimize", path, "--json"],
    ] {
        let first = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
        let second = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn optimize_json_parses_with_the_expected_keys() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), "ref.toml", REFERENCE);
    let out = run(&["optimize", scenario.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    for key in ["x_uav_m", "y_uav_m", "z_uav_m", "objective_db_sum", "iterations"] {
        assert!(value.get(key).is_some_and(|v| v.is_number()), "missing {key}: {value}");
    }
    assert_eq!(value["converged"], serde_json::Value::Bool(true));
}
