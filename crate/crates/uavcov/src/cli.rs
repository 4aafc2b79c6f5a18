//! Command-line front end: worst-case analysis, gradient-descent placement,
//! the grid-search oracle, axis sweeps, and scenario generation.
//!
//! Output discipline: every numeric value is printed with six significant
//! digits, angles appear in degrees, and identical invocations produce
//! byte-identical stdout. `--json` swaps the `key = value` lines for a single
//! JSON object with the same keys. Diagnostics and warnings go to stderr.
//!
//! Exit codes: 0 success (and, where applicable, a feasible result),
//! 1 runtime failure (unreadable scenario, violated link budget), 2 geometry
//! infeasible, 3 non-convergence, 4 unmet precondition (asymmetric layout
//! where symmetry is required, explicit users on a layout-rebuilding sweep),
//! 64 usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::geometry::BuildingSpec;
use crate::linkbudget::worst_case_min_tx_power;
use crate::placement::{
    check_feasibility, descend_x_with_trace, grid_search, DescentStep, GradientDescentConfig,
    PlacementResult,
};
use crate::scenario::{
    format_sig6, load_scenario, save_scenario, save_sweep_csv, write_sweep_csv, Scenario,
    SweepTable,
};
use crate::worstcase::{
    check_range, linspace, optimal_standoff, solve_optimal_angle, sweep_power_vs_angle,
    sweep_power_vs_standoff, worst_corner_path_loss,
};

#[derive(Parser)]
#[command(
    name = "uavcov",
    version,
    about = "Efficient 3D placement of a UAV base station covering indoor users"
)]
struct Cli {
    /// Emit one JSON object instead of key = value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Worst-corner design: optimal incidence angle, standoff, and transmit power.
    WorstCase(WorstCaseArgs),
    /// Minimize the summed loss over the scenario's users by gradient descent.
    Optimize(OptimizeArgs),
    /// Exhaustive lattice search over the flight bounds (works for any layout).
    Oracle(OracleArgs),
    /// Tabulate one swept axis as CSV.
    Sweep(SweepArgs),
    /// Write a scenario file with a generated symmetric layout.
    Gen(GenArgs),
}

#[derive(Args)]
struct WorstCaseArgs {
    /// Scenario TOML file.
    scenario: PathBuf,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Scenario TOML file.
    scenario: PathBuf,
    /// Gradient step in m/(dB/m) [default: 0.01].
    #[arg(long)]
    step_size: Option<f64>,
    /// Convergence threshold on |Δx| in meters [default: 1e-4].
    #[arg(long)]
    tolerance: Option<f64>,
    /// Iteration budget [default: 500].
    #[arg(long)]
    max_iters: Option<usize>,
    /// Starting x; omit to seed from a coarse objective scan.
    #[arg(long)]
    initial_x: Option<f64>,
    /// Halve the step whenever a step would increase the objective.
    #[arg(long)]
    halve_on_increase: bool,
    /// Write the per-iteration (n, x, objective) trace to this CSV file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Scenario TOML file.
    scenario: PathBuf,
    /// Lattice spacing in meters.
    #[arg(long, default_value_t = 2.0)]
    resolution: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepAxis {
    /// Facade standoff in meters; tabulates worst-corner transmit power.
    Standoff,
    /// Incidence angle in degrees; tabulates worst-corner transmit power.
    Angle,
    /// Building height z_b; re-optimizes per height and tabulates x_UAV.
    Height,
    /// Building depth x_b; re-optimizes per depth and tabulates x_UAV.
    Width,
}

#[derive(Args)]
struct SweepArgs {
    /// Scenario TOML file.
    scenario: PathBuf,
    /// Quantity to sweep.
    #[arg(long, value_enum)]
    axis: SweepAxis,
    /// Inclusive range LO:HI in the axis unit (meters or degrees).
    #[arg(long, value_parser = parse_range)]
    range: (f64, f64),
    /// Number of samples across the range.
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Where to write the scenario TOML file.
    output: PathBuf,
    /// Building depth in meters.
    #[arg(long)]
    x_b: f64,
    /// Building width in meters.
    #[arg(long)]
    y_b: f64,
    /// Building height in meters.
    #[arg(long)]
    z_b: f64,
    /// Floor height in meters; must divide z_b.
    #[arg(long, default_value_t = 5.0)]
    floor_height: f64,
    /// Users per floor; must be even.
    #[arg(long, default_value_t = 20)]
    users_per_floor: usize,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

/// Parses arguments from the process environment, runs the selected command,
/// and returns the exit code for `std::process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return code;
        }
    };
    let json = cli.json;
    let outcome = match cli.command {
        Command::WorstCase(args) => cmd_worst_case(&args, json),
        Command::Optimize(args) => cmd_optimize(&args, json),
        Command::Oracle(args) => cmd_oracle(&args, json),
        Command::Sweep(args) => cmd_sweep(&args, json),
        Command::Gen(args) => cmd_gen(&args, json),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

/// Maps error classes onto the documented exit codes. Flag-shaped problems
/// (bad ranges, resolutions, dimensions) count as usage errors.
fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::GeometryInfeasible { .. } => 2,
        Error::DescentDidNotConverge { .. } => 3,
        Error::AsymmetricLayout | Error::SweepNeedsGeneratedLayout => 4,
        Error::InvalidResolution(_)
        | Error::InvalidSweepRange { .. }
        | Error::InvalidBuilding { .. }
        | Error::OddUsersPerFloor(_)
        | Error::InvalidDescentConfig { .. } => 64,
        _ => 1,
    }
}

/// One output value, pre-rendered per the six-significant-digit convention.
/// `Raw` carries text that is already valid JSON (nested arrays).
enum Field {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Raw(String),
}

fn emit(pairs: &[(&str, Field)], json: bool) {
    let render = |f: &Field| match f {
        Field::Num(v) => format_sig6(*v),
        Field::Int(v) => v.to_string(),
        Field::Bool(v) => v.to_string(),
        Field::Text(s) => serde_json::to_string(s).expect("string serializes"),
        Field::Raw(s) => s.clone(),
    };
    if json {
        let body: Vec<String> =
            pairs.iter().map(|(k, v)| format!("\"{k}\":{}", render(v))).collect();
        println!("{{{}}}", body.join(","));
    } else {
        for (k, v) in pairs {
            match v {
                Field::Text(s) | Field::Raw(s) => println!("{k} = {s}"),
                other => println!("{k} = {}", render(other)),
            }
        }
    }
}

fn cmd_worst_case(args: &WorstCaseArgs, json: bool) -> Result<i32> {
    let scenario = load_scenario(&args.scenario)?;
    let angle = solve_optimal_angle(&scenario.rf)?;
    let standoff = optimal_standoff(&scenario.building, angle.theta)?;
    // A negative optimal standoff cannot be flown; report the figures at the
    // facade clamp and signal the geometric problem through the exit code.
    let flown = standoff.d_opt.max(0.0);
    let loss = worst_corner_path_loss(flown, &scenario.building, &scenario.rf)?;
    let p_tmin = worst_case_min_tx_power(loss, &scenario.link);
    emit(
        &[
            ("theta_deg", Field::Num(angle.theta.to_degrees())),
            ("cos_theta", Field::Num(angle.cos_theta)),
            ("d_h_m", Field::Num(standoff.d_h)),
            ("d_opt_m", Field::Num(standoff.d_opt)),
            ("worst_corner_loss_db", Field::Num(loss)),
            ("p_tmin_dbm", Field::Num(p_tmin)),
        ],
        json,
    );
    if !standoff.feasible {
        eprintln!(
            "warning: the optimal standoff is negative (building depth exceeds the optimal \
             horizontal reach); loss and power above are evaluated at the facade, d = 0"
        );
        return Ok(2);
    }
    Ok(0)
}

fn placement_fields(result: &PlacementResult, count_key: &'static str) -> Vec<(&'static str, Field)> {
    vec![
        ("x_uav_m", Field::Num(result.uav_position.x)),
        ("y_uav_m", Field::Num(result.uav_position.y)),
        ("z_uav_m", Field::Num(result.uav_position.z)),
        ("objective_db_sum", Field::Num(result.objective_db_sum)),
        (count_key, Field::Int(result.iterations_used)),
        ("converged", Field::Bool(result.converged)),
        ("feasible", Field::Bool(result.feasible)),
    ]
}

fn write_trace(path: &PathBuf, trace: &[DescentStep]) -> Result<()> {
    use std::io::Write as _;
    let to_err = |source| Error::Io { path: path.clone(), source };
    let mut file = std::fs::File::create(path).map_err(to_err)?;
    writeln!(file, "n,x_uav_m,objective_db_sum").map_err(to_err)?;
    for step in trace {
        writeln!(
            file,
            "{},{},{}",
            step.iteration,
            format_sig6(step.x),
            format_sig6(step.objective_db_sum)
        )
        .map_err(to_err)?;
    }
    file.flush().map_err(to_err)
}

fn cmd_optimize(args: &OptimizeArgs, json: bool) -> Result<i32> {
    let scenario = load_scenario(&args.scenario)?;
    let defaults = GradientDescentConfig::default();
    let config = GradientDescentConfig {
        step_size: args.step_size.unwrap_or(defaults.step_size),
        tolerance: args.tolerance.unwrap_or(defaults.tolerance),
        max_iterations: args.max_iters.unwrap_or(defaults.max_iterations),
        initial_x: args.initial_x,
        halve_step_on_increase: args.halve_on_increase,
    };
    let (mut result, trace) = descend_x_with_trace(
        &scenario.users,
        &scenario.building,
        &scenario.rf,
        &scenario.bounds,
        &config,
    )?;
    result.feasible = check_feasibility(&result, &scenario.link)?;
    if let Some(path) = &args.trace {
        write_trace(path, &trace)?;
    }
    if trace.windows(2).any(|p| p[1].objective_db_sum > p[0].objective_db_sum) {
        eprintln!(
            "warning: the objective rose during descent; the step size may be too large \
             (consider --halve-on-increase or a smaller --step-size)"
        );
    }
    emit(&placement_fields(&result, "iterations"), json);
    if !result.converged {
        eprintln!(
            "warning: no convergence within {} iterations (last |Δx| above tolerance {})",
            config.max_iterations, config.tolerance
        );
        return Ok(3);
    }
    if !result.feasible {
        eprintln!(
            "error: the placement violates the link budget (allowable-loss bound exceeded)"
        );
        return Ok(1);
    }
    Ok(0)
}

fn cmd_oracle(args: &OracleArgs, json: bool) -> Result<i32> {
    if !(args.resolution > 0.0 && args.resolution.is_finite()) {
        return Err(Error::InvalidResolution(args.resolution));
    }
    let scenario = load_scenario(&args.scenario)?;
    let mut result = grid_search(
        &scenario.users,
        &scenario.building,
        &scenario.rf,
        &scenario.bounds,
        args.resolution,
    )?;
    result.feasible = check_feasibility(&result, &scenario.link)?;
    emit(&placement_fields(&result, "lattice_points"), json);
    if !result.feasible {
        eprintln!(
            "error: the placement violates the link budget (allowable-loss bound exceeded)"
        );
        return Ok(1);
    }
    Ok(0)
}

/// Re-optimizes the scenario across building heights or depths and tabulates
/// the efficient x coordinate. Every sampled building is validated, the
/// layout is regenerated for it, and the descent must converge.
fn placement_sweep(scenario: &Scenario, axis: SweepAxis, range: (f64, f64), steps: usize) -> Result<SweepTable> {
    check_range(range.0, range.1, steps)?;
    let base = &scenario.building;
    let mut table = SweepTable::new(
        if axis == SweepAxis::Height { "z_b_m" } else { "x_b_m" },
        "x_uav_m",
    );
    for value in linspace(range.0, range.1, steps) {
        let building = match axis {
            SweepAxis::Height => BuildingSpec::new(base.x_b, base.y_b, value, base.floor_height)?,
            _ => BuildingSpec::new(value, base.y_b, base.z_b, base.floor_height)?,
        };
        let swept = scenario.regenerated_for(building)?;
        let (result, _) = descend_x_with_trace(
            &swept.users,
            &swept.building,
            &swept.rf,
            &swept.bounds,
            &GradientDescentConfig::default(),
        )?;
        if !result.converged {
            return Err(Error::DescentDidNotConverge { axis_value: value });
        }
        table.rows.push((value, result.uav_position.x));
    }
    Ok(table)
}

fn cmd_sweep(args: &SweepArgs, json: bool) -> Result<i32> {
    let scenario = load_scenario(&args.scenario)?;
    let (lo, hi) = args.range;
    let table = match args.axis {
        SweepAxis::Standoff => sweep_power_vs_standoff(
            &scenario.building,
            &scenario.rf,
            &scenario.link,
            (lo, hi),
            args.steps,
        )?,
        SweepAxis::Angle => {
            let radians = sweep_power_vs_angle(
                &scenario.building,
                &scenario.rf,
                &scenario.link,
                (lo.to_radians(), hi.to_radians()),
                args.steps,
            )?;
            SweepTable {
                axis_name: "theta_deg".into(),
                value_name: radians.value_name,
                rows: radians.rows.iter().map(|&(t, p)| (t.to_degrees(), p)).collect(),
            }
        }
        axis => placement_sweep(&scenario, axis, (lo, hi), args.steps)?,
    };
    match &args.output {
        Some(path) => save_sweep_csv(&table, path)?,
        None if json => {
            let rows: Vec<String> = table
                .rows
                .iter()
                .map(|&(a, v)| format!("[{},{}]", format_sig6(a), format_sig6(v)))
                .collect();
            emit(
                &[
                    ("axis_name", Field::Text(table.axis_name.clone())),
                    ("value_name", Field::Text(table.value_name.clone())),
                    ("rows", Field::Raw(format!("[{}]", rows.join(",")))),
                ],
                json,
            );
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            write_sweep_csv(&table, &mut stdout)
                .map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })?;
        }
    }
    Ok(0)
}

fn cmd_gen(args: &GenArgs, json: bool) -> Result<i32> {
    let building = BuildingSpec::new(args.x_b, args.y_b, args.z_b, args.floor_height)?;
    let scenario = Scenario::generated(building, args.users_per_floor)?;
    save_scenario(&scenario, &args.output)?;
    emit(
        &[
            ("path", Field::Text(args.output.display().to_string())),
            ("floors", Field::Int(scenario.building.num_floors())),
            ("users", Field::Int(scenario.users.len())),
        ],
        json,
    );
    Ok(0)
}
