//! Scenario files: generate, save, reload, and export sweep CSV.
//!
//! Scenarios live in TOML files with five sections (building, rf, link,
//! bounds, users); everything except the building dimensions has documented
//! defaults. Generated layouts are stored as their per-floor count and
//! rebuild deterministically, so a reloaded scenario is equal to the one
//! saved. Sweep tables export as two-column CSV with six significant digits.
//!
//! Run with: `cargo run --example scenario_files`

use uavcov::geometry::BuildingSpec;
use uavcov::scenario::{
    generate_symmetric_layout, load_scenario, save_scenario, write_sweep_csv, Scenario, SweepTable,
};

fn main() -> uavcov::Result<()> {
    let building = BuildingSpec::new(20.0, 50.0, 200.0, 5.0)?;

    // The layout generator mirrors users across both mid-planes; reflected
    // coordinates reproduce each other exactly, bit for bit.
    let users = generate_symmetric_layout(&building, 20)?;
    println!("generated {} users ({} per floor × {} floors)", users.len(), 20, building.num_floors());
    let first = users[0];
    let mirrored = users.iter().find(|u| u.y == building.y_b - first.y && u.x == first.x && u.z == first.z);
    println!("  {first:?} has exact mirror partner: {}", mirrored.is_some());

    let dir = std::env::temp_dir().join("uavcov_scenario_example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("tower.toml");

    let scenario = Scenario::generated(building, 20)?;
    save_scenario(&scenario, &path)?;
    println!("\nsaved scenario to {}", path.display());
    println!("--- file head ---");
    let body = std::fs::read_to_string(&path).expect("file just written");
    for line in body.lines().take(6) {
        println!("{line}");
    }
    println!("...");

    let reloaded = load_scenario(&path)?;
    println!("\nreloaded == saved: {}", reloaded == scenario);

    // A minimal file: three dimensions, everything else defaulted.
    let minimal = dir.join("minimal.toml");
    std::fs::write(&minimal, "[building]\nx_b = 20.0\ny_b = 50.0\nz_b = 200.0\n").expect("write");
    let defaults = load_scenario(&minimal)?;
    println!(
        "minimal file expands to {} users, {} MHz bandwidth, bounds x ∈ [{}, {}]",
        defaults.users.len(),
        defaults.link.bandwidth_hz / 1e6,
        defaults.bounds.x_min,
        defaults.bounds.x_max
    );

    // Sweep tables serialize to CSV with six significant digits.
    let mut table = SweepTable::new("standoff_m", "p_tmin_dbm");
    table.rows = vec![(1.0, -0.5), (50.0, -3.211), (100.0, 1.0 / 3.0)];
    let mut csv = Vec::new();
    write_sweep_csv(&table, &mut csv).expect("in-memory write");
    println!("\nsweep CSV:\n{}", String::from_utf8(csv).expect("UTF-8"));
    Ok(())
}
