//! Exhaustive grid search as an independent check on the descent.
//!
//! The lattice scan makes no symmetry assumption and no use of gradients, so
//! agreement with the descent is real evidence: the minimizer's lateral and
//! vertical coordinates land next to the building mid-planes, the standoff
//! lands within one cell of the descent's answer, and the whole flight box
//! contains a single lattice-local minimum — the objective has one basin.
//!
//! Run with: `cargo run --example grid_oracle --release`

use uavcov::placement::{count_grid_local_minima, descend_x, grid_search, GradientDescentConfig};
use uavcov::scenario::Scenario;

fn main() -> uavcov::Result<()> {
    let scenario = Scenario::generated(uavcov::BuildingSpec::new(20.0, 50.0, 200.0, 5.0)?, 20)?;
    let (users, building, rf) = (&scenario.users, &scenario.building, &scenario.rf);

    let descent = descend_x(users, building, rf, &scenario.bounds, &GradientDescentConfig::default())?;
    println!(
        "descent:     x = {:>9.4}  objective = {:.4} dB ({} iterations)",
        descent.uav_position.x, descent.objective_db_sum, descent.iterations_used
    );

    let resolution = 2.0;
    let grid = grid_search(users, building, rf, &scenario.bounds, resolution)?;
    println!(
        "grid search: x = {:>9.4}  objective = {:.4} dB ({} lattice points at {resolution} m)",
        grid.uav_position.x, grid.objective_db_sum, grid.iterations_used
    );
    println!(
        "             y = {} (mid {}), z = {} (mid {})",
        grid.uav_position.y,
        building.mid_y(),
        grid.uav_position.z,
        building.mid_z()
    );
    assert!((descent.uav_position.x - grid.uav_position.x).abs() <= resolution);

    let minima = count_grid_local_minima(users, building, rf, &scenario.bounds, resolution)?;
    println!("\nlattice-local minima in the flight box: {minima}");
    assert_eq!(minima, 1, "the objective should have a single basin");
    println!("single basin confirmed: any descent start inside the box finds this optimum");
    Ok(())
}
