//! How the efficient placement moves with the building.
//!
//! Re-optimizes the aggregate placement while one building dimension varies:
//! the efficient standoff grows with building height and shrinks with
//! building depth. Each sampled building gets a freshly generated layout via
//! [`Scenario::regenerated_for`].
//!
//! Run with: `cargo run --example building_trends`

use uavcov::geometry::BuildingSpec;
use uavcov::placement::{descend_x, GradientDescentConfig};
use uavcov::scenario::Scenario;

fn optimized_x(scenario: &Scenario) -> uavcov::Result<f64> {
    let result = descend_x(
        &scenario.users,
        &scenario.building,
        &scenario.rf,
        &scenario.bounds,
        &GradientDescentConfig::default(),
    )?;
    assert!(result.converged);
    Ok(result.uav_position.x)
}

fn main() -> uavcov::Result<()> {
    let base = Scenario::generated(BuildingSpec::new(20.0, 50.0, 250.0, 5.0)?, 20)?;

    println!("height trend (x_b = 20 m)");
    println!("{:>8} {:>8} {:>12} {:>14}", "z_b [m]", "users", "x_uav [m]", "standoff [m]");
    let mut previous = f64::NEG_INFINITY;
    for z_b in [150.0, 200.0, 250.0, 300.0] {
        let swept = base.regenerated_for(BuildingSpec::new(20.0, 50.0, z_b, 5.0)?)?;
        let x = optimized_x(&swept)?;
        println!("{z_b:>8.0} {:>8} {x:>12.4} {:>14.4}", swept.users.len(), -x);
        assert!(-x > previous, "standoff must grow with height");
        previous = -x;
    }

    println!("\ndepth trend (z_b = 250 m)");
    println!("{:>8} {:>8} {:>12} {:>14}", "x_b [m]", "users", "x_uav [m]", "standoff [m]");
    previous = f64::INFINITY;
    for x_b in [10.0, 20.0, 30.0, 40.0, 50.0] {
        let swept = base.regenerated_for(BuildingSpec::new(x_b, 50.0, 250.0, 5.0)?)?;
        let x = optimized_x(&swept)?;
        println!("{x_b:>8.0} {:>8} {x:>12.4} {:>14.4}", swept.users.len(), -x);
        assert!(-x < previous, "standoff must shrink with depth");
        previous = -x;
    }

    println!("\ntaller towers pull the UAV out to flatten arrival angles;");
    println!("deeper floors pull it in because indoor meters cost more than outdoor ones");
    Ok(())
}
