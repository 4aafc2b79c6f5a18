//! Sweep transmit power against the facade standoff.
//!
//! The closed-form standoff converts the optimal incidence angle into a
//! hovering distance in front of the building. This example confirms it
//! numerically: for each building height, a dense sweep of standoffs finds
//! its power minimum within one grid step of the closed form, and both move
//! outward as the building grows taller.
//!
//! Run with: `cargo run --example standoff_sweep`

use uavcov::geometry::BuildingSpec;
use uavcov::linkbudget::LinkBudgetParams;
use uavcov::pathloss::RfModelParams;
use uavcov::worstcase::{optimal_standoff, solve_optimal_angle, sweep_power_vs_standoff};

fn main() -> uavcov::Result<()> {
    let rf = RfModelParams::default();
    let link = LinkBudgetParams::default();
    let theta = solve_optimal_angle(&rf)?.theta;

    println!("{:>8} {:>16} {:>16} {:>10}", "z_b [m]", "closed form [m]", "swept min [m]", "P [dBm]");
    let mut previous = f64::NEG_INFINITY;
    for z_b in (100..=300).step_by(25) {
        let building = BuildingSpec::new(20.0, 50.0, f64::from(z_b), 5.0)?;
        let closed = optimal_standoff(&building, theta)?.d_opt;

        let table = sweep_power_vs_standoff(&building, &rf, &link, (1.0, 150.0), 500)?;
        let best = table.argmin().expect("non-empty sweep");
        let (swept, power) = table.rows[best];
        let step = table.rows[1].0 - table.rows[0].0;

        println!("{z_b:>8} {closed:>16.4} {swept:>16.4} {power:>10.3}");
        assert!((closed - swept).abs() <= step, "sweep must bracket the closed form");
        assert!(swept > previous, "standoff must grow with building height");
        previous = swept;
    }
    println!("\nevery swept minimum brackets its closed form within one grid step");
    Ok(())
}
