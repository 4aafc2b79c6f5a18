//! Sweep transmit power against the incidence angle.
//!
//! Tabulates worst-corner minimum transmit power as the incidence angle runs
//! from grazing to vertical, prints a coarse view of the valley, and checks
//! that the swept minimum brackets the closed-form optimal angle.
//!
//! Run with: `cargo run --example angle_sweep`

use uavcov::geometry::BuildingSpec;
use uavcov::linkbudget::LinkBudgetParams;
use uavcov::pathloss::RfModelParams;
use uavcov::worstcase::{solve_optimal_angle, sweep_power_vs_angle};

fn main() -> uavcov::Result<()> {
    let building = BuildingSpec::new(20.0, 50.0, 250.0, 5.0)?;
    let rf = RfModelParams::default();
    let link = LinkBudgetParams::default();

    let table = sweep_power_vs_angle(
        &building,
        &rf,
        &link,
        (1.0_f64.to_radians(), 90.0_f64.to_radians()),
        500,
    )?;

    println!("worst-corner power vs incidence angle (every 50th sample)");
    println!("{:>12} {:>14}", "theta [deg]", "P_t,min [dBm]");
    for (theta, power) in table.rows.iter().step_by(50) {
        println!("{:>12.3} {:>14.3}", theta.to_degrees(), power);
    }

    let best = table.argmin().expect("table is non-empty");
    let (theta_best, power_best) = table.rows[best];
    let step = table.rows[1].0 - table.rows[0].0;
    println!(
        "\nswept minimum: {:.3}° at {:.3} dBm (grid step {:.3}°)",
        theta_best.to_degrees(),
        power_best,
        step.to_degrees()
    );

    let exact = solve_optimal_angle(&rf)?.theta;
    println!("closed form:   {:.3}°", exact.to_degrees());
    assert!((theta_best - exact).abs() <= step, "sweep must bracket the closed form");
    println!("the sweep brackets the closed form within one grid step");
    Ok(())
}
