//! End-to-end worst-case design across a grid of buildings.
//!
//! For each building, place the UAV at mid-height on the mid-axis, back it
//! off to realize the optimal incidence angle at the worst (farthest, deepest)
//! corner, and read off the minimum transmit power that still meets the SNR
//! threshold there. Serving the worst corner covers every other indoor user.
//!
//! Run with: `cargo run --example worst_case_design`

use uavcov::geometry::BuildingSpec;
use uavcov::linkbudget::{worst_case_min_tx_power, LinkBudgetParams};
use uavcov::pathloss::RfModelParams;
use uavcov::worstcase::{optimal_standoff, solve_optimal_angle, worst_corner_path_loss};

fn main() -> uavcov::Result<()> {
    let rf = RfModelParams::default();
    let link = LinkBudgetParams::default();
    let angle = solve_optimal_angle(&rf)?;
    println!(
        "designing at theta* = {:.3}° for a 50 m wide building, 5 m floors\n",
        angle.theta.to_degrees()
    );

    println!("{:>8} {:>8} {:>10} {:>10} {:>12} {:>12}", "z_b [m]", "x_b [m]", "d_h [m]", "d_opt [m]", "loss [dB]", "P_t,min [dBm]");
    for z_b in [200.0, 250.0, 300.0] {
        for x_b in [10.0, 20.0, 50.0] {
            let building = BuildingSpec::new(x_b, 50.0, z_b, 5.0)?;
            let standoff = optimal_standoff(&building, angle.theta)?;
            let loss = worst_corner_path_loss(standoff.d_opt, &building, &rf)?;
            let power = worst_case_min_tx_power(loss, &link);
            println!(
                "{z_b:>8.0} {x_b:>8.0} {:>10.3} {:>10.3} {:>12.3} {:>12.3}",
                standoff.d_h, standoff.d_opt, loss, power
            );
        }
    }

    println!("\ntaller buildings push the UAV out; deeper buildings cost indoor dB");

    // The closed form refuses geometries the optimal angle cannot reach:
    // a building much wider than it is tall.
    let squat = BuildingSpec::new(20.0, 500.0, 100.0, 5.0)?;
    match optimal_standoff(&squat, angle.theta) {
        Err(err) => println!("500 m wide, 100 m tall: {err}"),
        Ok(_) => unreachable!("this geometry cannot realize the optimal angle"),
    }
    Ok(())
}
