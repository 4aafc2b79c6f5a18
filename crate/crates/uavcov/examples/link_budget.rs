//! Link-budget arithmetic: loss ⇄ rate ⇄ power.
//!
//! Walks the chain both ways: given a path loss, the minimum transmit power
//! that sustains the per-user rate demand; given a power cap, the maximum
//! total loss (in the linear domain) a placement may accumulate. The forward
//! and backward directions are exact inverses to floating-point precision.
//!
//! Run with: `cargo run --example link_budget`

use uavcov::linkbudget::{
    max_allowable_loss, per_user_min_power, total_min_power, user_rate, worst_case_min_tx_power,
    LinkBudgetParams,
};

fn main() -> uavcov::Result<()> {
    // 40 MHz shared by 1000 users, 1 Mbps each, −120 dBm noise.
    let link = LinkBudgetParams { num_users: 1000, ..Default::default() };
    println!(
        "{} users × {} Mbps over {} MHz, noise {} dBm",
        link.num_users,
        link.rate_demand_bps / 1e6,
        link.bandwidth_hz / 1e6,
        link.noise_dbm
    );

    println!("\nminimum transmit power vs path loss");
    println!("{:>12} {:>16}", "loss [dB]", "P_t,min [W]");
    for loss in [80.0, 100.0, 120.0] {
        println!("{loss:>12} {:>16.6e}", per_user_min_power(loss, &link)?);
    }

    // Round trip: the rate achieved at exactly the minimum power, on this
    // user's bandwidth share, is exactly the demand.
    let loss = 106.0;
    let p_watts = per_user_min_power(loss, &link)?;
    let p_dbm = 10.0 * (p_watts * 1e3).log10();
    let share = link.bandwidth_hz / link.num_users as f64;
    let rate = user_rate(p_dbm, loss, share, link.noise_dbm)?;
    println!(
        "\nat {loss} dB: P = {p_watts:.6e} W achieves {rate:.6} bps (demand {})",
        link.rate_demand_bps
    );

    // Total power over a mixed population sums the per-user demands.
    let losses: Vec<f64> = (0..link.num_users).map(|i| 85.0 + 0.03 * i as f64).collect();
    println!("total over {} mixed losses: {:.6e} W", losses.len(), total_min_power(&losses, &link)?);

    // The inverse direction: a transmit-power cap bounds the *linear* sum of
    // per-user losses a feasible placement may accumulate.
    let capped = LinkBudgetParams { max_tx_power_dbm: 30.0, ..link };
    println!(
        "\nwith a 30 dBm cap, the linear loss budget is {:.6e}",
        max_allowable_loss(&capped)?
    );

    // Worst-case design shortcut: power to hit an SNR threshold through a
    // given loss is a straight dB sum.
    println!(
        "power for a {} dB SNR floor through 106.639 dB of loss: {:.4} dBm",
        capped.snr_threshold_db,
        worst_case_min_tx_power(106.639, &capped)
    );
    Ok(())
}
