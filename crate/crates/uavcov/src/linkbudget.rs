//! Link-budget arithmetic connecting path loss, rate, and transmit power.
//!
//! Rates follow the Shannon form C = B·log2(1 + SNR) with SNR = P_t/(L·N) in
//! linear units. Inverting it at a demanded rate v over a per-user channel of
//! bandwidth B/M gives the minimum transmit power per user,
//!
//! ```text
//! P_t,i,min = (2^(v·M/B) − 1) · N · L_i        (linear, watts out)
//! ```
//!
//! and summing over users bounds the total power. Comparing that total with a
//! power cap yields the maximum allowable (linear-sum) path loss L_max. A
//! simpler threshold design works directly in dB: P_t,min = (N + γ_th) + L.
//!
//! Public inputs carry explicit dB/dBm units; conversions to linear happen
//! only inside this module. Power outputs of the rate-based forms are watts,
//! of the threshold form dBm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;

/// Link-budget parameter set.
///
/// `num_users` (M) is the number of users sharing the bandwidth; scenario
/// loading always sets it to the size of the user list. `max_tx_power_dbm`
/// defaults to +∞, meaning "no power cap": every placement is then feasible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudgetParams {
    pub bandwidth_hz: f64,
    pub rate_demand_bps: f64,
    pub num_users: usize,
    pub noise_dbm: f64,
    pub snr_threshold_db: f64,
    pub max_tx_power_dbm: f64,
}

impl Default for LinkBudgetParams {
    fn default() -> Self {
        Self {
            bandwidth_hz: 40e6,
            rate_demand_bps: 1e6,
            num_users: 1,
            noise_dbm: -120.0,
            snr_threshold_db: 10.0,
            max_tx_power_dbm: f64::INFINITY,
        }
    }
}

impl LinkBudgetParams {
    pub fn validate(&self) -> Result<()> {
        if self.bandwidth_hz <= 0.0 || !self.bandwidth_hz.is_finite() {
            return Err(Error::NonPositiveBandwidth(self.bandwidth_hz));
        }
        let checks = [
            (self.rate_demand_bps >= 0.0 && self.rate_demand_bps.is_finite(),
             format!("rate_demand_bps must be finite and >= 0, got {}", self.rate_demand_bps)),
            (self.num_users >= 1, "num_users must be at least 1".to_string()),
            (self.noise_dbm.is_finite(),
             format!("noise_dbm must be finite, got {}", self.noise_dbm)),
            (self.snr_threshold_db.is_finite(),
             format!("snr_threshold_db must be finite, got {}", self.snr_threshold_db)),
        ];
        for (ok, message) in checks {
            if !ok {
                return Err(Error::InvalidScenario { field: "link".into(), message });
            }
        }
        Ok(())
    }

    /// v·M/B, the exponent driving the rate-based power formulas.
    fn rate_exponent(&self) -> f64 {
        self.rate_demand_bps * self.num_users as f64 / self.bandwidth_hz
    }
}

fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// 2^e − 1, evaluated without cancellation for small e.
fn pow2_m1(e: f64) -> f64 {
    (e * LN_2).exp_m1()
}

/// Achievable rate C = B·log2(1 + SNR) in bits/s, with
/// SNR = 10^((tx − L − N)/10).
pub fn user_rate(
    tx_power_dbm: f64,
    pathloss_db: f64,
    channel_bandwidth_hz: f64,
    noise_dbm: f64,
) -> Result<f64> {
    if channel_bandwidth_hz <= 0.0 {
        return Err(Error::NonPositiveBandwidth(channel_bandwidth_hz));
    }
    let snr = db_to_linear(tx_power_dbm - pathloss_db - noise_dbm);
    Ok(channel_bandwidth_hz * snr.ln_1p() / LN_2)
}

/// Minimum transmit power, in watts, for one user behind `pathloss_db` to
/// sustain the demanded rate on its B/M share of the bandwidth:
/// (2^(v·M/B) − 1) · N_linear · L_linear.
pub fn per_user_min_power(pathloss_db: f64, params: &LinkBudgetParams) -> Result<f64> {
    params.validate()?;
    let e = params.rate_exponent();
    let growth = pow2_m1(e);
    if !growth.is_finite() {
        return Err(Error::ExponentOverflow { exponent: e });
    }
    let p_mw = growth * dbm_to_mw(params.noise_dbm) * db_to_linear(pathloss_db);
    Ok(p_mw / 1e3)
}

/// Total minimum transmit power in watts: the sum of [`per_user_min_power`]
/// over a per-user path-loss list, which must have exactly `num_users`
/// entries.
pub fn total_min_power(pathlosses_db: &[f64], params: &LinkBudgetParams) -> Result<f64> {
    if pathlosses_db.len() != params.num_users {
        return Err(Error::UserCountMismatch {
            expected: params.num_users,
            got: pathlosses_db.len(),
        });
    }
    let mut total = 0.0;
    for &l in pathlosses_db {
        total += per_user_min_power(l, params)?;
    }
    Ok(total)
}

/// Maximum allowable path loss implied by the power cap, as a *linear* sum
/// bound: L_max = P_t,max_linear / ((2^(v·M/B) − 1) · N_linear).
///
/// A placement is feasible when Σ_i 10^(L_i/10) ≤ L_max. With the default
/// infinite power cap this returns +∞.
pub fn max_allowable_loss(params: &LinkBudgetParams) -> Result<f64> {
    params.validate()?;
    let e = params.rate_exponent();
    if e <= 0.0 {
        return Err(Error::ZeroRateDemand);
    }
    let growth = pow2_m1(e);
    if !growth.is_finite() {
        return Err(Error::ExponentOverflow { exponent: e });
    }
    Ok(dbm_to_mw(params.max_tx_power_dbm) / (growth * dbm_to_mw(params.noise_dbm)))
}

/// Threshold-design minimum transmit power, in dBm: the receiver needs
/// P_r ≥ N + γ_th, so P_t,min = (N + γ_th) + L.
pub fn worst_case_min_tx_power(pathloss_db: f64, params: &LinkBudgetParams) -> f64 {
    params.noise_dbm + params.snr_threshold_db + pathloss_db
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn assert_rel(actual: f64, expected: f64, rel: f64, what: &str) {
        let tol = rel * expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            (actual - expected).abs() <= tol,
            "{what}: {actual} vs {expected} (rel {rel})"
        );
    }

    #[test]
    fn unit_snr_doubles_nothing() {
        // tx − L − N = 0 dB ⇒ SNR = 1 ⇒ C = B·log2(2) = B.
        let c = user_rate(-110.0, 10.0, 1e6, -120.0).unwrap();
        assert_rel(c, 1e6, 1e-12, "1 MHz at 0 dB SNR");
    }

    #[test]
    fn rate_vanishes_without_power() {
        let c = user_rate(-500.0, 100.0, 1e6, -120.0).unwrap();
        assert!(c >= 0.0 && c < 1e-20, "rate {c}");
    }

    #[test]
    fn rate_matches_independent_evaluation() {
        // 10^6·log2(101) from an external calculator.
        let c = user_rate(-80.0, 20.0, 1e6, -120.0).unwrap();
        assert_rel(c, 6658211.4827517947, 1e-12, "20 dB SNR");
    }

    #[test]
    fn zero_rate_demand_needs_no_power() {
        let p = LinkBudgetParams { rate_demand_bps: 0.0, ..Default::default() };
        assert_eq!(per_user_min_power(120.0, &p).unwrap(), 0.0);
    }

    #[test]
    fn unit_exponent_zero_loss_needs_one_milliwatt() {
        // v·M/B = 1, L = 0 dB, N = 0 dBm: (2 − 1)·1 mW·1.
        let p = LinkBudgetParams {
            bandwidth_hz: 1e6,
            rate_demand_bps: 1e6,
            num_users: 1,
            noise_dbm: 0.0,
            ..Default::default()
        };
        assert_rel(per_user_min_power(0.0, &p).unwrap(), 1e-3, 1e-12, "1 mW");
    }

    #[test]
    fn per_user_power_matches_independent_evaluation() {
        // v = 1 Mbps, M = 20, B = 40 MHz, L = 100 dB, N = −120 dBm:
        // (2^0.5 − 1)·10^(−12)·10^10 mW, from an external calculator.
        let p = LinkBudgetParams { num_users: 20, ..Default::default() };
        assert_rel(
            per_user_min_power(100.0, &p).unwrap(),
            4.1421356237309505e-6,
            1e-12,
            "20-user share",
        );
    }

    #[test]
    fn per_user_power_overflows_loudly() {
        let p = LinkBudgetParams {
            bandwidth_hz: 1e3,
            rate_demand_bps: 1e6,
            num_users: 10,
            ..Default::default()
        };
        assert!(matches!(
            per_user_min_power(100.0, &p),
            Err(Error::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn total_power_sums_the_users() {
        let p = LinkBudgetParams { num_users: 3, ..Default::default() };
        let losses = [95.0, 100.0, 111.5];
        let total = total_min_power(&losses, &p).unwrap();
        let mut by_hand = 0.0;
        for &l in &losses {
            by_hand += per_user_min_power(l, &p).unwrap();
        }
        assert_eq!(total, by_hand);

        let single = LinkBudgetParams { num_users: 1, ..Default::default() };
        assert_eq!(
            total_min_power(&[100.0], &single).unwrap(),
            per_user_min_power(100.0, &single).unwrap()
        );

        let equal = [100.0; 3];
        assert_rel(
            total_min_power(&equal, &p).unwrap(),
            3.0 * per_user_min_power(100.0, &p).unwrap(),
            1e-12,
            "identical losses",
        );
    }

    #[test]
    fn total_power_rejects_wrong_list_length() {
        let p = LinkBudgetParams { num_users: 3, ..Default::default() };
        assert!(matches!(
            total_min_power(&[100.0, 100.0], &p),
            Err(Error::UserCountMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn allowable_loss_scales_with_the_power_cap() {
        let p = LinkBudgetParams { max_tx_power_dbm: 30.0, ..Default::default() };
        let doubled = LinkBudgetParams {
            max_tx_power_dbm: 30.0 + 10.0 * 2f64.log10(),
            ..p
        };
        assert_rel(
            max_allowable_loss(&doubled).unwrap(),
            2.0 * max_allowable_loss(&p).unwrap(),
            1e-12,
            "doubled cap",
        );
    }

    #[test]
    fn allowable_loss_unit_exponent_case() {
        // v·M/B = 1, N = 0 dBm, P_t,max = 30 dBm: 1 W / (1 × 1 mW) = 1000.
        let p = LinkBudgetParams {
            bandwidth_hz: 1e6,
            rate_demand_bps: 1e6,
            num_users: 1,
            noise_dbm: 0.0,
            max_tx_power_dbm: 30.0,
            ..Default::default()
        };
        assert_rel(max_allowable_loss(&p).unwrap(), 1000.0, 1e-12, "1000 linear");
    }

    #[test]
    fn allowable_loss_matches_independent_evaluation() {
        // B = 40 MHz, v = 1 Mbps, M = 800, N = −120 dBm, P_t,max = 30 dBm.
        let p = LinkBudgetParams {
            num_users: 800,
            max_tx_power_dbm: 30.0,
            ..Default::default()
        };
        assert_rel(
            max_allowable_loss(&p).unwrap(),
            953675225.90181914,
            1e-12,
            "800-user bound",
        );
    }

    #[test]
    fn allowable_loss_rejects_zero_demand() {
        let p = LinkBudgetParams { rate_demand_bps: 0.0, ..Default::default() };
        assert!(matches!(max_allowable_loss(&p), Err(Error::ZeroRateDemand)));
    }

    #[test]
    fn infinite_cap_allows_everything() {
        let p = LinkBudgetParams::default();
        assert_eq!(max_allowable_loss(&p).unwrap(), f64::INFINITY);
    }

    #[test]
    fn threshold_power_is_an_additive_chain() {
        let p = LinkBudgetParams::default();
        assert_eq!(worst_case_min_tx_power(0.0, &p), -110.0);
        assert_eq!(worst_case_min_tx_power(130.0, &p), 20.0);
    }

    proptest! {
        #[test]
        fn rate_monotone_in_power_and_loss(
            tx in -100.0..40.0f64, l in 60.0..140.0f64,
            d_tx in 0.1..20.0f64, d_l in 0.1..20.0f64,
        ) {
            let base = user_rate(tx, l, 1e6, -120.0).unwrap();
            prop_assert!(user_rate(tx + d_tx, l, 1e6, -120.0).unwrap() > base);
            prop_assert!(user_rate(tx, l + d_l, 1e6, -120.0).unwrap() < base);
        }

        #[test]
        fn total_power_is_permutation_invariant(
            mut losses in proptest::collection::vec(60.0..140.0f64, 1..40),
        ) {
            let p = LinkBudgetParams { num_users: losses.len(), ..Default::default() };
            let forward = total_min_power(&losses, &p).unwrap();
            losses.reverse();
            let backward = total_min_power(&losses, &p).unwrap();
            prop_assert!((forward - backward).abs() <= 1e-12 * forward.abs());
        }

        #[test]
        fn threshold_power_has_unit_slope_in_loss(
            l in 0.0..200.0f64, dl in 0.0..50.0f64,
        ) {
            let p = LinkBudgetParams::default();
            let diff = worst_case_min_tx_power(l + dl, &p) - worst_case_min_tx_power(l, &p);
            prop_assert!((diff - dl).abs() <= 1e-9);
        }

        // Defining property of the per-user power formula: feeding it back
        // through the rate equation on the B/M channel returns the demand.
        #[test]
        fn min_power_round_trips_through_the_rate(
            bandwidth in 1e6..1e8f64,
            rate in 1e3..1e7f64,
            users in 1usize..400,
            loss in 30.0..140.0f64,
            noise in -130.0..-90.0f64,
        ) {
            let p = LinkBudgetParams {
                bandwidth_hz: bandwidth,
                rate_demand_bps: rate,
                num_users: users,
                noise_dbm: noise,
                ..Default::default()
            };
            prop_assume!(p.rate_exponent() < 30.0);
            let watts = per_user_min_power(loss, &p).unwrap();
            let tx_dbm = 10.0 * (watts * 1e3).log10();
            let back = user_rate(tx_dbm, loss, bandwidth / users as f64, noise).unwrap();
            prop_assert!(
                (back - rate).abs() <= 1e-9 * rate,
                "demand {rate} came back as {back}"
            );
        }
    }
}
