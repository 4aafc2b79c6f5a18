//! Worst-case aggregate design: serve the hardest indoor point — the far
//! lower corner — and every other user is covered for free.
//!
//! With the UAV on the building's mid-axis, the reparameterized loss
//! L(Δh, θ) decomposes the placement into one scalar unknown: the incidence
//! angle θ trades free-space spreading (pushes θ up — shorter slant range)
//! against facade penetration (pushes θ down — flatter arrival). Setting
//! dL/dθ = 0 and substituting c = cos θ yields the depressed cubic
//!
//! ```text
//! 2·g3·c³ − 2·g3·c² − (w/ln10 + 2·g3)·c + 2·g3 = 0
//! ```
//!
//! which has exactly one root in (0, 1) whenever w > 0 and g3 > 0: the
//! residual is +2·g3 at c = 0 and −w/ln10 at c = 1. [`solve_optimal_angle`]
//! finds that root; [`optimal_standoff`] converts the optimal angle into a
//! horizontal standoff from the facade; the sweep functions tabulate
//! transmit power against standoff or angle for plotting and for
//! cross-checking the closed forms numerically.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::{BuildingSpec, Point3};
use crate::linkbudget::{worst_case_min_tx_power, LinkBudgetParams};
use crate::pathloss::{path_loss_dh_theta, total_path_loss, RfModelParams};
use crate::scenario::SweepTable;

const LN_10: f64 = std::f64::consts::LN_10;

/// Root of the stationarity cubic together with its certificate.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AngleSolverResult {
    /// The root in (0, 1): cos θ*.
    pub cos_theta: f64,
    /// θ* in radians.
    pub theta: f64,
    /// Cubic residual at the accepted root.
    pub residual: f64,
    /// Real roots outside (0, 1), largest first; they do not correspond to
    /// a physical incidence angle. Empty when the other pair is complex.
    pub rejected_roots: Vec<f64>,
}

/// Horizontal placement derived from the optimal angle.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StandoffResult {
    /// Horizontal distance from the worst corner's wall line to the UAV.
    pub d_h: f64,
    /// Standoff from the facade: `d_h` minus the building depth. Negative
    /// when the building is too deep for the optimal geometry.
    pub d_opt: f64,
    /// False when `d_opt` is negative (the closed form wants the UAV behind
    /// the facade plane, which the flight region forbids).
    pub feasible: bool,
}

/// Residual of the angle-stationarity cubic at c = cos θ.
pub fn cubic_residual(cos_theta: f64, params: &RfModelParams) -> f64 {
    let two_g3 = 2.0 * params.g3;
    let c = cos_theta;
    two_g3 * c * c * c - two_g3 * c * c - (params.w / LN_10 + two_g3) * c + two_g3
}

fn cubic_slope(cos_theta: f64, params: &RfModelParams) -> f64 {
    let two_g3 = 2.0 * params.g3;
    let c = cos_theta;
    3.0 * two_g3 * c * c - 2.0 * two_g3 * c - (params.w / LN_10 + two_g3)
}

/// Solves the stationarity cubic for the unique root in (0, 1).
///
/// Bisection on the sign-changing bracket [0, 1] down to floating-point
/// resolution, then a few Newton polish steps; the result carries the final
/// residual (far below 1e−12 in practice) and the deflated companion roots.
/// Errors with the bracket values if the residual does not change sign —
/// impossible for positive w and g3, so reaching that error means the
/// parameters were invalid.
pub fn solve_optimal_angle(params: &RfModelParams) -> Result<AngleSolverResult> {
    let f_lo = cubic_residual(0.0, params);
    let f_hi = cubic_residual(1.0, params);
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::NoSignChange { lo: 0.0, hi: 1.0, f_lo, f_hi });
    }
    // Orient so `lo` carries the positive residual; for valid parameters
    // that is c = 0.
    let (mut lo, mut hi) = if f_lo > 0.0 { (0.0, 1.0) } else { (1.0, 0.0) };
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if cubic_residual(mid, params) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..4 {
        let f = cubic_residual(root, params);
        let df = cubic_slope(root, params);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = root - f / df;
        if next == root {
            break;
        }
        root = next;
    }
    Ok(AngleSolverResult {
        cos_theta: root,
        theta: root.acos(),
        residual: cubic_residual(root, params),
        rejected_roots: deflated_roots(root, params),
    })
}

/// Synthetic division by (c − root) leaves a quadratic; its real roots are
/// the companions the solver rejects.
fn deflated_roots(root: f64, params: &RfModelParams) -> Vec<f64> {
    let two_g3 = 2.0 * params.g3;
    let a2 = two_g3;
    let a1 = -two_g3 + a2 * root;
    let a0 = -(params.w / LN_10 + two_g3) + a1 * root;
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    let q = if a1 >= 0.0 { -0.5 * (a1 + s) } else { -0.5 * (a1 - s) };
    let (r1, r2) = if q == 0.0 {
        (0.0, -a1 / a2)
    } else {
        (q / a2, a0 / q)
    };
    let mut roots = vec![r1, r2];
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

/// d²L/dθ² of the reparameterized loss. Positive on all of (0, π/2] for
/// positive w and g3, which certifies every stationary angle as a minimum.
/// The vertical drop Δh only shifts L by a constant, so it does not appear.
pub fn second_derivative_check(theta: f64, params: &RfModelParams) -> Result<f64> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::AngleOutOfRange { theta, expected: "(0, pi/2]" });
    }
    let (sin, cos) = theta.sin_cos();
    Ok(params.w / LN_10 / (sin * sin)
        + 2.0 * params.g3 * cos * (1.0 - cos)
        + 2.0 * params.g3 * sin * sin)
}

/// Converts an incidence angle into the horizontal placement that realizes
/// it at the worst corner, for a UAV held at the building's mid-height.
///
/// The mid-height hovering point sees the bottom corner through a vertical
/// drop of 0.5·z_b, so the angle fixes the horizontal reach 0.5·z_b/tan θ;
/// subtracting the lateral half-width (Pythagoras) and then the building
/// depth gives the standoff from the facade. Errors when the reach cannot
/// even cover the half-width; a merely negative standoff is reported with
/// `feasible = false` instead, since clamping to the facade is a sensible
/// fallback the caller may choose.
pub fn optimal_standoff(building: &BuildingSpec, theta: f64) -> Result<StandoffResult> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::AngleOutOfRange { theta, expected: "(0, pi/2]" });
    }
    let reach = 0.5 * building.z_b / theta.tan();
    let reach_sq = reach * reach;
    let half_width_sq = (0.5 * building.y_b) * (0.5 * building.y_b);
    if reach_sq < half_width_sq {
        return Err(Error::GeometryInfeasible { reach_sq, half_width_sq });
    }
    let d_h = (reach_sq - half_width_sq).sqrt();
    let d_opt = d_h - building.x_b;
    Ok(StandoffResult { d_h, d_opt, feasible: d_opt >= 0.0 })
}

/// Path loss from a mid-plane UAV at the given facade standoff to the worst
/// corner (x_b, 0, 0). By symmetry the four deep corners are equivalent.
pub fn worst_corner_path_loss(
    standoff: f64,
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    building.validate()?;
    params.validate()?;
    let uav = Point3::new(-standoff, building.mid_y(), building.mid_z());
    let corner = Point3::new(building.x_b, 0.0, 0.0);
    total_path_loss(&uav, &corner, building, params)
}

pub(crate) fn check_range(lo: f64, hi: f64, steps: usize) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidSweepRange { lo, hi, reason: "endpoints must be finite" });
    }
    if lo > hi {
        return Err(Error::InvalidSweepRange {
            lo,
            hi,
            reason: "lower endpoint exceeds upper endpoint",
        });
    }
    if steps == 0 {
        return Err(Error::InvalidSweepRange { lo, hi, reason: "at least one step is required" });
    }
    if lo < hi && steps < 2 {
        return Err(Error::InvalidSweepRange {
            lo,
            hi,
            reason: "a non-degenerate range needs at least two steps",
        });
    }
    Ok(())
}

/// Evenly spaced samples including both endpoints; a degenerate range
/// collapses to its single value.
pub(crate) fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if lo == hi {
        return vec![lo];
    }
    let span = hi - lo;
    let last = (steps - 1) as f64;
    let mut points: Vec<f64> = (0..steps).map(|k| lo + span * k as f64 / last).collect();
    points[0] = lo;
    points[steps - 1] = hi;
    points
}

/// Worst-corner minimum transmit power as a function of facade standoff.
/// Rows are `(standoff_m, p_tmin_dbm)`, endpoints included.
pub fn sweep_power_vs_standoff(
    building: &BuildingSpec,
    rf: &RfModelParams,
    link: &LinkBudgetParams,
    range: (f64, f64),
    steps: usize,
) -> Result<SweepTable> {
    building.validate()?;
    rf.validate()?;
    link.validate()?;
    let (lo, hi) = range;
    check_range(lo, hi, steps)?;
    if lo < 0.0 {
        return Err(Error::InvalidSweepRange { lo, hi, reason: "standoff cannot be negative" });
    }
    let mut table = SweepTable::new("standoff_m", "p_tmin_dbm");
    for d in linspace(lo, hi, steps) {
        let loss = worst_corner_path_loss(d, building, rf)?;
        table.rows.push((d, worst_case_min_tx_power(loss, link)));
    }
    Ok(table)
}

/// Worst-corner minimum transmit power as a function of incidence angle, at
/// the worst corner's indoor depth x_b and the mid-height drop 0.5·z_b.
/// Rows are `(theta_rad, p_tmin_dbm)`, endpoints included.
pub fn sweep_power_vs_angle(
    building: &BuildingSpec,
    rf: &RfModelParams,
    link: &LinkBudgetParams,
    range_rad: (f64, f64),
    steps: usize,
) -> Result<SweepTable> {
    building.validate()?;
    rf.validate()?;
    link.validate()?;
    let (mut lo, mut hi) = range_rad;
    // Degree-to-radian conversions can overshoot π/2 by an ulp; snap back.
    let snap = |v: &mut f64| {
        if *v > FRAC_PI_2 && *v < FRAC_PI_2 * (1.0 + 1e-9) {
            *v = FRAC_PI_2;
        }
    };
    snap(&mut lo);
    snap(&mut hi);
    check_range(lo, hi, steps)?;
    if !(lo > 0.0 && hi <= FRAC_PI_2) {
        return Err(Error::InvalidSweepRange {
            lo,
            hi,
            reason: "angles must lie in (0, pi/2] radians",
        });
    }
    let delta_h = building.mid_z();
    let depth = building.x_b;
    let mut table = SweepTable::new("theta_rad", "p_tmin_dbm");
    for theta in linspace(lo, hi, steps) {
        let theta = theta.min(FRAC_PI_2);
        let loss = path_loss_dh_theta(delta_h, theta, depth, rf)?;
        table.rows.push((theta, worst_case_min_tx_power(loss, link)));
    }
    Ok(table)
}
