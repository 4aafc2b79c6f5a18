//! Placement of the UAV against an explicit user population: the summed-loss
//! objective, its analytic gradient, a projected 1D gradient descent, and an
//! exhaustive grid-search oracle.
//!
//! For user layouts that are mirror-symmetric across both building mid-planes
//! the lateral and vertical gradients vanish at y = 0.5·y_b and z = 0.5·z_b,
//! so the aggregate design reduces to choosing the standoff coordinate x.
//! [`descend_x`] exploits that: it pins y and z to the mid-planes and runs
//! gradient descent on x alone. [`grid_search`] makes no symmetry assumption
//! and exhaustively scans a lattice over the full bounds box; it serves as an
//! independent check on the descent and as the fallback for asymmetric
//! layouts.
//!
//! The objective is the *dB sum* Σᵢ Lᵢ — the quantity the gradient formulas
//! differentiate. The feasibility bound from the link budget lives in the
//! linear domain instead (Σᵢ 10^(Lᵢ/10) ≤ L_max), so results carry both
//! numbers and [`check_feasibility`] compares the linear one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BuildingSpec, Point3};
use crate::linkbudget::{max_allowable_loss, LinkBudgetParams};
use crate::pathloss::{total_path_loss, RfModelParams};

const LN_10: f64 = std::f64::consts::LN_10;

/// Axis-aligned box the UAV may occupy. It must not overlap the open
/// building interior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UavBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl UavBounds {
    /// Default flight box for a building: the outdoor slab x ∈ [−500, 0]
    /// in front of the facade, spanning the building's y and z extents.
    pub fn default_for(building: &BuildingSpec) -> Self {
        Self {
            x_min: -500.0,
            x_max: 0.0,
            y_min: 0.0,
            y_max: building.y_b,
            z_min: 0.0,
            z_max: building.z_b,
        }
    }

    pub fn validate(&self, building: &BuildingSpec) -> Result<()> {
        let axes = [
            (self.x_min, self.x_max, "x"),
            (self.y_min, self.y_max, "y"),
            (self.z_min, self.z_max, "z"),
        ];
        for (lo, hi, name) in axes {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidBounds {
                    reason: format!("{name} bounds must be finite, got [{lo}, {hi}]"),
                });
            }
            if lo > hi {
                return Err(Error::InvalidBounds {
                    reason: format!("{name}_min = {lo} exceeds {name}_max = {hi}"),
                });
            }
        }
        // Overlapping the open interior would let the optimizer fly indoors,
        // where the loss model is undefined. Touching the boundary is fine.
        let overlaps = self.x_max > 0.0
            && self.x_min < building.x_b
            && self.y_max > 0.0
            && self.y_min < building.y_b
            && self.z_max > 0.0
            && self.z_min < building.z_b;
        if overlaps {
            return Err(Error::InvalidBounds {
                reason: "the bounds box overlaps the building interior".into(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Point3) -> bool {
        (self.x_min..=self.x_max).contains(&p.x)
            && (self.y_min..=self.y_max).contains(&p.y)
            && (self.z_min..=self.z_max).contains(&p.z)
    }
}

/// Tuning of the 1D gradient descent.
///
/// `initial_x = None` seeds the descent from a coarse 33-point objective scan
/// over [x_min, x_max]. The fixed step size moves the iterate by at most a
/// fraction of a meter per iteration (step · |gradient|, with gradients of a
/// few dB/m), so a start hundreds of meters from the minimizer cannot reach
/// it within any realistic iteration budget; the scan costs about as much as
/// thirty descent iterations and starts every supported scenario inside the
/// convergence basin.
///
/// `halve_step_on_increase` is an optional stabilizer for oversized steps: if
/// a step would increase the objective, the iterate stays put and the step
/// size halves. Off by default — the plain update is the reference behavior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientDescentConfig {
    pub step_size: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initial_x: Option<f64>,
    pub halve_step_on_increase: bool,
}

impl Default for GradientDescentConfig {
    fn default() -> Self {
        Self {
            step_size: 0.01,
            tolerance: 1e-4,
            max_iterations: 500,
            initial_x: None,
            halve_step_on_increase: false,
        }
    }
}

impl GradientDescentConfig {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.step_size > 0.0 && self.step_size.is_finite(),
             format!("step_size must be positive and finite, got {}", self.step_size)),
            (self.tolerance > 0.0 && self.tolerance.is_finite(),
             format!("tolerance must be positive and finite, got {}", self.tolerance)),
            (self.max_iterations >= 1, "max_iterations must be at least 1".to_string()),
            (self.initial_x.map_or(true, f64::is_finite),
             "initial_x must be finite when given".to_string()),
        ];
        for (ok, reason) in checks {
            if !ok {
                return Err(Error::InvalidDescentConfig { reason });
            }
        }
        Ok(())
    }
}

/// Outcome of an optimization run (descent or grid search).
///
/// `objective_db_sum` is the minimized dB-sum objective; `objective_linear_sum`
/// is Σᵢ 10^(Lᵢ/10), the quantity the link-budget bound constrains. For
/// [`grid_search`], `iterations_used` counts evaluated lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlacementResult {
    pub uav_position: Point3,
    pub objective_db_sum: f64,
    pub objective_linear_sum: f64,
    pub iterations_used: usize,
    pub converged: bool,
    pub feasible: bool,
}

/// One row of a descent trace: the iterate after `iteration` update steps and
/// its objective. Row 0 is the starting point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DescentStep {
    pub iteration: usize,
    pub x: f64,
    pub objective_db_sum: f64,
}

fn validate_users(users: &[Point3], building: &BuildingSpec) -> Result<()> {
    if users.is_empty() {
        return Err(Error::EmptyUserList);
    }
    for u in users {
        if !building.contains(u) {
            return Err(Error::UserOutsideBuilding { x: u.x, y: u.y, z: u.z });
        }
    }
    Ok(())
}

/// Total dB loss Σᵢ Lᵢ from the UAV to every user.
pub fn total_loss_objective(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    if users.is_empty() {
        return Err(Error::EmptyUserList);
    }
    let mut sum = 0.0;
    for user in users {
        sum += total_path_loss(uav, user, building, params)?;
    }
    Ok(sum)
}

/// Linear-domain companion of [`total_loss_objective`]: Σᵢ 10^(Lᵢ/10).
/// This is the side that the allowable-loss bound constrains.
pub fn total_loss_linear_sum(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    if users.is_empty() {
        return Err(Error::EmptyUserList);
    }
    let mut sum = 0.0;
    for user in users {
        sum += 10f64.powf(total_path_loss(uav, user, building, params)? / 10.0);
    }
    Ok(sum)
}

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
    Z,
}

fn gradient_axis(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
    axis: Axis,
) -> Result<f64> {
    if users.is_empty() {
        return Err(Error::EmptyUserList);
    }
    if building.interior_contains(uav) {
        return Err(Error::UavInsideBuilding { x: uav.x, y: uav.y, z: uav.z });
    }
    let w_ln10 = params.w / LN_10;
    let two_g3 = 2.0 * params.g3;
    let mut grad = 0.0;
    for (i, u) in users.iter().enumerate() {
        let dx = uav.x - u.x;
        let dy = uav.y - u.y;
        let dz = uav.z - u.z;
        let r2 = dx * dx + dy * dy;
        if r2 == 0.0 {
            return Err(Error::GradientSingularity { user_index: i });
        }
        let d2 = r2 + dz * dz;
        let r = r2.sqrt();
        let d = d2.sqrt();
        let d3 = d2 * d;
        // d(L_F)/dq = (w/ln10)·dq/d²  for q ∈ {x, y, z}; the penetration term
        // follows from cos θ = r/d, whose horizontal partials are dq·dz²/(r·d³)
        // and whose vertical partial is −r·dz/d³.
        let pen = two_g3 * (1.0 - r / d);
        grad += match axis {
            Axis::X => w_ln10 * dx / d2 - pen * dx * dz * dz / (r * d3),
            Axis::Y => w_ln10 * dy / d2 - pen * dy * dz * dz / (r * d3),
            Axis::Z => w_ln10 * dz / d2 + pen * r * dz / d3,
        };
    }
    Ok(grad)
}

/// Analytic ∂(Σᵢ Lᵢ)/∂x_UAV in dB/m.
///
/// Singular when the UAV sits on the vertical line through some user (zero
/// horizontal distance): the penetration term's derivative is undefined there.
pub fn gradient_x(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    gradient_axis(uav, users, building, params, Axis::X)
}

/// Analytic ∂(Σᵢ Lᵢ)/∂y_UAV in dB/m. Zero at y = 0.5·y_b for layouts
/// mirror-symmetric across the vertical mid-plane.
pub fn gradient_y(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    gradient_axis(uav, users, building, params, Axis::Y)
}

/// Analytic ∂(Σᵢ Lᵢ)/∂z_UAV in dB/m. Zero at z = 0.5·z_b for layouts
/// mirror-symmetric across the horizontal mid-plane. Uses the single signed
/// (z_UAV − z_i) expression, so users at exactly the UAV altitude need no
/// special casing.
pub fn gradient_z(
    uav: &Point3,
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    gradient_axis(uav, users, building, params, Axis::Z)
}

/// True if the layout maps onto itself (within 1 µm) under reflection through
/// each building mid-plane, y → y_b − y and z → z_b − z.
pub fn is_symmetric_layout(users: &[Point3], building: &BuildingSpec) -> bool {
    let y_b = building.y_b;
    let z_b = building.z_b;
    matches_under(users, |p| Point3::new(p.x, y_b - p.y, p.z))
        && matches_under(users, |p| Point3::new(p.x, p.y, z_b - p.z))
}

fn matches_under(users: &[Point3], reflect: impl Fn(&Point3) -> Point3) -> bool {
    const TOL: f64 = 1e-6;
    let key = |p: &Point3| (p.x, p.y, p.z);
    let mut original: Vec<Point3> = users.to_vec();
    original.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    let mut mirrored: Vec<Point3> = users.iter().map(reflect).collect();
    mirrored.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    original.iter().zip(&mirrored).all(|(a, b)| {
        (a.x - b.x).abs() <= TOL && (a.y - b.y).abs() <= TOL && (a.z - b.z).abs() <= TOL
    })
}

fn coarse_scan_start(
    users: &[Point3],
    building: &BuildingSpec,
    params: &RfModelParams,
    bounds: &UavBounds,
    y: f64,
    z: f64,
) -> Result<f64> {
    const SCAN_POINTS: usize = 33;
    let span = bounds.x_max - bounds.x_min;
    let mut best_x = bounds.x_min;
    let mut best = f64::INFINITY;
    for k in 0..SCAN_POINTS {
        let x = if span == 0.0 {
            bounds.x_min
        } else {
            bounds.x_min + span * k as f64 / (SCAN_POINTS - 1) as f64
        };
        let obj = total_loss_objective(&Point3::new(x, y, z), users, building, params)?;
        if obj < best {
            best = obj;
            best_x = x;
        }
    }
    Ok(best_x)
}

/// Gradient descent on the standoff coordinate, with y and z pinned to the
/// building mid-planes.
///
/// Requires a layout symmetric across both mid-planes — that symmetry is what
/// makes the mid-plane pinning optimal. Each iteration applies
/// x ← x − step·∂L/∂x and clamps to [x_min, x_max]; the run converges when a
/// step moves less than `tolerance` and gives up after `max_iterations`.
pub fn descend_x(
    users: &[Point3],
    building: &BuildingSpec,
    rf: &RfModelParams,
    bounds: &UavBounds,
    config: &GradientDescentConfig,
) -> Result<PlacementResult> {
    descend_x_with_trace(users, building, rf, bounds, config).map(|(result, _)| result)
}

/// [`descend_x`] that also returns the per-iteration trace, starting with the
/// initial point at iteration 0.
pub fn descend_x_with_trace(
    users: &[Point3],
    building: &BuildingSpec,
    rf: &RfModelParams,
    bounds: &UavBounds,
    config: &GradientDescentConfig,
) -> Result<(PlacementResult, Vec<DescentStep>)> {
    building.validate()?;
    rf.validate()?;
    config.validate()?;
    bounds.validate(building)?;
    validate_users(users, building)?;
    if !is_symmetric_layout(users, building) {
        return Err(Error::AsymmetricLayout);
    }
    let y = building.mid_y();
    let z = building.mid_z();
    if !(bounds.y_min..=bounds.y_max).contains(&y) || !(bounds.z_min..=bounds.z_max).contains(&z) {
        return Err(Error::InvalidBounds {
            reason: "descent pins y and z to the building mid-planes, which lie outside the bounds"
                .into(),
        });
    }

    let mut x = match config.initial_x {
        Some(x0) => x0.clamp(bounds.x_min, bounds.x_max),
        None => coarse_scan_start(users, building, rf, bounds, y, z)?,
    };
    let mut step = config.step_size;
    let mut objective = total_loss_objective(&Point3::new(x, y, z), users, building, rf)?;
    let mut trace = vec![DescentStep { iteration: 0, x, objective_db_sum: objective }];
    let mut converged = false;
    let mut iterations_used = config.max_iterations;

    for n in 1..=config.max_iterations {
        let grad = gradient_x(&Point3::new(x, y, z), users, building, rf)?;
        let candidate = (x - step * grad).clamp(bounds.x_min, bounds.x_max);
        let candidate_obj =
            total_loss_objective(&Point3::new(candidate, y, z), users, building, rf)?;
        if config.halve_step_on_increase && candidate_obj > objective {
            step *= 0.5;
            trace.push(DescentStep { iteration: n, x, objective_db_sum: objective });
            continue;
        }
        let moved = (candidate - x).abs();
        x = candidate;
        objective = candidate_obj;
        trace.push(DescentStep { iteration: n, x, objective_db_sum: objective });
        if moved < config.tolerance {
            converged = true;
            iterations_used = n;
            break;
        }
    }

    let uav = Point3::new(x, y, z);
    let result = PlacementResult {
        uav_position: uav,
        objective_db_sum: objective,
        objective_linear_sum: total_loss_linear_sum(&uav, users, building, rf)?,
        iterations_used,
        converged,
        feasible: true,
    };
    Ok((result, trace))
}

fn axis_points(min: f64, max: f64, resolution: f64) -> Vec<f64> {
    let count = ((max - min) / resolution + 1e-9).floor() as usize + 1;
    (0..count).map(|k| min + k as f64 * resolution).collect()
}

/// Streaming evaluator for the lattice scans. Splits the objective into a
/// UAV-independent constant plus per-user distance and angle terms, hoists
/// the horizontal components out of the z loop, and batches the log of the
/// distance product to cut down on transcendental calls. Agrees with
/// [`total_loss_objective`] to ~1e−12 relative; exact minimizer objectives
/// are always recomputed with the canonical sum.
struct FastObjective {
    ux: Vec<f64>,
    uy: Vec<f64>,
    uz: Vec<f64>,
    r2: Vec<f64>,
    r: Vec<f64>,
    const_db: f64,
    w_half_ln10: f64,
    g3: f64,
}

impl FastObjective {
    fn new(users: &[Point3], params: &RfModelParams) -> Self {
        let m = users.len() as f64;
        let depth_sum: f64 = users.iter().map(|u| u.x).sum();
        Self {
            ux: users.iter().map(|u| u.x).collect(),
            uy: users.iter().map(|u| u.y).collect(),
            uz: users.iter().map(|u| u.z).collect(),
            r2: vec![0.0; users.len()],
            r: vec![0.0; users.len()],
            const_db: m * (params.w * params.f_ghz.log10() + params.g1 + params.g2)
                + params.g4 * depth_sum,
            w_half_ln10: params.w / (2.0 * LN_10),
            g3: params.g3,
        }
    }

    fn set_horizontal(&mut self, x: f64, y: f64) {
        for i in 0..self.ux.len() {
            let dx = x - self.ux[i];
            let dy = y - self.uy[i];
            let r2 = dx * dx + dy * dy;
            self.r2[i] = r2;
            self.r[i] = r2.sqrt();
        }
    }

    fn eval_at_z(&self, z: f64) -> f64 {
        let mut sum_ln = 0.0;
        let mut prod = 1.0;
        let mut pen = 0.0;
        for i in 0..self.uz.len() {
            let dz = z - self.uz[i];
            let d2 = self.r2[i] + dz * dz;
            let d = d2.sqrt();
            let t = 1.0 - self.r[i] / d;
            pen += t * t;
            prod *= d2;
            if !(1e-280..=1e280).contains(&prod) {
                sum_ln += prod.ln();
                prod = 1.0;
            }
        }
        sum_ln += prod.ln();
        self.w_half_ln10 * sum_ln + self.g3 * pen + self.const_db
    }
}

/// Exhaustive lattice minimization of the dB-sum objective over the bounds
/// box at the given resolution. Works for any layout, symmetric or not.
///
/// Lattice points are min + k·resolution per axis, keeping every point within
/// the bounds (the upper bound itself is included when the span divides
/// evenly). Ties break toward smaller x, then y, then z. `iterations_used`
/// reports the number of lattice points evaluated.
pub fn grid_search(
    users: &[Point3],
    building: &BuildingSpec,
    rf: &RfModelParams,
    bounds: &UavBounds,
    resolution: f64,
) -> Result<PlacementResult> {
    building.validate()?;
    rf.validate()?;
    bounds.validate(building)?;
    validate_users(users, building)?;
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidResolution(resolution));
    }
    let xs = axis_points(bounds.x_min, bounds.x_max, resolution);
    let ys = axis_points(bounds.y_min, bounds.y_max, resolution);
    let zs = axis_points(bounds.z_min, bounds.z_max, resolution);

    let mut fast = FastObjective::new(users, rf);
    let mut best = f64::INFINITY;
    let mut best_point = None;
    for &x in &xs {
        for &y in &ys {
            fast.set_horizontal(x, y);
            for &z in &zs {
                let obj = fast.eval_at_z(z);
                if obj < best {
                    best = obj;
                    best_point = Some(Point3::new(x, y, z));
                }
            }
        }
    }
    let uav = best_point.ok_or(Error::InvalidBounds { reason: "empty lattice".into() })?;
    Ok(PlacementResult {
        uav_position: uav,
        objective_db_sum: total_loss_objective(&uav, users, building, rf)?,
        objective_linear_sum: total_loss_linear_sum(&uav, users, building, rf)?,
        iterations_used: xs.len() * ys.len() * zs.len(),
        converged: true,
        feasible: true,
    })
}

/// Counts lattice points whose objective beats all of their (up to 26)
/// lattice neighbors, over the same lattice as [`grid_search`].
///
/// Exact ties are resolved by treating the lexicographically smaller lattice
/// index as the smaller value — the same tie-break direction `grid_search`
/// uses. Mirror-symmetric layouts can otherwise produce tied twin points
/// around an off-lattice mid-plane, which are really one minimum straddled by
/// the lattice, and the tie-break counts such a plateau once.
pub fn count_grid_local_minima(
    users: &[Point3],
    building: &BuildingSpec,
    rf: &RfModelParams,
    bounds: &UavBounds,
    resolution: f64,
) -> Result<usize> {
    building.validate()?;
    rf.validate()?;
    bounds.validate(building)?;
    validate_users(users, building)?;
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidResolution(resolution));
    }
    let xs = axis_points(bounds.x_min, bounds.x_max, resolution);
    let ys = axis_points(bounds.y_min, bounds.y_max, resolution);
    let zs = axis_points(bounds.z_min, bounds.z_max, resolution);
    let (nx, ny, nz) = (xs.len(), ys.len(), zs.len());
    if nx * ny * nz > 100_000_000 {
        return Err(Error::InvalidResolution(resolution));
    }

    let mut values = vec![0.0f64; nx * ny * nz];
    let mut fast = FastObjective::new(users, rf);
    for (ix, &x) in xs.iter().enumerate() {
        for (iy, &y) in ys.iter().enumerate() {
            fast.set_horizontal(x, y);
            let base = (ix * ny + iy) * nz;
            for (iz, &z) in zs.iter().enumerate() {
                values[base + iz] = fast.eval_at_z(z);
            }
        }
    }

    let flat = |ix: usize, iy: usize, iz: usize| (ix * ny + iy) * nz + iz;
    let mut count = 0usize;
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                let here = flat(ix, iy, iz);
                let v = values[here];
                let mut dominates = true;
                'neighbors: for dx in -1i64..=1 {
                    for dy in -1i64..=1 {
                        for dz in -1i64..=1 {
                            if dx == 0 && dy == 0 && dz == 0 {
                                continue;
                            }
                            let jx = ix as i64 + dx;
                            let jy = iy as i64 + dy;
                            let jz = iz as i64 + dz;
                            if jx < 0 || jy < 0 || jz < 0 {
                                continue;
                            }
                            let (jx, jy, jz) = (jx as usize, jy as usize, jz as usize);
                            if jx >= nx || jy >= ny || jz >= nz {
                                continue;
                            }
                            let there = flat(jx, jy, jz);
                            let w = values[there];
                            if w < v || (w == v && there < here) {
                                dominates = false;
                                break 'neighbors;
                            }
                        }
                    }
                }
                if dominates {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// True when the result's linear-sum objective satisfies the allowable-loss
/// bound implied by the link budget (non-strict: equality is feasible). With
/// the default infinite power cap every placement is feasible; a zero rate
/// demand makes the bound undefined and errors.
pub fn check_feasibility(result: &PlacementResult, link: &LinkBudgetParams) -> Result<bool> {
    Ok(result.objective_linear_sum <= max_allowable_loss(link)?)
}
