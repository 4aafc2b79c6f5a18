//! Outdoor-to-indoor path-loss model, in decibels.
//!
//! The loss between an outdoor transmitter and an indoor user is the sum of
//! three components:
//!
//! ```text
//! L = L_F + L_B + L_I
//! L_F = w·log10(d_3D) + w·log10(f_GHz) + g1     free-space loss
//! L_B = g2 + g3·(1 − cos θ)²                    building penetration loss
//! L_I = g4·d_2D                                 indoor loss
//! ```
//!
//! where θ is the incident (elevation) angle at the facade and d_2D the indoor
//! depth of the user. The same loss can be written in terms of the altitude
//! difference Δh and θ alone, since d_3D = Δh / sin θ; see
//! [`path_loss_dh_theta`]. All losses stay in dB here: linear conversions
//! happen only in the link-budget layer, so units cannot silently mix.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_3d, incident_angle, indoor_distance_2d, BuildingSpec, Point3};

/// Coefficients of the outdoor-to-indoor model plus the carrier frequency.
///
/// Defaults are the 2 GHz parameterization: w = 20, g1 = 32.4 dB, g2 = 14 dB,
/// g3 = 15 dB, g4 = 0.5 dB/m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RfModelParams {
    pub w: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub f_ghz: f64,
}

impl Default for RfModelParams {
    fn default() -> Self {
        Self { w: 20.0, g1: 32.4, g2: 14.0, g3: 15.0, g4: 0.5, f_ghz: 2.0 }
    }
}

impl RfModelParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.w, self.g1, self.g2, self.g3, self.g4, self.f_ghz];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidScenario {
                field: "rf".into(),
                message: "all RF model coefficients must be finite".into(),
            });
        }
        if self.f_ghz <= 0.0 || self.g3 <= 0.0 || self.g4 < 0.0 || self.w <= 0.0 {
            return Err(Error::InvalidScenario {
                field: "rf".into(),
                message: format!(
                    "need f_ghz > 0, g3 > 0, g4 >= 0, w > 0; got f_ghz = {}, g3 = {}, g4 = {}, w = {}",
                    self.f_ghz, self.g3, self.g4, self.w
                ),
            });
        }
        Ok(())
    }
}

/// Free-space loss w·log10(d_3D) + w·log10(f_GHz) + g1, in dB.
pub fn free_space_loss(d3d: f64, params: &RfModelParams) -> Result<f64> {
    if d3d <= 0.0 {
        return Err(Error::NonPositiveDistance(d3d));
    }
    Ok(params.w * d3d.log10() + params.w * params.f_ghz.log10() + params.g1)
}

/// Building penetration loss g2 + g3·(1 − cos θ)², in dB, for θ ∈ [0, π/2].
pub fn penetration_loss(theta: f64, params: &RfModelParams) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::AngleOutOfRange { theta, expected: "[0, pi/2]" });
    }
    let t = 1.0 - theta.cos();
    Ok(params.g2 + params.g3 * t * t)
}

/// Indoor loss g4·d_2D, in dB.
pub fn indoor_loss(d2d: f64, params: &RfModelParams) -> Result<f64> {
    if d2d < 0.0 {
        return Err(Error::NegativeIndoorDistance(d2d));
    }
    Ok(params.g4 * d2d)
}

/// Total loss L_F + L_B + L_I between a UAV and an indoor user, in dB.
///
/// The user must lie in the building box and the UAV outside its interior
/// (the model has no meaning for an indoor transmitter).
pub fn total_path_loss(
    uav: &Point3,
    user: &Point3,
    building: &BuildingSpec,
    params: &RfModelParams,
) -> Result<f64> {
    if building.interior_contains(uav) {
        return Err(Error::UavInsideBuilding { x: uav.x, y: uav.y, z: uav.z });
    }
    let d2d = indoor_distance_2d(user, building)?;
    let theta = incident_angle(uav, user)?;
    let lf = free_space_loss(distance_3d(uav, user), params)?;
    let lb = penetration_loss(theta, params)?;
    let li = indoor_loss(d2d, params)?;
    Ok(lf + lb + li)
}

/// Total loss parameterized by altitude difference and incident angle:
///
/// ```text
/// L(Δh, θ) = w·log10(Δh / sin θ) + w·log10(f_GHz) + g1
///          + g2 + g3·(1 − cos θ)² + g4·d_2D
/// ```
///
/// Equivalent to [`total_path_loss`] under d_3D = Δh / sin θ; θ must be in
/// (0, π/2] since the range diverges as θ → 0 at fixed Δh.
pub fn path_loss_dh_theta(
    delta_h: f64,
    theta: f64,
    d2d: f64,
    params: &RfModelParams,
) -> Result<f64> {
    if delta_h <= 0.0 {
        return Err(Error::NonPositiveDistance(delta_h));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::AngleOutOfRange { theta, expected: "(0, pi/2]" });
    }
    if d2d < 0.0 {
        return Err(Error::NegativeIndoorDistance(d2d));
    }
    let cos_term = 1.0 - theta.cos();
    Ok(params.w * (delta_h / theta.sin()).log10()
        + params.w * params.f_ghz.log10()
        + params.g1
        + params.g2
        + params.g3 * cos_term * cos_term
        + params.g4 * d2d)
}
