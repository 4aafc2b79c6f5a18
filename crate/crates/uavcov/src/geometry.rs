//! Geometric primitives relating a UAV position, an indoor user position, and
//! the building envelope.
//!
//! The building occupies the box [0, x_b] × [0, y_b] × [0, z_b]; the facade
//! the UAV serves is the plane x = 0, so the UAV operates in the x ≤ 0
//! half-space. All coordinates and distances are in meters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 3D position in meters (UAV or user).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

/// Axis-aligned building box with a uniform floor height.
///
/// `x_b` is the depth along the UAV-facing axis, `y_b` the facade width and
/// `z_b` the height; `z_b` must be an integer multiple of `floor_height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuildingSpec {
    pub x_b: f64,
    pub y_b: f64,
    pub z_b: f64,
    pub floor_height: f64,
}

impl BuildingSpec {
    pub fn new(x_b: f64, y_b: f64, z_b: f64, floor_height: f64) -> Result<Self> {
        let b = Self { x_b, y_b, z_b, floor_height };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            (self.x_b, "x_b"),
            (self.y_b, "y_b"),
            (self.z_b, "z_b"),
            (self.floor_height, "floor_height"),
        ];
        for (v, name) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidBuilding {
                    reason: format!("{name} must be positive and finite, got {v}"),
                });
            }
        }
        let ratio = self.z_b / self.floor_height;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) || ratio.round() < 1.0 {
            return Err(Error::InvalidBuilding {
                reason: format!(
                    "z_b = {} is not an integer multiple of floor_height = {}",
                    self.z_b, self.floor_height
                ),
            });
        }
        Ok(())
    }

    pub fn num_floors(&self) -> usize {
        (self.z_b / self.floor_height).round() as usize
    }

    /// True if the point lies in the closed building box (boundary included).
    pub fn contains(&self, p: &Point3) -> bool {
        (0.0..=self.x_b).contains(&p.x)
            && (0.0..=self.y_b).contains(&p.y)
            && (0.0..=self.z_b).contains(&p.z)
    }

    /// True if the point lies strictly inside the box. The boundary does not
    /// count: a UAV hovering in the facade plane x = 0 is still outdoors.
    pub fn interior_contains(&self, p: &Point3) -> bool {
        p.x > 0.0 && p.x < self.x_b && p.y > 0.0 && p.y < self.y_b && p.z > 0.0 && p.z < self.z_b
    }

    /// y-coordinate of the vertical mid-plane.
    pub fn mid_y(&self) -> f64 {
        0.5 * self.y_b
    }

    /// z-coordinate of the horizontal mid-plane.
    pub fn mid_z(&self) -> f64 {
        0.5 * self.z_b
    }
}

/// Euclidean distance between two points.
pub fn distance_3d(a: &Point3, b: &Point3) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Elevation angle θ ∈ [0, π/2] of the UAV–user ray above the horizontal,
/// defined by cos θ = (horizontal distance) / (3D distance).
///
/// θ = 0 when UAV and user share an altitude and π/2 when they are vertically
/// aligned. Errors if the points coincide.
pub fn incident_angle(uav: &Point3, user: &Point3) -> Result<f64> {
    let dx = uav.x - user.x;
    let dy = uav.y - user.y;
    let dz = uav.z - user.z;
    let horiz_sq = dx * dx + dy * dy;
    let d = (horiz_sq + dz * dz).sqrt();
    if d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let cos_theta = (horiz_sq.sqrt() / d).clamp(0.0, 1.0);
    Ok(cos_theta.acos())
}

/// Indoor 2D distance of a user: the perpendicular depth from the UAV-facing
/// facade at x = 0. Independent of the UAV position by construction.
pub fn indoor_distance_2d(user: &Point3, building: &BuildingSpec) -> Result<f64> {
    if !building.contains(user) {
        return Err(Error::UserOutsideBuilding { x: user.x, y: user.y, z: user.z });
    }
    Ok(user.x)
}
