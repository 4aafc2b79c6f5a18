//! Scenario definition and serialization: synthetic user layouts, the TOML
//! scenario file format, and CSV output for sweep tables.
//!
//! A scenario bundles everything one optimization run needs — building,
//! propagation constants, link budget, flight bounds, and the user
//! population. Files describe users either as `generate = N` (N per floor,
//! laid out by [`generate_symmetric_layout`]) or as an explicit coordinate
//! list; every omitted section falls back to the documented defaults, so a
//! file holding nothing but the building dimensions is complete.

use std::fmt;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BuildingSpec, Point3};
use crate::linkbudget::LinkBudgetParams;
use crate::pathloss::RfModelParams;
use crate::placement::UavBounds;

/// How a scenario's user population was specified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsersSpec {
    /// Synthetic mirror-symmetric layout with this many users per floor.
    Generated { users_per_floor: usize },
    /// Coordinates listed verbatim in the file.
    Explicit,
}

/// A fully resolved scenario: every field validated, users materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub building: BuildingSpec,
    pub rf: RfModelParams,
    pub link: LinkBudgetParams,
    pub bounds: UavBounds,
    pub users: Vec<Point3>,
    users_spec: UsersSpec,
}

impl Scenario {
    /// Builds a scenario from a building and a generated layout, with every
    /// other parameter at its default. `link.num_users` tracks the layout.
    pub fn generated(building: BuildingSpec, users_per_floor: usize) -> Result<Self> {
        let users = generate_symmetric_layout(&building, users_per_floor)?;
        let link = LinkBudgetParams { num_users: users.len(), ..Default::default() };
        Ok(Self {
            bounds: UavBounds::default_for(&building),
            rf: RfModelParams::default(),
            link,
            users,
            users_spec: UsersSpec::Generated { users_per_floor },
            building,
        })
    }

    pub fn users_spec(&self) -> UsersSpec {
        self.users_spec
    }

    /// Rebuilds this scenario for a different building, regenerating the
    /// layout and refreshing the building-derived bounds defaults. Only
    /// generated layouts can be transplanted — explicit coordinates have no
    /// defined mapping onto a resized building.
    pub fn regenerated_for(&self, building: BuildingSpec) -> Result<Self> {
        let UsersSpec::Generated { users_per_floor } = self.users_spec else {
            return Err(Error::SweepNeedsGeneratedLayout);
        };
        let users = generate_symmetric_layout(&building, users_per_floor)?;
        let link = LinkBudgetParams { num_users: users.len(), ..self.link };
        Ok(Self {
            bounds: UavBounds {
                y_max: building.y_b,
                z_max: building.z_b,
                ..UavBounds::default_for(&building)
            },
            rf: self.rf,
            link,
            users,
            users_spec: self.users_spec,
            building,
        })
    }
}

fn most_square_factors(n: usize) -> (usize, usize) {
    let mut a = (n as f64).sqrt().floor() as usize;
    while n % a != 0 {
        a -= 1;
    }
    (a, n / a)
}

/// Mirror-image positions across [0, extent] for `count` slots at the given
/// pitch, built so that reflection y → extent − y permutes the values
/// *bitwise*. Each outer value is v = fl(extent − raw) with raw ≤ extent/2,
/// and its partner extent − v is then exact (the operands are within a factor
/// of two of each other), so reflecting either member reproduces the other
/// with no rounding.
fn mirrored_positions(extent: f64, count: usize, pitch: f64) -> Vec<f64> {
    let mut out = vec![0.0; count];
    for j in 0..count / 2 {
        let raw = (j as f64 + 0.5) * pitch;
        let hi = extent - raw;
        let lo = extent - hi;
        out[j] = lo;
        out[count - 1 - j] = hi;
    }
    if count % 2 == 1 {
        out[count / 2] = 0.5 * extent;
    }
    out
}

/// Synthetic population: `users_per_floor` users on every floor, arranged in
/// a rectangular grid that is mirror-symmetric across the building's y
/// mid-plane; stacking one such grid per floor makes the full set symmetric
/// across the z mid-plane as well. Requires an even, nonzero count per floor
/// so the y columns pair up. Users are strictly inside the box.
///
/// The per-floor grid is the most nearly square factorization n_x × n_y with
/// n_x ≤ n_y (20 → 4 × 5), cell-centered: depths (i + ½)·x_b/n_x, widths
/// paired around the mid-line, heights at floor centers (k + ½)·floor_height.
/// Both reflections, y → y_b − y and z → z_b − z, permute the returned points
/// bitwise — not merely within tolerance — so downstream symmetry checks and
/// gradient cancellations are exact.
pub fn generate_symmetric_layout(
    building: &BuildingSpec,
    users_per_floor: usize,
) -> Result<Vec<Point3>> {
    building.validate()?;
    if users_per_floor == 0 || users_per_floor % 2 != 0 {
        return Err(Error::OddUsersPerFloor(users_per_floor));
    }
    let (n_x, n_y) = most_square_factors(users_per_floor);
    let depths: Vec<f64> =
        (0..n_x).map(|i| (i as f64 + 0.5) * building.x_b / n_x as f64).collect();
    let widths = mirrored_positions(building.y_b, n_y, building.y_b / n_y as f64);
    let floors = building.num_floors();
    let heights = mirrored_positions(building.z_b, floors, building.floor_height);

    let mut users = Vec::with_capacity(floors * users_per_floor);
    for &z in &heights {
        for &x in &depths {
            for &y in &widths {
                users.push(Point3::new(x, y, z));
            }
        }
    }
    Ok(users)
}

// ---------------------------------------------------------------------------
// TOML scenario files

fn default_floor_height() -> f64 {
    5.0
}

fn default_users_per_floor() -> usize {
    20
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildingSection {
    x_b: f64,
    y_b: f64,
    z_b: f64,
    #[serde(default = "default_floor_height")]
    floor_height: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct LinkSection {
    bandwidth_hz: f64,
    rate_demand_bps: f64,
    noise_dbm: f64,
    snr_threshold_db: f64,
    max_tx_power_dbm: f64,
}

impl Default for LinkSection {
    fn default() -> Self {
        let d = LinkBudgetParams::default();
        Self {
            bandwidth_hz: d.bandwidth_hz,
            rate_demand_bps: d.rate_demand_bps,
            noise_dbm: d.noise_dbm,
            snr_threshold_db: d.snr_threshold_db,
            max_tx_power_dbm: d.max_tx_power_dbm,
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct BoundsSection {
    x_min: Option<f64>,
    x_max: Option<f64>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    z_min: Option<f64>,
    z_max: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct UsersSection {
    generate: Option<usize>,
    explicit: Option<Vec<[f64; 3]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    building: BuildingSection,
    #[serde(default)]
    rf: RfModelParams,
    #[serde(default)]
    link: LinkSection,
    #[serde(default)]
    bounds: BoundsSection,
    #[serde(default)]
    users: UsersSection,
}

fn invalid(field: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::InvalidScenario { field: field.into(), message: message.to_string() }
}

fn read_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

/// Parses and validates a scenario file. Omitted sections take the documented
/// defaults; a file containing only `[building]` with the three dimensions is
/// a complete scenario (5 m floors, 20 generated users per floor, default
/// propagation and link constants, default flight bounds). Validation names
/// the offending field — including the index of any user outside the box.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| read_error(path, e))?;
    let file: ScenarioFile = toml::from_str(&text).map_err(|e| Error::ParseScenario {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;

    let b = &file.building;
    let building = BuildingSpec::new(b.x_b, b.y_b, b.z_b, b.floor_height)
        .map_err(|e| invalid("building", e))?;
    let rf = file.rf;
    rf.validate()?;

    let (users, users_spec) = match (file.users.generate, &file.users.explicit) {
        (Some(_), Some(_)) => {
            return Err(invalid("users", "give either `generate` or `explicit`, not both"))
        }
        (Some(per_floor), None) => (
            generate_symmetric_layout(&building, per_floor)
                .map_err(|e| invalid("users.generate", e))?,
            UsersSpec::Generated { users_per_floor: per_floor },
        ),
        (None, Some(list)) => {
            if list.is_empty() {
                return Err(invalid("users.explicit", "at least one user is required"));
            }
            let mut users = Vec::with_capacity(list.len());
            for (i, &[x, y, z]) in list.iter().enumerate() {
                let strictly_inside = x > 0.0
                    && x < building.x_b
                    && y > 0.0
                    && y < building.y_b
                    && z > 0.0
                    && z < building.z_b;
                if !strictly_inside {
                    return Err(invalid(
                        format!("users.explicit[{i}]"),
                        format!("({x}, {y}, {z}) is not strictly inside the building"),
                    ));
                }
                users.push(Point3::new(x, y, z));
            }
            (users, UsersSpec::Explicit)
        }
        (None, None) => (
            generate_symmetric_layout(&building, default_users_per_floor())
                .map_err(|e| invalid("users", e))?,
            UsersSpec::Generated { users_per_floor: default_users_per_floor() },
        ),
    };

    let l = file.link;
    let link = LinkBudgetParams {
        bandwidth_hz: l.bandwidth_hz,
        rate_demand_bps: l.rate_demand_bps,
        num_users: users.len(),
        noise_dbm: l.noise_dbm,
        snr_threshold_db: l.snr_threshold_db,
        max_tx_power_dbm: l.max_tx_power_dbm,
    };
    link.validate()?;

    let defaults = UavBounds::default_for(&building);
    let s = file.bounds;
    let bounds = UavBounds {
        x_min: s.x_min.unwrap_or(defaults.x_min),
        x_max: s.x_max.unwrap_or(defaults.x_max),
        y_min: s.y_min.unwrap_or(defaults.y_min),
        y_max: s.y_max.unwrap_or(defaults.y_max),
        z_min: s.z_min.unwrap_or(defaults.z_min),
        z_max: s.z_max.unwrap_or(defaults.z_max),
    };
    bounds.validate(&building).map_err(|e| invalid("bounds", e))?;

    Ok(Scenario { building, rf, link, bounds, users, users_spec })
}

#[derive(Serialize)]
struct BuildingSectionOut {
    x_b: f64,
    y_b: f64,
    z_b: f64,
    floor_height: f64,
}

#[derive(Serialize)]
struct UsersSectionOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    generate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    explicit: Option<Vec<[f64; 3]>>,
}

#[derive(Serialize)]
struct ScenarioFileOut<'a> {
    building: BuildingSectionOut,
    rf: &'a RfModelParams,
    link: LinkSection,
    bounds: &'a UavBounds,
    users: UsersSectionOut,
}

/// Writes a scenario as TOML with every section explicit. Loading the file
/// back reproduces the scenario exactly: floats round-trip through their
/// shortest decimal form, and generated layouts are stored as their
/// per-floor count and regenerate deterministically.
pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let link = LinkSection {
        bandwidth_hz: scenario.link.bandwidth_hz,
        rate_demand_bps: scenario.link.rate_demand_bps,
        noise_dbm: scenario.link.noise_dbm,
        snr_threshold_db: scenario.link.snr_threshold_db,
        max_tx_power_dbm: scenario.link.max_tx_power_dbm,
    };
    let users = match scenario.users_spec {
        UsersSpec::Generated { users_per_floor } => {
            UsersSectionOut { generate: Some(users_per_floor), explicit: None }
        }
        UsersSpec::Explicit => UsersSectionOut {
            generate: None,
            explicit: Some(scenario.users.iter().map(|u| [u.x, u.y, u.z]).collect()),
        },
    };
    let file = ScenarioFileOut {
        building: BuildingSectionOut {
            x_b: scenario.building.x_b,
            y_b: scenario.building.y_b,
            z_b: scenario.building.z_b,
            floor_height: scenario.building.floor_height,
        },
        rf: &scenario.rf,
        link,
        bounds: &scenario.bounds,
        users,
    };
    let text = toml::to_string_pretty(&file).expect("scenario serialization cannot fail");
    std::fs::write(path, text).map_err(|e| read_error(path, e))
}

// ---------------------------------------------------------------------------
// Sweep tables and CSV output

/// A named one-dimensional sweep: rows of (axis value, result value), sorted
/// ascending in the axis with no duplicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub axis_name: String,
    pub value_name: String,
    pub rows: Vec<(f64, f64)>,
}

impl SweepTable {
    pub fn new(axis_name: impl Into<String>, value_name: impl Into<String>) -> Self {
        Self { axis_name: axis_name.into(), value_name: value_name.into(), rows: Vec::new() }
    }

    /// Row index of the smallest result value (first on ties).
    pub fn argmin(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if best.map_or(true, |b| row.1 < self.rows[b].1) {
                best = Some(i);
            }
        }
        best
    }
}

/// Formats a float with six significant digits, trailing zeros trimmed —
/// fixed notation for magnitudes between 1e−4 and 1e6, scientific outside.
/// `0.5` stays `0.5`, `1/3` becomes `0.333333`, `1.25e8` becomes `1.25e8`.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("float in scientific notation");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_fraction(format!("{v:.decimals$}"))
    } else {
        let m = trim_fraction(mantissa.to_string());
        format!("{m}e{exp}")
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Writes a sweep table as CSV: a `axis_name,value_name` header, then one
/// row per sample with both numbers in six-significant-digit form.
pub fn write_sweep_csv(table: &SweepTable, out: &mut impl std::io::Write) -> std::io::Result<()> {
    writeln!(out, "{},{}", table.axis_name, table.value_name)?;
    for &(a, v) in &table.rows {
        writeln!(out, "{},{}", format_sig6(a), format_sig6(v))?;
    }
    Ok(())
}

/// [`write_sweep_csv`] to a file path.
pub fn save_sweep_csv(table: &SweepTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = std::fs::File::create(path).map_err(|e| read_error(path, e))?;
    write_sweep_csv(table, &mut file).map_err(|e| read_error(path, e))?;
    file.flush().map_err(|e| read_error(path, e))
}
