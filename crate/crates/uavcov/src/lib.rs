//! Placement of a UAV aerial base station covering indoor users in a
//! high-rise building.
//!
//! The building is an axis-aligned box `[0, x_b] × [0, y_b] × [0, z_b]` whose
//! UAV-facing facade is the plane x = 0; the UAV hovers in the x ≤ 0
//! half-space. Radio links obey an outdoor-to-indoor path-loss model
//! (free-space + facade-penetration + indoor components, in dB) that creates
//! a genuine placement tradeoff: backing away from the building flattens the
//! incident angle and cuts penetration loss, but grows the free-space loss.
//!
//! The crate offers two complementary designs on top of that model:
//!
//! * **Worst-case design** ([`worstcase`]): serve the hardest indoor corner.
//!   The optimal incident angle solves a cubic with exactly one root in
//!   (0, 1) for cos θ, and the matching standoff from the facade follows in
//!   closed form.
//! * **Aggregate design** ([`placement`]): minimize the summed dB loss over
//!   an explicit user population. For layouts symmetric across both building
//!   mid-planes the vertical and lateral coordinates pin to the mid-planes,
//!   and a 1D gradient descent with an analytic derivative finds the standoff;
//!   an exhaustive grid search provides an independent oracle.
//!
//! [`linkbudget`] converts between loss, rate, and transmit power, and
//! [`scenario`] handles generated user layouts, TOML scenario files, and CSV
//! sweep output. A thin CLI binary (`uavcov`) exposes the same operations; see
//! the `examples/` directory for the library-level walkthroughs.
//!
//! ```
//! use uavcov::geometry::BuildingSpec;
//! use uavcov::pathloss::RfModelParams;
//! use uavcov::worstcase::{optimal_standoff, solve_optimal_angle};
//!
//! let rf = RfModelParams::default();
//! let angle = solve_optimal_angle(&rf).unwrap();
//! assert!((angle.theta.to_degrees() - 48.65).abs() < 0.01);
//!
//! let building = BuildingSpec::new(20.0, 50.0, 200.0, 5.0).unwrap();
//! let standoff = optimal_standoff(&building, angle.theta).unwrap();
//! assert!(standoff.d_opt > 0.0 && standoff.feasible);
//! ```

pub mod cli;
pub mod error;
pub mod geometry;
pub mod linkbudget;
pub mod pathloss;
pub mod placement;
pub mod scenario;
pub mod worstcase;

pub use error::{Error, Result};
pub use geometry::{BuildingSpec, Point3};
pub use linkbudget::LinkBudgetParams;
pub use pathloss::RfModelParams;
pub use placement::{GradientDescentConfig, PlacementResult, UavBounds};
pub use scenario::{Scenario, SweepTable};
