//! The singular radial initial value problem, its first zero, and the
//! ground-state constants.

mod ground;
mod params;
mod profile;
pub(crate) mod series;
pub(crate) mod stepper;

pub use ground::{first_zero, ground_state, integrate_phi, GroundState};
pub use params::{ProblemParams, DEFAULT_R_MAX, DEFAULT_TOL_ODE, DEFAULT_TOL_ROOT};
pub use profile::RadialProfile;
pub use series::{series_start, unit_sphere_area};
