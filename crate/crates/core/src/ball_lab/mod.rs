//! Radial solutions on balls by centre-value shooting, and the blowup,
//! sup+inf and ε-regularity probes built on them.

mod coefficient;
mod probes;
mod shoot;

pub use coefficient::{AKind, ASpec};
pub use probes::{
    blowup_family, dyadic_grid, eps_regularity_probe, family_center_value, sup_inf_probe,
    sup_inf_threshold, BlowupReport, EpsRegReport, SupInfReport,
};
pub use shoot::{mass_in_ball, shoot_ball, BallSolution};
