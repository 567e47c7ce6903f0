//! Numerical laboratory for the constrained Lane–Emden type problem
//! `-Δv = A(x) v₊^γ`, `∫ v₊^{n(γ-1)/2} dx <= T`, with `1 < γ < (n+2)/(n-2)`.
//!
//! * [`ode_core`] integrates the radial ground state and its quantized constants.
//! * [`solution_family`] materializes the entire solutions, their scaling group,
//!   the Newton-potential representation and far-field constants.
//! * [`ball_lab`] shoots radial solutions on balls and runs the blowup,
//!   sup+inf and ε-regularity probes.
//! * [`report`] is the command-line front end.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball_lab;
pub mod error;
pub mod ode_core;
pub mod quadrature;
pub mod report;
pub mod solution_family;

pub use error::{Error, Result};
pub use ode_core::{
    first_zero, ground_state, integrate_phi, GroundState, ProblemParams, RadialProfile,
};
