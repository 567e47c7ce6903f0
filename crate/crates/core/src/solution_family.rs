//! Entire solutions `v(x) = μ^q φ(μ|x - x0|)` inside the support ball and an
//! explicit harmonic tail outside, together with their scaling group, mass,
//! Newton-potential representation and far-field constants.
//!
//! Every evaluation goes through the radial distance `s = |x - x0|`; the
//! `n`-dimensional integrals reduce to one-dimensional shell integrals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode_core::stepper::positive_power;
use crate::ode_core::GroundState;
use crate::quadrature;

const QUAD_REL_TOL: f64 = 1e-13;

/// One member of the classified family: a ground state, a centre and a scale.
#[derive(Debug, Clone, PartialEq)]
pub struct EntireSolution {
    pub gs: Arc<GroundState>,
    pub x0: Vec<f64>,
    pub mu: f64,
    pub q: f64,
}

/// Constants of the expansion `v(x) = -c_gamma + c_gamma_prime |x - x0|^{2-n} + o(|x|^{2-n})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarField {
    pub c_gamma: f64,
    pub c_gamma_prime: f64,
}

/// Builds the family member with centre `x0` and scale `mu`.
pub fn entire_solution(
    gs: impl Into<Arc<GroundState>>,
    x0: &[f64],
    mu: f64,
) -> Result<EntireSolution> {
    let gs = gs.into();
    let params = gs.params();
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::domain(format!("scale mu = {mu} must be positive")));
    }
    if !(params.gamma > 1.0) {
        return Err(Error::domain(format!(
            "entire solutions need gamma > 1 (got {}); the mass exponent degenerates at gamma = 1",
            params.gamma
        )));
    }
    if x0.len() != params.n as usize {
        return Err(Error::domain(format!(
            "centre has {} coordinates, expected n = {}",
            x0.len(),
            params.n
        )));
    }
    Ok(EntireSolution {
        q: gs.q,
        gs,
        x0: x0.to_vec(),
        mu,
    })
}

/// `v(x)`; see [`EntireSolution::eval_radial`].
pub fn eval_entire(sol: &EntireSolution, x: &[f64]) -> f64 {
    sol.eval(x)
}

/// The family member `ν^q v(νx)`: scale `ν·μ`, centre `x0/ν`.
pub fn scale_action(sol: &EntireSolution, nu: f64) -> Result<EntireSolution> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(format!(
            "scaling factor nu = {nu} must be positive"
        )));
    }
    Ok(EntireSolution {
        gs: Arc::clone(&sol.gs),
        x0: sol.x0.iter().map(|c| c / nu).collect(),
        mu: nu * sol.mu,
        q: sol.q,
    })
}

/// `∫_{R^n} v₊^{n(γ-1)/2} dx`, independent of `μ`.
pub fn total_mass(sol: &EntireSolution) -> f64 {
    sol.total_mass()
}

/// Newton potential of `v₊^γ` at radial distance `s`.
pub fn newton_potential(sol: &EntireSolution, s: f64) -> f64 {
    sol.newton_potential(s)
}

/// `max_s |v(s) - (N(s) - c_gamma)|` over `radii`.
pub fn representation_residual(sol: &EntireSolution, radii: &[f64]) -> Result<f64> {
    if radii.is_empty() {
        return Err(Error::domain(
            "representation_residual needs at least one radius",
        ));
    }
    if let Some(s) = radii.iter().find(|s| !(**s >= 0.0)) {
        return Err(Error::domain(format!("radius {s} must be >= 0")));
    }
    let c = sol.far_field_constants().c_gamma;
    Ok(radii
        .iter()
        .map(|&s| (sol.eval_radial(s) - (sol.newton_potential(s) - c)).abs())
        .fold(0.0, f64::max))
}

pub fn far_field_constants(sol: &EntireSolution) -> FarField {
    sol.far_field_constants()
}

impl EntireSolution {
    fn n(&self) -> u32 {
        self.gs.params().n
    }

    fn gamma(&self) -> f64 {
        self.gs.params().gamma
    }

    /// Radius `r*/μ` of the positivity ball.
    pub fn support_radius(&self) -> f64 {
        self.gs.r_star / self.mu
    }

    /// `|x - x0|`.
    pub fn distance(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.x0.len());
        x.iter()
            .zip(&self.x0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.eval_radial(self.distance(x))
    }

    /// Value at radial distance `s` from the centre.
    pub fn eval_radial(&self, s: f64) -> f64 {
        if s <= self.support_radius() {
            self.mu.powf(self.q) * self.gs.profile.value(self.mu * s)
        } else {
            let n = self.n() as i32;
            let ff = self.far_field_constants();
            ff.c_gamma_prime * (s.powi(2 - n) - self.support_radius().powi(2 - n))
        }
    }

    /// `dv/ds` at radial distance `s`.
    pub fn slope_radial(&self, s: f64) -> f64 {
        if s <= self.support_radius() {
            self.mu.powf(self.q + 1.0) * self.gs.profile.slope(self.mu * s)
        } else {
            let n = self.n() as i32;
            -(n - 2) as f64 * self.far_field_constants().c_gamma_prime * s.powi(1 - n)
        }
    }

    pub fn far_field_constants(&self) -> FarField {
        let n = self.n() as f64;
        let c_gamma_prime = self.mu.powf(self.q - (n - 2.0)) * self.gs.lambda_flux
            / ((n - 2.0) * self.gs.sphere_area());
        let c_gamma = c_gamma_prime * (self.mu / self.gs.r_star).powf(n - 2.0);
        FarField {
            c_gamma,
            c_gamma_prime,
        }
    }

    /// `c_gamma_prime` recomputed as `(1/((n-2)ω)) ∫ v₊^γ dx` by quadrature.
    pub fn c_gamma_prime_quadrature(&self) -> f64 {
        let n = self.n() as i32;
        self.shell_integral(self.gamma(), n - 1, 0.0, self.support_radius()) / (n - 2) as f64
    }

    pub fn total_mass(&self) -> f64 {
        let n = self.n() as i32;
        let p = self.gs.params().mass_exponent();
        self.gs.sphere_area() * self.shell_integral(p, n - 1, 0.0, self.support_radius())
    }

    /// `N(s) = (1/(n-2)) [ s^{2-n} ∫_0^s f t^{n-1} dt + ∫_s^∞ f t dt ]` with
    /// `f = v₊^γ`, i.e. the Newton potential `(1/((n-2)ω)) ∫ |x-y|^{2-n} f(y) dy`
    /// of a radial density evaluated by the shell theorem.
    pub fn newton_potential(&self, s: f64) -> f64 {
        let n = self.n() as i32;
        let rho = self.support_radius();
        let g = self.gamma();
        let inner = if s > 0.0 {
            s.powi(2 - n) * self.shell_integral(g, n - 1, 0.0, s.min(rho))
        } else {
            0.0
        };
        let outer = if s < rho {
            self.shell_integral(g, 1, s, rho)
        } else {
            0.0
        };
        (inner + outer) / (n - 2) as f64
    }

    /// `∫_a^b v₊(t)^power t^weight dt` with the scaled profile nodes as breakpoints.
    fn shell_integral(&self, power: f64, weight: i32, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mut breaks = vec![a];
        breaks.extend(
            self.gs
                .profile
                .nodes()
                .iter()
                .map(|r| r / self.mu)
                .filter(|&t| t > a && t < b),
        );
        breaks.push(b);
        let f = |t: f64| positive_power(self.eval_radial(t), power) * t.powi(weight);
        quadrature::integrate(f, &breaks, QUAD_REL_TOL, 0.0).value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode_core::{ground_state, ProblemParams};

    fn gs32() -> Arc<GroundState> {
        Arc::new(ground_state(&ProblemParams::new(3, 2.0)).unwrap())
    }

    #[test]
    fn rejects_bad_scale_centre_and_linear_case() {
        let gs = gs32();
        assert!(entire_solution(gs.clone(), &[0.0; 3], 0.0)
            .unwrap_err()
            .is_domain());
        assert!(entire_solution(gs.clone(), &[0.0; 3], -1.0)
            .unwrap_err()
            .is_domain());
        assert!(entire_solution(gs.clone(), &[0.0; 2], 1.0)
            .unwrap_err()
            .is_domain());
        let lin = ground_state(&ProblemParams::oracle(3, 1.0)).unwrap();
        assert!(entire_solution(lin, &[0.0; 3], 1.0)
            .unwrap_err()
            .is_domain());
        let sol = entire_solution(gs, &[0.0; 3], 1.0).unwrap();
        assert!(scale_action(&sol, 0.0).unwrap_err().is_domain());
        assert!(representation_residual(&sol, &[]).unwrap_err().is_domain());
    }

    #[test]
    fn centre_value_and_interface() {
        let sol = entire_solution(gs32(), &[1.0, -2.0, 0.5], 4.0).unwrap();
        assert_eq!(sol.eval(&[1.0, -2.0, 0.5]), 4.0_f64.powf(sol.q));
        assert!(sol.eval_radial(sol.support_radius()).abs() <= 1e-10);
    }

    #[test]
    fn identity_scaling() {
        let sol = entire_solution(gs32(), &[0.3, 0.1, 0.0], 2.0).unwrap();
        assert_eq!(scale_action(&sol, 1.0).unwrap(), sol);
    }
}
