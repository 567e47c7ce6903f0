use super::coefficient::{AKind, ASpec};
use crate::error::{Error, Result};
use crate::ode_core::series::{bootstrap_radius, radial_power_series};
use crate::ode_core::stepper::{integrate, RadialRhs};
use crate::ode_core::{first_zero, unit_sphere_area, ProblemParams, RadialProfile};

const SERIES_ORDER: usize = 8;

/// Radial solution of `-Δv = A(r) v₊^γ` on `B_R` with `v(0) = a`, `v'(0) = 0`.
///
/// Stored in the natural units of its centre value: `v(r) = a·u(r/L)` with
/// `L = (A_ref a^{γ-1})^{-1/2}`, so `u(0) = 1` and `u` solves the equation
/// with coefficient `A(sL)/A_ref`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSolution {
    pub radius: f64,
    pub center_value: f64,
    pub coefficient: ASpec,
    /// Mass budget `T` the solution is checked against; infinite unless set.
    pub mass_bound: f64,
    params: ProblemParams,
    shape: Shape,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    /// `v ≡ a`: either `a <= 0` or `A ≡ 0`.
    Constant,
    Scaled {
        profile: RadialProfile,
        length: f64,
        /// First zero of `u`, in units of `length`.
        zero: Option<f64>,
    },
}

/// Shoots from the centre value `a` out to radius `R`.
pub fn shoot_ball(
    params: &ProblemParams,
    coefficient: &ASpec,
    a: f64,
    radius: f64,
) -> Result<BallSolution> {
    params.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "ball radius R = {radius} must be positive"
        )));
    }
    if !a.is_finite() {
        return Err(Error::domain(format!(
            "centre value a = {a} must be finite"
        )));
    }
    if coefficient.radius < radius {
        return Err(Error::domain(format!(
            "coefficient validated on [0, {}] but the ball has radius {radius}",
            coefficient.radius
        )));
    }
    let solution = |shape| BallSolution {
        radius,
        center_value: a,
        coefficient: coefficient.clone(),
        mass_bound: f64::INFINITY,
        params: *params,
        shape,
    };
    if a <= 0.0 || coefficient.sup_bound == 0.0 {
        return Ok(solution(Shape::Constant));
    }

    let a_origin = coefficient.eval(0.0);
    let a_ref = if a_origin > 0.0 {
        a_origin
    } else {
        coefficient.sup_bound
    };
    let length = (a_ref * a.powf(params.gamma - 1.0)).powf(-0.5);
    let s_end = radius / length;

    let scaled: Vec<f64> = match coefficient.kind {
        AKind::Constant => vec![coefficient.coeffs[0] / a_ref],
        AKind::Polynomial => coefficient
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * length.powi(k as i32) / a_ref)
            .collect(),
    };
    let head = radial_power_series(params.n, params.gamma, &scaled, SERIES_ORDER);
    let coef = |s: f64| coefficient.eval(s * length) / a_ref;
    let rhs = RadialRhs::new(params.n, params.gamma, coef);

    let s0 = bootstrap_radius(params.tol_ode) * s_end.min(1.0);
    let (u0, du0) = crate::ode_core::series::eval_series(&head, s0);
    let traj = integrate(
        &rhs,
        rhs.node(s0, u0, du0),
        s_end,
        params.tol_ode,
        true,
        |_| false,
    )?;
    let profile = RadialProfile::from_nodes(*params, head, &traj.nodes);
    let zero = first_zero(&profile).ok().map(|(z, _)| z);
    Ok(solution(Shape::Scaled {
        profile,
        length,
        zero,
    }))
}

/// `ω_{n-1} ∫_0^ρ v₊^{n(γ-1)/2} r^{n-1} dr`.
pub fn mass_in_ball(sol: &BallSolution, rho: f64) -> Result<f64> {
    sol.mass_in_ball(rho)
}

impl BallSolution {
    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn with_mass_bound(mut self, bound: f64) -> Self {
        self.mass_bound = bound;
        self
    }

    /// Whether the constraint `∫_{B_R} v₊^{n(γ-1)/2} dx <= T` holds.
    pub fn satisfies_mass_bound(&self) -> bool {
        self.mass_in_ball(self.radius)
            .is_ok_and(|m| m <= self.mass_bound)
    }

    /// `(v(r), v'(r))` for `0 <= r <= R`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        match &self.shape {
            Shape::Constant => (self.center_value, 0.0),
            Shape::Scaled {
                profile, length, ..
            } => {
                let (u, du) = profile.eval(r / length);
                (self.center_value * u, self.center_value * du / length)
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }

    /// `(r, v, v')` at the origin and every accepted step.
    pub fn grid(&self) -> Vec<(f64, f64, f64)> {
        let mut out = vec![(0.0, self.center_value, 0.0)];
        match &self.shape {
            Shape::Constant => out.push((self.radius, self.center_value, 0.0)),
            Shape::Scaled {
                profile, length, ..
            } => {
                let a = self.center_value;
                out.extend(
                    profile
                        .nodes()
                        .iter()
                        .zip(profile.values())
                        .zip(profile.slopes())
                        .map(|((s, u), du)| (s * length, a * u, a * du / length)),
                );
            }
        }
        out
    }

    /// First zero of `v` inside the ball, if any.
    pub fn first_zero(&self) -> Option<f64> {
        match &self.shape {
            Shape::Constant => None,
            Shape::Scaled { length, zero, .. } => zero.map(|z| z * length),
        }
    }

    /// `min_{[0, R]} v`.
    pub fn min_value(&self) -> f64 {
        self.grid()
            .into_iter()
            .map(|(_, v, _)| v)
            .fold(self.value(self.radius), f64::min)
    }

    pub fn mass_in_ball(&self, rho: f64) -> Result<f64> {
        if !(rho >= 0.0 && rho <= self.radius) {
            return Err(Error::domain(format!(
                "mass radius {rho} outside [0, R = {}]",
                self.radius
            )));
        }
        let n = self.params.n;
        let omega = unit_sphere_area(n)?;
        let p = self.params.mass_exponent();
        let a = self.center_value;
        match &self.shape {
            Shape::Constant if a <= 0.0 => Ok(0.0),
            Shape::Constant => Ok(omega * a.powf(p) * rho.powi(n as i32) / n as f64),
            Shape::Scaled {
                profile,
                length,
                zero,
            } => {
                let upper = (rho / length).min(zero.unwrap_or(f64::INFINITY));
                Ok(omega * a.powf(p) * length.powi(n as i32) * profile.radial_moment(p, upper))
            }
        }
    }
}
