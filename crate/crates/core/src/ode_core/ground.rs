use super::params::ProblemParams;
use super::profile::RadialProfile;
use super::series::{bootstrap_radius, ground_series_coeffs, series_start, unit_sphere_area};
use super::stepper::{integrate, RadialRhs};
use crate::error::{Error, Result};

/// The ground-state profile together with its first zero and quantized constants.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    /// First zero of `φ`.
    pub r_star: f64,
    /// `-φ'(r_star) > 0`.
    pub alpha_star: f64,
    /// `ω_{n-1} α* (r*)^{n-1}`, the flux through the zero sphere.
    pub lambda_flux: f64,
    /// `ω_{n-1} ∫_0^{r*} φ^γ r^{n-1} dr`; equals `lambda_flux` up to quadrature error.
    pub lambda_flux_quad: f64,
    /// `ω_{n-1} ∫_0^{r*} φ^{n(γ-1)/2} r^{n-1} dr`, the scale-invariant mass.
    pub lambda_mass: f64,
    /// `2/(γ-1)`; infinite in oracle mode at `γ = 1`.
    pub q: f64,
    pub profile: RadialProfile,
}

impl GroundState {
    pub fn params(&self) -> &ProblemParams {
        self.profile.params()
    }

    /// `ω_{n-1}` for this dimension.
    pub fn sphere_area(&self) -> f64 {
        unit_sphere_area(self.params().n).expect("n >= 3 was validated")
    }

    /// Relative gap `|lambda_flux - lambda_flux_quad| / lambda_flux`.
    pub fn flux_rel_gap(&self) -> f64 {
        (self.lambda_flux - self.lambda_flux_quad).abs() / self.lambda_flux
    }
}

/// Integrates `φ'' + (n-1)φ'/r + φ₊^γ = 0`, `φ(0) = 1`, `φ'(0) = 0` past its first zero.
///
/// Starts from the Taylor series at `r0 = tol_ode^{1/4}` (clamped to
/// `[1e-4, 1e-2]`) and stops one accepted step after the first negative node.
pub fn integrate_phi(params: &ProblemParams) -> Result<RadialProfile> {
    params.validate()?;
    let r0 = bootstrap_radius(params.tol_ode);
    let (phi0, dphi0) = series_start(params, r0)?;
    let rhs = RadialRhs::new(params.n, params.gamma, |_| 1.0);
    let start = rhs.node(r0, phi0, dphi0);

    let traj = integrate(&rhs, start, params.r_max, params.tol_ode, true, |nodes| {
        let k = nodes.len();
        k >= 2 && nodes[k - 2].y < 0.0
    })?;
    if !traj.halted {
        let last = traj.nodes.last().expect("non-empty trajectory");
        return Err(Error::ZeroNotFound {
            r: last.r,
            phi: last.y,
            r_max: params.r_max,
        });
    }

    let even = ground_series_coeffs(params.n, params.gamma);
    let mut head = vec![0.0; 2 * even.len() - 1];
    for (k, c) in even.iter().enumerate() {
        head[2 * k] = *c;
    }
    Ok(RadialProfile::from_nodes(*params, head, &traj.nodes))
}

/// Locates the first zero of `profile` by bisection on the dense output to
/// `tol_root`, returning `(r_star, alpha_star)`.
pub fn first_zero(profile: &RadialProfile) -> Result<(f64, f64)> {
    let params = profile.params();
    let Some(i) = profile.first_sign_change() else {
        let r = profile.r_stop();
        return Err(Error::ZeroNotFound {
            r,
            phi: profile.value(r),
            r_max: params.r_max,
        });
    };
    let nodes = profile.nodes();
    let r_star = if profile.values()[i + 1] == 0.0 {
        nodes[i + 1]
    } else {
        let (mut lo, mut hi) = (nodes[i], nodes[i + 1]);
        while hi - lo > params.tol_root {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if profile.eval_in(i, mid).0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let alpha_star = -profile.slope(r_star);
    if !(alpha_star > 0.0) {
        return Err(Error::StepFailure {
            r: r_star,
            value: profile.value(r_star),
            slope: -alpha_star,
            reason: "tangential zero: slope does not change sign".into(),
        });
    }
    Ok((r_star, alpha_star))
}

/// Builds the full [`GroundState`]: profile, first zero, and the three constants.
pub fn ground_state(params: &ProblemParams) -> Result<GroundState> {
    let profile = integrate_phi(params)?;
    let (r_star, alpha_star) = first_zero(&profile)?;
    let omega = unit_sphere_area(params.n)?;
    let lambda_flux = omega * alpha_star * r_star.powi(params.n as i32 - 1);
    let lambda_flux_quad = omega * profile.radial_moment(params.gamma, r_star);
    let lambda_mass = omega * profile.radial_moment(params.mass_exponent(), r_star);
    Ok(GroundState {
        r_star,
        alpha_star,
        lambda_flux,
        lambda_flux_quad,
        lambda_mass,
        q: params.q(),
        profile,
    })
}
