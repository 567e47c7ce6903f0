//! Behaviour near the origin, where the `(n-1)/r` term is removable.

use std::f64::consts::PI;

use super::params::ProblemParams;
use crate::error::{Error, Result};

/// Surface area `ω_{n-1} = 2π^{n/2}/Γ(n/2)` of the unit sphere in `R^n`.
///
/// Uses `ω_{n-1} = 2π ω_{n-3}/(n-2)` from the bases `n = 2` (2π) and `n = 3` (4π),
/// so no general Gamma function is needed.
pub fn unit_sphere_area(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "unit_sphere_area needs n >= 2, got {n}"
        )));
    }
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    let mut area = if n.is_multiple_of(2) {
        2.0 * PI
    } else {
        4.0 * PI
    };
    while k < n {
        k += 2;
        area *= 2.0 * PI / (k - 2) as f64;
    }
    Ok(area)
}

/// Even Taylor coefficients `[1, c2, c4, c6]` of the ground-state profile.
///
/// Obtained by matching powers of `r` in `φ'' + (n-1)φ'/r + φ^γ = 0` with
/// `φ(0) = 1`; the Laplacian maps `r^k` to `k(k+n-2) r^{k-2}`.
pub(crate) fn ground_series_coeffs(n: u32, gamma: f64) -> [f64; 4] {
    let n = n as f64;
    let c2 = -1.0 / (2.0 * n);
    let c4 = gamma / (8.0 * n * (n + 2.0));
    let c6 = -(gamma * c4 + 0.5 * gamma * (gamma - 1.0) * c2 * c2) / (6.0 * (n + 4.0));
    [1.0, c2, c4, c6]
}

/// Taylor start values `(φ(r0), φ'(r0))` for the singular initial value problem.
///
/// The leading terms are `1 - r²/(2n) + γr⁴/(8n(n+2))`; the `r⁶` term is carried
/// as well so the derivative stays accurate up to `r0 ≈ 0.1`.
pub fn series_start(params: &ProblemParams, r0: f64) -> Result<(f64, f64)> {
    if !(r0 >= 0.0) || !r0.is_finite() {
        return Err(Error::domain(format!(
            "series radius r0 = {r0} must be >= 0"
        )));
    }
    let c = ground_series_coeffs(params.n, params.gamma);
    Ok(eval_even_series(&c, r0))
}

/// Evaluates `Σ c_k r^{2k}` and its derivative.
pub(crate) fn eval_even_series(c: &[f64], r: f64) -> (f64, f64) {
    let r2 = r * r;
    let mut value = 0.0;
    let mut slope = 0.0;
    for (k, ck) in c.iter().enumerate().rev() {
        value = value * r2 + ck;
        if k > 0 {
            slope = slope * r2 + 2.0 * k as f64 * ck;
        }
    }
    // slope accumulated Σ 2k c_k r^{2(k-1)}; one factor of r is missing
    (value, slope * r)
}

/// Power-series coefficients `u_0..=u_order` of the radial solution of
/// `u'' + (n-1)u'/s + Â(s) u^γ = 0`, `u(0) = 1`, `u'(0) = 0`, where
/// `Â(s) = Σ coef[k] s^k`.
///
/// `u^γ` is expanded with the J.C.P. Miller recurrence, valid because `u(0) = 1 > 0`.
pub(crate) fn radial_power_series(n: u32, gamma: f64, coef: &[f64], order: usize) -> Vec<f64> {
    let n = n as f64;
    let mut u = vec![0.0; order + 1];
    let mut w = vec![0.0; order + 1];
    u[0] = 1.0;
    w[0] = 1.0;
    for k in 2..=order {
        let m = k - 2;
        if m >= 1 {
            let mut acc = 0.0;
            for j in 1..=m {
                acc += ((gamma + 1.0) * j as f64 - m as f64) * u[j] * w[m - j];
            }
            w[m] = acc / m as f64;
        }
        let forcing: f64 = (0..=m)
            .map(|j| coef.get(j).copied().unwrap_or(0.0) * w[m - j])
            .sum();
        u[k] = -forcing / (k as f64 * (k as f64 + n - 2.0));
    }
    u
}

/// Evaluates a dense power series and its derivative by Horner's rule.
pub(crate) fn eval_series(c: &[f64], r: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for (k, ck) in c.iter().enumerate().rev() {
        value = value * r + ck;
        if k > 0 {
            slope = slope * r + k as f64 * ck;
        }
    }
    (value, slope)
}

/// Series bootstrap radius `tol^{1/4}` clamped to `[1e-4, 1e-2]`.
pub(crate) fn bootstrap_radius(tol_ode: f64) -> f64 {
    tol_ode.powf(0.25).clamp(1e-4, 1e-2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert_eq!(unit_sphere_area(2).unwrap(), 2.0 * PI);
        assert!((unit_sphere_area(3).unwrap() - 4.0 * PI).abs() < 1e-15);
        assert!((unit_sphere_area(4).unwrap() - 2.0 * PI * PI).abs() < 1e-14);
        assert!((unit_sphere_area(5).unwrap() - 8.0 * PI * PI / 3.0).abs() < 1e-13);
        assert!((unit_sphere_area(6).unwrap() - PI.powi(3)).abs() < 1e-13);
        assert!(unit_sphere_area(1).unwrap_err().is_domain());
    }

    #[test]
    fn series_at_origin_is_initial_condition() {
        let p = ProblemParams::new(3, 2.0);
        assert_eq!(series_start(&p, 0.0).unwrap(), (1.0, 0.0));
        assert!(series_start(&p, -1e-3).unwrap_err().is_domain());
    }

    #[test]
    fn series_matches_sinc_for_linear_case() {
        let p = ProblemParams::oracle(3, 1.0);
        let r = 0.1_f64;
        let (v, dv) = series_start(&p, r).unwrap();
        let exact = r.sin() / r;
        let dexact = (r * r.cos() - r.sin()) / (r * r);
        assert!((v - exact).abs() <= 1e-9, "{}", v - exact);
        assert!((dv - dexact).abs() <= 1e-9, "{}", dv - dexact);
    }

    #[test]
    fn leading_terms_match_quartic_formula() {
        for &(n, g) in &[(3u32, 2.0), (4, 1.6), (5, 2.2)] {
            let c = ground_series_coeffs(n, g);
            let nf = n as f64;
            assert_eq!(c[1], -1.0 / (2.0 * nf));
            assert_eq!(c[2], g / (8.0 * nf * (nf + 2.0)));
        }
    }

    #[test]
    fn miller_recurrence_reproduces_ground_series() {
        for &(n, g) in &[(3u32, 2.0), (4, 1.6), (6, 1.5), (3, 1.0)] {
            let dense = radial_power_series(n, g, &[1.0], 8);
            let even = ground_series_coeffs(n, g);
            for k in 0..4 {
                let rel = (dense[2 * k] - even[k]).abs() / even[k].abs();
                assert!(rel < 1e-14, "n={n} g={g} k={k}");
                assert_eq!(dense[2 * k + 1], 0.0);
            }
        }
    }

    #[test]
    fn bootstrap_radius_is_clamped() {
        assert_eq!(bootstrap_radius(1e-2), 1e-2);
        assert_eq!(bootstrap_radius(1e-20), 1e-4);
        assert!((bootstrap_radius(1e-10) - 1e-2_f64.powf(1.25)).abs() < 1e-15);
    }
}
