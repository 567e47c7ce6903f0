//! Probes along the single-bubble family `a = A0^{-1/(γ-1)} μ^q`.

use super::coefficient::ASpec;
use super::shoot::shoot_ball;
use crate::error::{Error, Result};
use crate::ode_core::{ground_state, GroundState, ProblemParams};

/// Masses and extrema along a blowing-up family.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport {
    pub mu_values: Vec<f64>,
    /// `mass_in_ball(R)` per μ.
    pub masses: Vec<f64>,
    /// `v(0)` per μ.
    pub sups: Vec<f64>,
    /// `min_{[0,R]} v` per μ.
    pub infs: Vec<f64>,
    /// `v(R/2)` per μ.
    pub v_half: Vec<f64>,
    /// `v(R)` per μ.
    pub v_edge: Vec<f64>,
    /// `A0^{-n/2} lambda_mass`.
    pub quantum: f64,
    /// `|mass - quantum|` per μ.
    pub residuals: Vec<f64>,
}

/// Values of `v(0) + C·inf_{B_R} v` along the family.
#[derive(Debug, Clone, PartialEq)]
pub struct SupInfReport {
    pub c_used: f64,
    /// Coefficient at which the `μ^q` growth of `v(0)` and of `C·v(R)` cancels.
    pub c_star: f64,
    pub mu_values: Vec<f64>,
    pub sups: Vec<f64>,
    pub infs: Vec<f64>,
    pub values: Vec<f64>,
    /// `max values`.
    pub bound: f64,
    /// Index of the maximum in `values`.
    pub argmax: usize,
}

impl SupInfReport {
    /// The maximum sits strictly inside the μ grid.
    pub fn has_interior_max(&self) -> bool {
        self.argmax > 0 && self.argmax + 1 < self.values.len()
    }
}

/// Largest centre value compatible with a mass budget `eps` (family with `A ≡ 1`).
///
/// This is the constant restricted to the radial family, hence a lower bound for
/// the general ε-regularity constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsRegReport {
    pub eps: f64,
    pub quantum: f64,
    pub c_of_eps: f64,
    pub mu_at_sup: f64,
    /// `mass_in_ball(R)` at `mu_at_sup`.
    pub mass_at_sup: f64,
    /// Final `(hi - lo)/lo` of the μ bracket.
    pub mu_rel_width: f64,
}

fn check_family(a0: f64, mu_values: &[f64], radius: f64) -> Result<()> {
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(Error::domain(format!("A0 = {a0} must be positive")));
    }
    if mu_values.is_empty() {
        return Err(Error::domain("mu grid is empty"));
    }
    if mu_values.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
        return Err(Error::domain("mu values must be positive"));
    }
    if mu_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("mu values must be strictly increasing"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "ball radius R = {radius} must be positive"
        )));
    }
    Ok(())
}

/// Default μ grid `2^lo, ..., 2^hi`.
pub fn dyadic_grid(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Centre value of the family member with scale `mu`.
pub fn family_center_value(params: &ProblemParams, a0: f64, mu: f64) -> f64 {
    a0.powf(-1.0 / (params.gamma - 1.0)) * mu.powf(params.q())
}

struct FamilyPoint {
    mass: f64,
    sup: f64,
    inf: f64,
    half: f64,
    edge: f64,
}

fn family_point(
    params: &ProblemParams,
    coefficient: &ASpec,
    a0: f64,
    mu: f64,
    radius: f64,
) -> Result<FamilyPoint> {
    let a = family_center_value(params, a0, mu);
    let sol = shoot_ball(params, coefficient, a, radius)?;
    Ok(FamilyPoint {
        mass: sol.mass_in_ball(radius)?,
        sup: sol.value(0.0),
        inf: sol.min_value(),
        half: sol.value(0.5 * radius),
        edge: sol.value(radius),
    })
}

fn family(
    params: &ProblemParams,
    a0: f64,
    mu_values: &[f64],
    radius: f64,
) -> Result<Vec<FamilyPoint>> {
    let coefficient = ASpec::constant(a0)?;
    mu_values
        .iter()
        .map(|&mu| family_point(params, &coefficient, a0, mu, radius))
        .collect()
}

/// Single-bubble family on `B_R` with constant coefficient `A0`.
pub fn blowup_family(
    params: &ProblemParams,
    a0: f64,
    mu_values: &[f64],
    radius: f64,
) -> Result<BlowupReport> {
    params.validate()?;
    check_family(a0, mu_values, radius)?;
    let gs = ground_state(params)?;
    let quantum = a0.powf(-(params.n as f64) / 2.0) * gs.lambda_mass;
    let points = family(params, a0, mu_values, radius)?;
    Ok(BlowupReport {
        mu_values: mu_values.to_vec(),
        masses: points.iter().map(|p| p.mass).collect(),
        sups: points.iter().map(|p| p.sup).collect(),
        infs: points.iter().map(|p| p.inf).collect(),
        v_half: points.iter().map(|p| p.half).collect(),
        v_edge: points.iter().map(|p| p.edge).collect(),
        residuals: points.iter().map(|p| (p.mass - quantum).abs()).collect(),
        quantum,
    })
}

/// `(n-2) ω_{n-1} (r*)^{n-2} / lambda_flux`.
///
/// Outside the support, `v(R) = v(0)·(λ/((n-2)ω)) ((μR)^{2-n} - (r*)^{2-n})`, so
/// `v(0) + C v(R)` grows like `μ^q (1 - C/c_star)` and stays bounded for `C > c_star`.
/// Independent of `A0`, which scales both terms alike.
pub fn sup_inf_threshold(gs: &GroundState) -> f64 {
    let n = gs.params().n as f64;
    (n - 2.0) * gs.sphere_area() * gs.r_star.powf(n - 2.0) / gs.lambda_flux
}

/// `v(0) + C_used·min_{B_R} v` along the family, with `K = {0}`.
pub fn sup_inf_probe(
    params: &ProblemParams,
    a0: f64,
    mu_values: &[f64],
    radius: f64,
    c_used: f64,
) -> Result<SupInfReport> {
    params.validate()?;
    check_family(a0, mu_values, radius)?;
    if !(c_used >= 0.0 && c_used.is_finite()) {
        return Err(Error::domain(format!(
            "coefficient C = {c_used} must be >= 0"
        )));
    }
    let gs = ground_state(params)?;
    let points = family(params, a0, mu_values, radius)?;
    let values: Vec<f64> = points.iter().map(|p| p.sup + c_used * p.inf).collect();
    let (argmax, bound) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
    Ok(SupInfReport {
        c_used,
        c_star: sup_inf_threshold(&gs),
        mu_values: mu_values.to_vec(),
        sups: points.iter().map(|p| p.sup).collect(),
        infs: points.iter().map(|p| p.inf).collect(),
        values,
        bound,
        argmax,
    })
}

/// Bisects (geometrically) in μ for the family member with `mass_in_ball(R) = eps`
/// and reports its centre value `μ^q`.
pub fn eps_regularity_probe(params: &ProblemParams, eps: f64, radius: f64) -> Result<EpsRegReport> {
    params.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "ball radius R = {radius} must be positive"
        )));
    }
    let gs = ground_state(params)?;
    let quantum = gs.lambda_mass;
    if !(eps > 0.0 && eps < quantum) {
        return Err(Error::domain(format!(
            "eps = {eps} must lie in (0, quantum = {quantum})"
        )));
    }
    let coefficient = ASpec::constant(1.0)?;
    let mass = |mu: f64| -> Result<f64> {
        shoot_ball(params, &coefficient, mu.powf(params.q()), radius)?.mass_in_ball(radius)
    };

    // beyond r*/R the whole positive bubble is inside B_R
    let mut hi = 1.01 * gs.r_star / radius;
    let m_top = mass(hi)?;
    if m_top < eps {
        return Err(Error::domain(format!(
            "eps = {eps} exceeds the numerically attained family mass {m_top}"
        )));
    }
    let mut lo = 0.5 * hi;
    let mut m_lo = mass(lo)?;
    while m_lo >= eps {
        hi = lo;
        lo *= 0.5;
        m_lo = mass(lo)?;
    }
    while hi / lo - 1.0 > 1e-11 {
        let mid = (lo * hi).sqrt();
        let m = mass(mid)?;
        if m < eps {
            lo = mid;
            m_lo = m;
        } else {
            hi = mid;
        }
    }
    // `lo` is the admissible end of the bracket
    Ok(EpsRegReport {
        eps,
        quantum,
        c_of_eps: lo.powf(params.q()),
        mu_at_sup: lo,
        mass_at_sup: m_lo,
        mu_rel_width: hi / lo - 1.0,
    })
}
