use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AKind {
    Constant,
    /// `A(r) = Σ coeffs[k] r^k`
    Polynomial,
}

/// Radial coefficient `A(r) >= 0` of the equation, validated on `[0, radius]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ASpec {
    pub kind: AKind,
    pub coeffs: Vec<f64>,
    /// Radius the nonnegativity check and `sup_bound` refer to; infinite for constants.
    pub radius: f64,
    /// `max_{[0, radius]} A`.
    pub sup_bound: f64,
}

const SAMPLES: usize = 4096;

impl ASpec {
    pub fn constant(value: f64) -> Result<Self> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::domain(format!(
                "coefficient A = {value} must be finite and >= 0"
            )));
        }
        Ok(Self {
            kind: AKind::Constant,
            coeffs: vec![value],
            radius: f64::INFINITY,
            sup_bound: value,
        })
    }

    /// Polynomial coefficient on `[0, radius]`. Nonnegativity is checked on a
    /// sample grid refined at every sign change of `A'`, which also yields the maximum.
    pub fn polynomial(coeffs: Vec<f64>, radius: f64) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(
                "polynomial coefficient needs finite coefficients",
            ));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!(
                "coefficient radius {radius} must be positive"
            )));
        }
        let p = |r: f64| horner(&coeffs, r);
        let dcoeffs: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        let dp = |r: f64| horner(&dcoeffs, r);

        let mut lo = p(0.0);
        let mut hi = lo;
        let mut prev_r = 0.0;
        let mut prev_d = dp(0.0);
        for k in 1..=SAMPLES {
            let r = radius * k as f64 / SAMPLES as f64;
            let v = p(r);
            lo = lo.min(v);
            hi = hi.max(v);
            let d = dp(r);
            if prev_d * d < 0.0 {
                let rc = bisect(&dp, prev_r, r);
                let vc = p(rc);
                lo = lo.min(vc);
                hi = hi.max(vc);
            }
            prev_r = r;
            prev_d = d;
        }
        if lo < 0.0 {
            return Err(Error::domain(format!(
                "coefficient A must be >= 0 on [0, {radius}], minimum found {lo}"
            )));
        }
        Ok(Self {
            kind: AKind::Polynomial,
            coeffs,
            radius,
            sup_bound: hi,
        })
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self.kind {
            AKind::Constant => self.coeffs[0],
            AKind::Polynomial => horner(&self.coeffs, r),
        }
    }
}

fn horner(c: &[f64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * r + ck)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) * f_lo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
