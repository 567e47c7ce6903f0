use crate::error::{Error, Result};

pub const DEFAULT_TOL_ODE: f64 = 1e-10;
pub const DEFAULT_TOL_ROOT: f64 = 1e-12;
pub const DEFAULT_R_MAX: f64 = 50.0;

/// Dimension, exponent and numerical tolerances for one problem instance.
///
/// Build with [`ProblemParams::new`] and adjust with the `with_*` methods;
/// every consumer calls [`ProblemParams::validate`] before doing work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub n: u32,
    pub gamma: f64,
    pub tol_ode: f64,
    pub tol_root: f64,
    pub r_max: f64,
    /// Admits `gamma = 1`, where closed forms exist. Not a physical regime.
    pub oracle_mode: bool,
}

impl ProblemParams {
    pub fn new(n: u32, gamma: f64) -> Self {
        Self {
            n,
            gamma,
            tol_ode: DEFAULT_TOL_ODE,
            tol_root: DEFAULT_TOL_ROOT,
            r_max: DEFAULT_R_MAX,
            oracle_mode: false,
        }
    }

    /// Same as [`ProblemParams::new`] with `oracle_mode` switched on.
    pub fn oracle(n: u32, gamma: f64) -> Self {
        Self {
            oracle_mode: true,
            ..Self::new(n, gamma)
        }
    }

    pub fn with_tol_ode(mut self, tol: f64) -> Self {
        self.tol_ode = tol;
        self
    }

    pub fn with_tol_root(mut self, tol: f64) -> Self {
        self.tol_root = tol;
        self
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    /// Critical Sobolev exponent `(n+2)/(n-2)`.
    pub fn critical_exponent(&self) -> f64 {
        let n = self.n as f64;
        (n + 2.0) / (n - 2.0)
    }

    /// `n/(n-2)`, where the mass exponent equals `gamma`.
    pub fn coincidence_exponent(&self) -> f64 {
        let n = self.n as f64;
        n / (n - 2.0)
    }

    /// Scaling exponent `q = 2/(gamma-1)`; infinite at `gamma = 1`.
    pub fn q(&self) -> f64 {
        2.0 / (self.gamma - 1.0)
    }

    /// Mass exponent `n(gamma-1)/2`.
    pub fn mass_exponent(&self) -> f64 {
        self.n as f64 * (self.gamma - 1.0) / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::domain(format!(
                "dimension n = {} must be >= 3",
                self.n
            )));
        }
        if !self.gamma.is_finite() {
            return Err(Error::domain("gamma must be finite"));
        }
        let crit = self.critical_exponent();
        if self.gamma >= crit {
            return Err(Error::domain(format!(
                "gamma = {} must be below the critical exponent (n+2)/(n-2) = {} for n = {}",
                self.gamma, crit, self.n
            )));
        }
        let lower_ok = if self.oracle_mode {
            self.gamma >= 1.0
        } else {
            self.gamma > 1.0
        };
        if !lower_ok {
            let bound = if self.oracle_mode { "[1" } else { "(1" };
            return Err(Error::domain(format!(
                "gamma = {} outside {}, {}) for n = {}",
                self.gamma, bound, crit, self.n
            )));
        }
        if !(self.tol_root > 0.0 && self.tol_root <= self.tol_ode && self.tol_ode < 1.0) {
            return Err(Error::domain(format!(
                "tolerances must satisfy 0 < tol_root <= tol_ode < 1 (got tol_root = {}, tol_ode = {})",
                self.tol_root, self.tol_ode
            )));
        }
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(Error::domain(format!(
                "r_max = {} must be positive",
                self.r_max
            )));
        }
        Ok(())
    }
}
