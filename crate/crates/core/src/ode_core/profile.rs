use super::params::ProblemParams;
use super::series::eval_series;
use super::stepper::{positive_power, Node};
use crate::quadrature;

/// Tabulated radial solution with continuous evaluation.
///
/// Between stored nodes the profile is the quintic Hermite interpolant of
/// `(φ, φ', φ'')`; below the first node it is the Taylor polynomial that seeded
/// the integration, and past the last node (once the profile is nonpositive)
/// the exact radial harmonic continuation.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    params: ProblemParams,
    head: Vec<f64>,
    radii: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    curvatures: Vec<f64>,
}

impl RadialProfile {
    pub(crate) fn from_nodes(params: ProblemParams, head: Vec<f64>, nodes: &[Node]) -> Self {
        Self {
            params,
            head,
            radii: nodes.iter().map(|n| n.r).collect(),
            values: nodes.iter().map(|n| n.y).collect(),
            slopes: nodes.iter().map(|n| n.dy).collect(),
            curvatures: nodes.iter().map(|n| n.ddy).collect(),
        }
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    /// Node radii, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Second derivatives at the nodes; together with values and slopes these
    /// are the per-interval interpolation data.
    pub fn curvatures(&self) -> &[f64] {
        &self.curvatures
    }

    /// Taylor coefficients used on `[0, nodes[0])`.
    pub fn series_head(&self) -> &[f64] {
        &self.head
    }

    /// Last integrated radius.
    pub fn r_stop(&self) -> f64 {
        *self.radii.last().expect("profile has at least one node")
    }

    /// `(φ(r), φ'(r))` for `r >= 0`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        if r < self.radii[0] {
            return eval_series(&self.head, r.max(0.0));
        }
        let last = self.radii.len() - 1;
        if r > self.radii[last] {
            return self.harmonic_tail(r);
        }
        if last == 0 {
            return (self.values[0], self.slopes[0]);
        }
        let i = self
            .radii
            .partition_point(|&x| x <= r)
            .saturating_sub(1)
            .min(last - 1);
        self.eval_in(i, r)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }

    pub fn slope(&self, r: f64) -> f64 {
        self.eval(r).1
    }

    /// Hermite evaluation on interval `[radii[i], radii[i+1]]`.
    pub(crate) fn eval_in(&self, i: usize, r: f64) -> (f64, f64) {
        let h = self.radii[i + 1] - self.radii[i];
        let t = (r - self.radii[i]) / h;
        hermite5(
            h,
            t,
            [self.values[i], self.slopes[i], self.curvatures[i]],
            [
                self.values[i + 1],
                self.slopes[i + 1],
                self.curvatures[i + 1],
            ],
        )
    }

    /// Past the last node the equation is `Δφ = 0`, so `φ = c₁ + c₂ r^{2-n}`
    /// matched to the last node. Only meaningful once the profile is nonpositive;
    /// returns NaN otherwise.
    fn harmonic_tail(&self, r: f64) -> (f64, f64) {
        let last = self.radii.len() - 1;
        let (rl, vl, sl) = (self.radii[last], self.values[last], self.slopes[last]);
        if vl > 0.0 {
            return (f64::NAN, f64::NAN);
        }
        let n = self.params.n as i32;
        let c2 = sl * rl.powi(n - 1) / (2 - n) as f64;
        let c1 = vl - c2 * rl.powi(2 - n);
        (c1 + c2 * r.powi(2 - n), (2 - n) as f64 * c2 * r.powi(1 - n))
    }

    /// Index `i` of the first interval with `φ(r_i) > 0 >= φ(r_{i+1})`.
    pub(crate) fn first_sign_change(&self) -> Option<usize> {
        self.values
            .windows(2)
            .position(|w| w[0] > 0.0 && w[1] <= 0.0)
    }

    /// `∫_0^upper φ₊(r)^power r^{n-1} dr` on the dense output, with the node
    /// radii as initial breakpoints.
    pub fn radial_moment(&self, power: f64, upper: f64) -> f64 {
        let nm1 = self.params.n as i32 - 1;
        let mut breaks = Vec::with_capacity(self.radii.len() + 2);
        breaks.push(0.0);
        breaks.extend(self.radii.iter().copied().take_while(|&r| r < upper));
        breaks.push(upper);
        let f = |r: f64| positive_power(self.value(r), power) * r.powi(nm1);
        quadrature::integrate(f, &breaks, 1e-13, 0.0).value
    }
}

/// Quintic Hermite interpolant on a step of width `h` at local coordinate
/// `t ∈ [0, 1]`, from `[y, y', y'']` at both ends. Returns value and `d/dr`.
pub(crate) fn hermite5(h: f64, t: f64, left: [f64; 3], right: [f64; 3]) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 0.5 * (t3 - 2.0 * t4 + t5);
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;

    let d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let d2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    let d3 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
    let d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let d5 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;

    let [p0, m0, a0] = left;
    let [p1, m1, a1] = right;
    let hh = h * h;
    let value = h0 * p0 + h1 * h * m0 + h2 * hh * a0 + h3 * hh * a1 + h4 * h * m1 + h5 * p1;
    let deriv = (d0 * p0 + d1 * h * m0 + d2 * hh * a0 + d3 * hh * a1 + d4 * h * m1 + d5 * p1) / h;
    (value, deriv)
}
