//! Dormand–Prince 5(4) pair for the scalar radial equation
//! `y'' + (n-1)y'/r + A(r) y₊^γ = 0`, written as a first-order system.
//!
//! Accepted steps are recorded as [`Node`]s carrying `(y, y', y'')`, which is
//! exactly the data a quintic Hermite interpolant needs.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const MAX_STEPS: usize = 2_000_000;

/// One accepted point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Node {
    pub r: f64,
    pub y: f64,
    pub dy: f64,
    pub ddy: f64,
}

/// Right-hand side of the radial equation with a radial coefficient `A(r)`.
pub(crate) struct RadialRhs<F> {
    nm1: f64,
    gamma: f64,
    coef: F,
}

impl<F: Fn(f64) -> f64> RadialRhs<F> {
    pub fn new(n: u32, gamma: f64, coef: F) -> Self {
        Self {
            nm1: n as f64 - 1.0,
            gamma,
            coef,
        }
    }

    /// `y''` at `(r, y, y')`, with the nonlinearity switched off where `y <= 0`.
    pub fn accel(&self, r: f64, y: f64, dy: f64) -> f64 {
        -self.nm1 / r * dy - (self.coef)(r) * positive_power(y, self.gamma)
    }

    pub fn node(&self, r: f64, y: f64, dy: f64) -> Node {
        Node {
            r,
            y,
            dy,
            ddy: self.accel(r, y, dy),
        }
    }

    fn deriv(&self, r: f64, s: [f64; 2]) -> [f64; 2] {
        [s[1], self.accel(r, s[0], s[1])]
    }
}

/// `y₊^γ`.
pub(crate) fn positive_power(y: f64, gamma: f64) -> f64 {
    if y > 0.0 {
        if gamma == 1.0 {
            y
        } else {
            y.powf(gamma)
        }
    } else {
        0.0
    }
}

fn axpy(s: [f64; 2], h: f64, terms: &[(f64, [f64; 2])]) -> [f64; 2] {
    let mut out = s;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integration outcome: the accepted nodes and whether `stop` ended the run
/// before `r_end` was reached.
pub(crate) struct Trajectory {
    pub nodes: Vec<Node>,
    pub halted: bool,
}

/// One Dormand–Prince step of width `h` from `(r, s)` with first stage `k1`.
/// Returns the new state, its derivative (FSAL stage) and the weighted error norm.
fn dp_step<F: Fn(f64) -> f64>(
    rhs: &RadialRhs<F>,
    r: f64,
    s: [f64; 2],
    k1: [f64; 2],
    h: f64,
    r_next: f64,
    tol: f64,
) -> ([f64; 2], [f64; 2], f64) {
    let k2 = rhs.deriv(r + C2 * h, axpy(s, h, &[(A21, k1)]));
    let k3 = rhs.deriv(r + C3 * h, axpy(s, h, &[(A31, k1), (A32, k2)]));
    let k4 = rhs.deriv(r + C4 * h, axpy(s, h, &[(A41, k1), (A42, k2), (A43, k3)]));
    let k5 = rhs.deriv(
        r + C5 * h,
        axpy(s, h, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)]),
    );
    let k6 = rhs.deriv(
        r + h,
        axpy(
            s,
            h,
            &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)],
        ),
    );
    let next = axpy(s, h, &[(B1, k1), (B3, k3), (B4, k4), (B5, k5), (B6, k6)]);
    let k7 = rhs.deriv(r_next, next);

    let mut err_sq = 0.0;
    for i in 0..2 {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = tol + tol * s[i].abs().max(next[i].abs());
        err_sq += (e / scale) * (e / scale);
    }
    (next, k7, (0.5 * err_sq).sqrt())
}

/// Shortens a step whose end fell below zero so that it ends on the zero of
/// `y` instead, keeping the kink of `y₊^γ` on a node. Illinois iteration on
/// the step width; each trial is a full step from `(r, s)`. Returns the
/// landed width, state, FSAL stage and error norm.
fn land_on_zero<F: Fn(f64) -> f64>(
    rhs: &RadialRhs<F>,
    r: f64,
    s: [f64; 2],
    k1: [f64; 2],
    h: f64,
    y_end: f64,
    tol: f64,
) -> (f64, [f64; 2], [f64; 2], f64) {
    let (mut lo, mut g_lo) = (0.0, s[0]);
    let (mut hi, mut g_hi) = (h, y_end);
    let mut best = (h, None);
    let mut side = 0i8;
    for _ in 0..100 {
        let trial = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        let trial = if trial > lo && trial < hi {
            trial
        } else {
            0.5 * (lo + hi)
        };
        let (next, k7, err) = dp_step(rhs, r, s, k1, trial, r + trial, tol);
        let g = next[0];
        best = (trial, Some((next, k7, err)));
        if g.abs() <= 4.0 * f64::EPSILON * s[0].abs() || hi - lo <= 4.0 * f64::EPSILON * (r + h) {
            break;
        }
        if g > 0.0 {
            lo = trial;
            g_lo = g;
            if side == 1 {
                g_hi *= 0.5;
            }
            side = 1;
        } else {
            hi = trial;
            g_hi = g;
            if side == -1 {
                g_lo *= 0.5;
            }
            side = -1;
        }
    }
    let (width, state) = best;
    let (next, k7, err) = state.expect("at least one trial step");
    (width, next, k7, err)
}

/// Integrates from `start` towards `r_end` with mixed absolute/relative
/// tolerance `tol`. After each accepted step `stop(&nodes)` may end the run.
///
/// With `locate_zero`, the first step on which `y` turns nonpositive is cut
/// back to end on the zero.
pub(crate) fn integrate<F, S>(
    rhs: &RadialRhs<F>,
    start: Node,
    r_end: f64,
    tol: f64,
    mut locate_zero: bool,
    mut stop: S,
) -> Result<Trajectory>
where
    F: Fn(f64) -> f64,
    S: FnMut(&[Node]) -> bool,
{
    let mut nodes = vec![start];
    let mut r = start.r;
    let mut s = [start.y, start.dy];
    let mut k1 = [start.dy, start.ddy];
    let mut h = (0.1 * r).max(1e-3).min(r_end - r);
    let mut rejected_last = false;

    let fail = |r: f64, s: [f64; 2], reason: &str| Error::StepFailure {
        r,
        value: s[0],
        slope: s[1],
        reason: reason.to_string(),
    };

    while r < r_end {
        if nodes.len() > MAX_STEPS {
            return Err(fail(r, s, "step budget exhausted"));
        }
        let last_step = r + h >= r_end;
        if last_step {
            h = r_end - r;
        }
        if h <= 1e-15 * r.max(1.0) {
            return Err(fail(r, s, "step size underflow"));
        }

        let r_next = if last_step { r_end } else { r + h };
        let (next, k7, err) = dp_step(rhs, r, s, k1, h, r_next, tol);
        if !err.is_finite() || !next[0].is_finite() || !next[1].is_finite() {
            rejected_last = true;
            h *= 0.2;
            continue;
        }

        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        if err <= 1.0 {
            let (r_acc, s_acc, k_acc) = if locate_zero && s[0] > 0.0 && next[0] <= 0.0 {
                let (width, landed, k_land, err_land) =
                    land_on_zero(rhs, r, s, k1, h, next[0], tol);
                if err_land > 0.01 {
                    // the end of the shortened step sits on the kink; approach it more slowly
                    h = width * (0.9 * err_land.powf(-0.2)).clamp(0.2, 0.9);
                    rejected_last = true;
                    continue;
                }
                locate_zero = false;
                (r + width, landed, k_land)
            } else {
                (r_next, next, k7)
            };
            r = r_acc;
            s = s_acc;
            k1 = k_acc;
            nodes.push(Node {
                r,
                y: s[0],
                dy: s[1],
                ddy: k1[1],
            });
            if stop(&nodes) {
                return Ok(Trajectory {
                    nodes,
                    halted: true,
                });
            }
            h *= if rejected_last {
                factor.min(1.0)
            } else {
                factor
            };
            rejected_last = false;
        } else {
            h *= factor.min(1.0);
            rejected_last = true;
        }
    }
    Ok(Trajectory {
        nodes,
        halted: false,
    })
}
