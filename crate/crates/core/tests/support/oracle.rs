//! Reference ground-state constants from a fixed-step classical RK4 march with
//! Richardson extrapolation over step halving. Shares no code with the crate.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct OracleConstants {
    pub r_star: f64,
    pub alpha_star: f64,
    pub lambda_flux: f64,
    pub lambda_mass: f64,
}

fn sphere(n: u32) -> f64 {
    match n {
        3 => 4.0 * PI,
        4 => 2.0 * PI * PI,
        5 => 8.0 * PI * PI / 3.0,
        6 => PI.powi(3),
        _ => unimplemented!("oracle covers n = 3..=6"),
    }
}

// state: [phi, phi', mass integral]
fn rhs(n: f64, g: f64, p: f64, r: f64, y: [f64; 3]) -> [f64; 3] {
    let pos = y[0].max(0.0);
    [
        y[1],
        -(n - 1.0) / r * y[1] - pos.powf(g),
        pos.powf(p) * r.powf(n - 1.0),
    ]
}

fn rk4(n: f64, g: f64, p: f64, r: f64, y: [f64; 3], h: f64) -> [f64; 3] {
    let add =
        |a: [f64; 3], b: [f64; 3], c: f64| [a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]];
    let k1 = rhs(n, g, p, r, y);
    let k2 = rhs(n, g, p, r + 0.5 * h, add(y, k1, 0.5 * h));
    let k3 = rhs(n, g, p, r + 0.5 * h, add(y, k2, 0.5 * h));
    let k4 = rhs(n, g, p, r + h, add(y, k3, h));
    let mut out = y;
    for i in 0..3 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn march(n: u32, g: f64, h: f64) -> OracleConstants {
    let nf = n as f64;
    let p = nf * (g - 1.0) / 2.0;
    let r0 = 1e-3;
    // φ ≈ 1 - r²/(2n) + γ r⁴/(8n(n+2)); mass ≈ r^n/n near the origin
    let phi0 = 1.0 - r0 * r0 / (2.0 * nf) + g * r0.powi(4) / (8.0 * nf * (nf + 2.0));
    let dphi0 = -r0 / nf + g * r0.powi(3) / (2.0 * nf * (nf + 2.0));
    let mut y = [phi0, dphi0, r0.powf(nf) / nf];
    let mut r = r0;
    loop {
        let next = rk4(nf, g, p, r, y, h);
        if next[0] <= 0.0 {
            break;
        }
        y = next;
        r += h;
    }
    // shrink the final step until it ends on the zero
    let (mut lo, mut hi) = (0.0, h);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rk4(nf, g, p, r, y, mid)[0] > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = 0.5 * (lo + hi);
    let end = rk4(nf, g, p, r, y, d);
    let r_star = r + d;
    let alpha_star = -end[1];
    let omega = sphere(n);
    OracleConstants {
        r_star,
        alpha_star,
        lambda_flux: omega * alpha_star * r_star.powi(n as i32 - 1),
        lambda_mass: omega * end[2],
    }
}

/// Richardson-extrapolated constants from steps `h` and `h/2` (RK4 is fourth order).
pub fn ground_constants(n: u32, g: f64, h: f64) -> OracleConstants {
    let coarse = march(n, g, h);
    let fine = march(n, g, 0.5 * h);
    let x = |c: f64, f: f64| (16.0 * f - c) / 15.0;
    OracleConstants {
        r_star: x(coarse.r_star, fine.r_star),
        alpha_star: x(coarse.alpha_star, fine.alpha_star),
        lambda_flux: x(coarse.lambda_flux, fine.lambda_flux),
        lambda_mass: x(coarse.lambda_mass, fine.lambda_mass),
    }
}

fn march_to(n: u32, g: f64, target: f64, h: f64) -> f64 {
    let nf = n as f64;
    let r0 = 1e-3;
    let phi0 = 1.0 - r0 * r0 / (2.0 * nf) + g * r0.powi(4) / (8.0 * nf * (nf + 2.0));
    let dphi0 = -r0 / nf + g * r0.powi(3) / (2.0 * nf * (nf + 2.0));
    let mut y = [phi0, dphi0, 0.0];
    let steps = ((target - r0) / h).ceil() as usize;
    let step = (target - r0) / steps as f64;
    for i in 0..steps {
        y = rk4(nf, g, 0.0, r0 + i as f64 * step, y, step);
    }
    y[0]
}

/// `φ(r)` for `r` below the first zero, Richardson-extrapolated.
pub fn profile_value(n: u32, g: f64, r: f64, h: f64) -> f64 {
    (16.0 * march_to(n, g, r, 0.5 * h) - march_to(n, g, r, h)) / 15.0
}
