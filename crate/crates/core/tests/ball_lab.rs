mod support;

use std::sync::Arc;

use bubble_lab::ball_lab::{
    blowup_family, dyadic_grid, eps_regularity_probe, family_center_value, mass_in_ball,
    shoot_ball, sup_inf_probe, sup_inf_threshold, ASpec,
};
use bubble_lab::solution_family::entire_solution;
use bubble_lab::{ground_state, ProblemParams};
use proptest::prelude::*;
use support::fixtures::N3_G3;
use support::{logspace, rel};

#[test]
fn nonpositive_centre_value_is_constant() {
    let p = ProblemParams::new(3, 2.0);
    let one = ASpec::constant(1.0).unwrap();
    for a in [0.0, -0.5, -7.0] {
        let sol = shoot_ball(&p, &one, a, 2.0).unwrap();
        for r in [0.0, 0.3, 1.0, 2.0] {
            assert_eq!(sol.eval(r), (a, 0.0));
        }
        assert_eq!(sol.mass_in_ball(2.0).unwrap(), 0.0);
        assert_eq!(sol.first_zero(), None);
    }
}

#[test]
fn domain_errors() {
    let p = ProblemParams::new(3, 2.0);
    let one = ASpec::constant(1.0).unwrap();
    assert!(shoot_ball(&p, &one, 1.0, 0.0).unwrap_err().is_domain());
    assert!(shoot_ball(&p, &one, 1.0, -1.0).unwrap_err().is_domain());
    let sol = shoot_ball(&p, &one, 4.0, 1.0).unwrap();
    assert!(sol.mass_in_ball(1.5).unwrap_err().is_domain());
    assert!(mass_in_ball(&sol, -0.1).unwrap_err().is_domain());
    assert_eq!(mass_in_ball(&sol, 0.0).unwrap(), 0.0);
    assert!(ASpec::constant(-1.0).unwrap_err().is_domain());
    assert!(ASpec::polynomial(vec![1.0, -2.0], 1.0)
        .unwrap_err()
        .is_domain());
}

#[test]
fn initial_data_hold() {
    let p = ProblemParams::new(4, 1.6);
    let sol = shoot_ball(&p, &ASpec::constant(2.0).unwrap(), 3.0, 1.0).unwrap();
    assert_eq!(sol.eval(0.0), (3.0, 0.0));
}

#[test]
fn matches_entire_solution_inside_ball() {
    let p = ProblemParams::new(3, 2.0);
    let gs = Arc::new(ground_state(&p).unwrap());
    let mu = 4.0_f64;
    let entire = entire_solution(Arc::clone(&gs), &[0.0; 3], mu).unwrap();
    let radius = 2.0;
    let sol = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), mu.powf(p.q()), radius).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..=2000 {
        let r = radius * k as f64 / 2000.0;
        worst = worst.max((sol.value(r) - entire.eval_radial(r)).abs());
    }
    assert!(worst <= 1e-8, "sup error {worst:e}");
}

#[test]
fn constant_coefficient_covariance() {
    for (n, g) in [(3, 2.0), (4, 1.6), (5, 1.3)] {
        let p = ProblemParams::new(n, g);
        let a0 = 3.5_f64;
        let a = 2.0;
        let radius = 2.0;
        let lhs = shoot_ball(&p, &ASpec::constant(a0).unwrap(), a, radius).unwrap();
        let k = a0.powf(1.0 / (g - 1.0));
        let rhs = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), k * a, radius).unwrap();
        for r in logspace(1e-3, radius, 16) {
            let expected = rhs.value(r) / k;
            assert!(
                (lhs.value(r) - expected).abs() <= 1e-9,
                "({n}, {g}) r = {r}"
            );
        }
    }
}

#[test]
fn harmonic_beyond_first_zero() {
    for (n, g, a) in [(3, 2.0, 16.0), (4, 1.6, 40.0), (5, 2.0, 100.0)] {
        let p = ProblemParams::new(n, g);
        let radius = 3.0;
        let sol = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), a, radius).unwrap();
        let z = sol.first_zero().expect("zero inside the ball");
        let (vz, dz) = sol.eval(z);
        assert!(vz.abs() <= 1e-10 * a);
        // a1 + a2 r^{2-n} through (z, 0) with slope dz
        let nf = n as f64;
        let a2 = -dz * z.powf(nf - 1.0) / (nf - 2.0);
        let a1 = -a2 * z.powf(2.0 - nf);
        let mut worst: f64 = 0.0;
        for k in 1..=200 {
            let r = z + (radius - z) * k as f64 / 200.0;
            worst = worst.max((sol.value(r) - (a1 + a2 * r.powf(2.0 - nf))).abs());
        }
        // tolerances act on the profile normalised by its centre value
        let worst = worst / a;
        assert!(worst <= 10.0 * p.tol_ode, "({n}, {g}) {worst:e}");
    }
}

#[test]
fn polynomial_coefficient_satisfies_flux_form() {
    let p = ProblemParams::new(3, 2.0);
    let radius = 2.0;
    let coefficient = ASpec::polynomial(vec![1.0, 0.5, -0.2], radius).unwrap();
    assert!(coefficient.sup_bound >= 1.0);
    let sol = shoot_ball(&p, &coefficient, 10.0, radius).unwrap();
    // r² v'(r) = -∫₀^r A v₊² t² dt
    let f = |t: f64| coefficient.eval(t) * sol.value(t).max(0.0).powi(2) * t * t;
    let mut integral = 0.0;
    let m = 4000;
    let h = radius / m as f64;
    for i in 0..m {
        let (l, r) = (i as f64 * h, (i + 1) as f64 * h);
        integral += h / 6.0 * (f(l) + 4.0 * f(0.5 * (l + r)) + f(r));
        if (i + 1) % 400 == 0 {
            let slope = sol.eval(r).1;
            let res = (r * r * slope + integral).abs();
            assert!(res <= 1e-7 * integral.abs().max(1.0), "r = {r}: {res:e}");
        }
    }
}

#[test]
fn mass_nondecreasing_in_radius() {
    let p = ProblemParams::new(3, 2.0);
    let sol = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), 9.0, 2.0).unwrap();
    let mut prev = 0.0;
    for k in 0..=50 {
        let m = sol.mass_in_ball(2.0 * k as f64 / 50.0).unwrap();
        assert!(m >= prev);
        prev = m;
    }
}

#[test]
fn contained_support_carries_full_mass() {
    let p = ProblemParams::new(3, 2.0);
    let gs = ground_state(&p).unwrap();
    let mu = 8.0_f64;
    assert!(gs.r_star / mu < 1.0);
    let sol = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), mu.powf(p.q()), 1.0).unwrap();
    assert!(rel(sol.mass_in_ball(1.0).unwrap(), gs.lambda_mass) <= 1e-8);
}

#[test]
fn mass_bound_constraint() {
    let p = ProblemParams::new(3, 2.0);
    let sol = shoot_ball(&p, &ASpec::constant(1.0).unwrap(), 4.0, 1.0).unwrap();
    let mass = sol.mass_in_ball(1.0).unwrap();
    assert!(sol.satisfies_mass_bound());
    assert!(sol
        .clone()
        .with_mass_bound(1.01 * mass)
        .satisfies_mass_bound());
    assert!(!sol.with_mass_bound(0.99 * mass).satisfies_mass_bound());
}

#[test]
fn blowup_family_at_coincidence_exponent() {
    let p = ProblemParams::new(3, 3.0);
    let mus = dyadic_grid(0, 10);
    let report = blowup_family(&p, 4.0, &mus, 1.0).unwrap();
    assert!(rel(report.quantum, N3_G3.lambda_flux / 8.0) <= 1e-6);
    for w in report.masses.windows(2) {
        assert!(w[1] >= w[0] - 1e-12 * report.quantum);
    }
    for (i, &mu) in mus.iter().enumerate() {
        assert!(rel(report.sups[i], family_center_value(&p, 4.0, mu)) <= 1e-15);
        if mu >= 8.0 {
            assert!(report.residuals[i] <= 1e-8 * report.quantum, "mu = {mu}");
        }
    }
    let half = &report.v_half[3..];
    assert!(half.windows(2).all(|w| w[1] < w[0]));
    assert!(half[2..].iter().all(|v| *v < -1.0));
    assert!(report.v_edge[3..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn blowup_residual_unit_coefficient() {
    let p = ProblemParams::new(4, 1.6);
    let report = blowup_family(&p, 1.0, &dyadic_grid(3, 8), 1.0).unwrap();
    let gs = ground_state(&p).unwrap();
    assert!(rel(report.quantum, gs.lambda_mass) <= 1e-15);
    for r in &report.residuals {
        assert!(*r <= 1e-8 * report.quantum);
    }
}

#[test]
fn blowup_rejects_bad_grid() {
    let p = ProblemParams::new(3, 2.0);
    assert!(blowup_family(&p, 0.0, &[1.0], 1.0).unwrap_err().is_domain());
    assert!(blowup_family(&p, 1.0, &[2.0, 1.0], 1.0)
        .unwrap_err()
        .is_domain());
    assert!(blowup_family(&p, 1.0, &[], 1.0).unwrap_err().is_domain());
}

#[test]
fn sup_alone_is_unbounded() {
    let p = ProblemParams::new(3, 2.0);
    let mus = dyadic_grid(0, 12);
    let report = sup_inf_probe(&p, 2.0, &mus, 1.0, 0.0).unwrap();
    for (v, mu) in report.values.iter().zip(&mus) {
        assert!(rel(*v, family_center_value(&p, 2.0, *mu)) <= 1e-15);
    }
    assert_eq!(report.argmax, mus.len() - 1);
}

#[test]
fn sup_plus_inf_is_bounded_above_threshold() {
    let p = ProblemParams::new(3, 2.0);
    let gs = ground_state(&p).unwrap();
    let c = 2.0 * sup_inf_threshold(&gs);
    let short = sup_inf_probe(&p, 1.0, &dyadic_grid(0, 12), 1.0, c).unwrap();
    let long = sup_inf_probe(&p, 1.0, &dyadic_grid(0, 14), 1.0, c).unwrap();
    assert!(short.has_interior_max());
    assert_eq!(short.bound, long.bound);
    assert_eq!(short.argmax, long.argmax);
    assert!(rel(short.c_star, sup_inf_threshold(&gs)) == 0.0);
}

#[test]
fn threshold_separates_growth() {
    let p = ProblemParams::new(4, 1.6);
    let gs = ground_state(&p).unwrap();
    let c_star = sup_inf_threshold(&gs);
    let mus = dyadic_grid(4, 12);
    let below = sup_inf_probe(&p, 1.0, &mus, 1.0, 0.5 * c_star).unwrap();
    let above = sup_inf_probe(&p, 1.0, &mus, 1.0, 1.5 * c_star).unwrap();
    assert!(below.values.windows(2).all(|w| w[1] > w[0]));
    assert!(above.values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn eps_regularity_half_quantum() {
    let p = ProblemParams::new(3, 2.0);
    let gs = ground_state(&p).unwrap();
    let report = eps_regularity_probe(&p, 0.5 * gs.lambda_mass, 1.0).unwrap();
    assert!(report.c_of_eps.is_finite() && report.c_of_eps > 0.0);
    assert!(report.mu_rel_width <= 1e-8);
    assert!(rel(report.mass_at_sup, report.eps) <= 1e-8);
    assert!(rel(report.c_of_eps, report.mu_at_sup.powf(p.q())) <= 1e-15);
}

#[test]
fn eps_regularity_rejects_out_of_range() {
    let p = ProblemParams::new(3, 2.0);
    let gs = ground_state(&p).unwrap();
    for eps in [gs.lambda_mass, 1.5 * gs.lambda_mass, 0.0, -1.0] {
        assert!(eps_regularity_probe(&p, eps, 1.0).unwrap_err().is_domain());
    }
}

#[test]
fn eps_regularity_monotone_and_bounded() {
    let p = ProblemParams::new(3, 2.0);
    let gs = ground_state(&p).unwrap();
    let c: Vec<f64> = [0.25, 0.5, 0.9, 0.99, 0.999]
        .iter()
        .map(|f| {
            eps_regularity_probe(&p, f * gs.lambda_mass, 1.0)
                .unwrap()
                .c_of_eps
        })
        .collect();
    assert!(c.windows(2).all(|w| w[1] > w[0]));
    // the family's centre value at full containment caps c_of_eps
    let cap = gs.r_star.powf(p.q());
    assert!(c.iter().all(|v| *v < cap));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn family_mass_nondecreasing_in_mu(lo in 0.1f64..4.0, ratio in 1.01f64..3.0) {
        let p = ProblemParams::new(3, 2.0);
        let one = ASpec::constant(1.0).unwrap();
        let m = |mu: f64| shoot_ball(&p, &one, mu.powf(p.q()), 1.0).unwrap().mass_in_ball(1.0).unwrap();
        prop_assert!(m(lo * ratio) >= m(lo) * (1.0 - 1e-12));
    }
}
