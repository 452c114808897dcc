use super::*;
use crate::math::{ball_measure, radius_for_measure};
use crate::radial::Part;
use core::f64::consts::PI;
use proptest::prelude::*;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn dirichlet_interval_constant() {
    let e = shoot_subcritical(1, 2.0, 2.0, &cfg()).unwrap();
    assert!(rel(e.constant.k, 2.0 / PI) < 1e-10, "{}", e.constant.k);
    assert!(rel(eigen_lower_bound(&e.constant), PI * PI / 4.0) < 1e-10);
    assert!(rel(e.state.theta, PI * PI / 4.0) < 1e-10);
    assert!(e.constant.residual < 1e-8);
    assert_eq!(e.constant.method, Method::Shooting);
}

#[test]
fn one_dim_p_eigenvalue() {
    // λ_p = (p-1)(π_p/2)^p, π_p = 2π/(p sin(π/p))
    let p = 3.0;
    let pi_p = 2.0 * PI / (p * (PI / p).sin());
    let lambda = (p - 1.0) * (pi_p / 2.0).powf(p);
    let e = shoot_subcritical(1, p, p, &cfg()).unwrap();
    assert!(rel(1.0 / e.constant.k.powf(p), lambda) < 1e-4);
    assert!(rel(e.state.theta, lambda) < 1e-9);
}

#[test]
fn residuals_are_small() {
    for &(n, p, q) in &[(1u32, 2.0, 2.0), (1, 3.0, 3.0), (3, 2.0, 4.0), (3, 1.5, 2.0), (2, 4.0, 6.0), (2, 2.0, 2.0), (4, 3.0, 5.0)] {
        let e = shoot_subcritical(n, p, q, &cfg()).unwrap();
        assert!(e.constant.residual < 1e-8, "({n},{p},{q}): {}", e.constant.residual);
    }
}

#[test]
fn green_identity_normalisation() {
    // ||∇u||_p = 1 and θ ||u||_q^q = 1
    let e = shoot_subcritical(3, 2.0, 4.0, &cfg()).unwrap();
    let grad = radial::grad_lp_norm(&e.state.profile, 2.0, &cfg()).unwrap();
    assert!((grad - 1.0).abs() < 1e-10);
    let lq = radial::lp_norm(&e.state.profile, 4.0, &cfg()).unwrap();
    assert!((e.state.theta * lq.powi(4) - 1.0).abs() < 1e-8);
    assert!(rel(lq, e.constant.k) < 1e-14);
}

#[test]
fn shooting_rejects_bad_exponents() {
    assert!(shoot_subcritical(3, 2.0, 6.0, &cfg()).is_err());
    assert!(shoot_subcritical(3, 2.0, 1.5, &cfg()).is_err());
    assert!(shoot_subcritical(3, 2.0, f64::INFINITY, &cfg()).is_err());
}

#[test]
fn shooting_matches_rayleigh_oracle() {
    for &(n, p, q) in &[(1u32, 2.0, 2.0), (3, 2.0, 4.0), (2, 4.0, 6.0)] {
        let e = shoot_subcritical(n, p, q, &cfg()).unwrap();
        let r = rayleigh_estimate(n, p, q, 200, 20_000);
        assert!(rel(r, e.constant.k) < 1e-3, "({n},{p},{q}): {r} vs {}", e.constant.k);
    }
}

#[test]
fn sup_norm_examples() {
    let k = sup_norm_constant(1, 2.0, &cfg()).unwrap();
    // Green's function of -u'' on (-1, 1) at the centre: G(0,0) = 1/2
    assert!(rel(k.k, 0.5f64.sqrt()) < 1e-15);
    let k = sup_norm_constant(2, 4.0, &cfg()).unwrap();
    assert!(rel(k.k, (2.0 * PI * (2.0f64 / 3.0).powi(3)).powf(-0.25)) < 1e-15);
    // the closed form rounds to 0.8561
    assert!((k.k - 0.8562).abs() < 2e-4);
    for &(n, p) in &[(1u32, 1.5), (1, 2.0), (2, 3.0), (3, 7.0), (4, 4.5)] {
        let tight = QuadConfig { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 20_000 };
        let k = sup_norm_constant(n, p, &tight).unwrap();
        assert!(k.residual < 1e-10, "({n},{p}): {}", k.residual);
    }
    assert!(sup_norm_constant(3, 2.0, &cfg()).is_err());
}

#[test]
fn critical_examples() {
    let k = critical_constant(3, 2.0, &cfg()).unwrap();
    let v = crate::families::talenti_pair(3, 2.0, &cfg()).unwrap().v;
    let vn = radial::potential_norm(&v, 1.5, Part::Full, &cfg()).unwrap();
    assert!((k.k * k.k * vn - 1.0).abs() < 1e-6);
    let k4 = critical_constant(4, 2.0, &cfg()).unwrap();
    assert!(k4.k.is_finite() && k4.k > 0.0);
    assert!(k4.residual < 1e-8);
    assert_eq!(k4.domain_radius, f64::INFINITY);
}

#[test]
fn critical_is_dilation_invariant() {
    let v = PiecewiseRadialProfile::new(3, alloc::vec![Segment::talenti(3, 2.0, 0.0, f64::INFINITY)]).unwrap();
    let base = critical_constant(3, 2.0, &cfg()).unwrap().k;
    for &scale in &[0.1, 3.0, 50.0] {
        let w = v.dilated(scale).unwrap();
        let k = radial::lp_norm(&w, 6.0, &cfg()).unwrap() / radial::grad_lp_norm(&w, 2.0, &cfg()).unwrap();
        assert!((k - base).abs() < 1e-10, "{scale}: {k} vs {base}");
    }
}

#[test]
fn scaling_bound_examples() {
    let e = shoot_subcritical(3, 2.0, 4.0, &cfg()).unwrap();
    let star = e.constant.on_unit_measure().unwrap();
    assert!((ball_measure(3, star.domain_radius) - 1.0).abs() < 1e-14);
    let same = scaling_bound(&star, 1.0).unwrap();
    assert_eq!(same.k, star.k);
    let two = scaling_bound(&star, 2.0).unwrap();
    assert!(rel(two.k, 2f64.powf(1.0 / 12.0) * star.k) < 1e-14);
    // for a ball the bound is the constant itself
    let unit = scaling_bound(&star, ball_measure(3, 1.0)).unwrap();
    assert!(rel(unit.k, e.constant.k) < 1e-12);
    assert!(scaling_bound(&star, 0.0).is_err());
    assert!(scaling_bound(&e.constant, 2.0).is_err());

    let eig = shoot_subcritical(2, 2.0, 2.0, &cfg()).unwrap().constant.on_unit_measure().unwrap();
    for &m in &[0.3, 5.0] {
        let b = scaling_bound(&eig, m).unwrap();
        assert!(rel(b.k, m.powf(0.5) * eig.k) < 1e-14);
    }
}

#[test]
fn eigen_bound_examples() {
    let mut k = sup_norm_constant(1, 2.0, &cfg()).unwrap();
    k.k = 1.0;
    assert_eq!(eigen_lower_bound(&k), 1.0);
    let e = shoot_subcritical(2, 3.0, 4.0, &cfg()).unwrap().constant;
    assert!((eigen_lower_bound(&e) * e.k.powf(3.0) - 1.0).abs() < 1e-15);
}

#[test]
fn radius_rescaling() {
    let e = shoot_subcritical(2, 2.0, 3.0, &cfg()).unwrap().constant;
    let r = 2.5;
    let moved = e.on_radius(r).unwrap();
    assert!(rel(moved.k, r.powf(1.0 + 2.0 / 3.0 - 1.0) * e.k) < 1e-14);
    let back = moved.on_radius(1.0).unwrap();
    assert!(rel(back.k, e.k) < 1e-14);
    assert!(rel(radius_for_measure(2, ball_measure(2, r)), r) < 1e-15);
}

#[test]
fn extremal_is_positive_and_decreasing() {
    let e = shoot_subcritical(3, 1.5, 2.5, &cfg()).unwrap();
    let u = &e.state.profile;
    let mut prev = f64::INFINITY;
    for i in 0..1000 {
        let rho = i as f64 / 1000.0;
        let v = u.eval(rho).unwrap();
        assert!(v >= 0.0 && v <= prev, "ρ={rho}");
        prev = v;
    }
    assert!(e.state.central_value > 0.0);
}

#[test]
fn constant_is_continuous_in_q() {
    for &(n, p) in &[(3u32, 2.0), (2, 3.0)] {
        let top = crate::exponents::critical_exponent(n, p).min(8.0);
        let mut q = p;
        let mut prev: Option<f64> = None;
        while q < top - 1e-9 {
            let k = shoot_subcritical(n, p, q, &cfg()).unwrap().constant.k;
            if let Some(pk) = prev {
                assert!(rel(k, pk) < 0.05, "({n},{p}) q={q}");
            }
            prev = Some(k);
            q += 0.1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quotient_is_homogeneous(scale in 1e-3f64..1e3, pick in 0usize..3) {
        let (n, p, q) = [(1u32, 2.0, 3.0), (3, 2.0, 4.0), (2, 3.0, 5.0)][pick];
        let e = shoot_subcritical(n, p, q, &cfg()).unwrap();
        let u = e.state.profile.scaled(scale);
        let k = radial::lp_norm(&u, q, &cfg()).unwrap() / radial::grad_lp_norm(&u, p, &cfg()).unwrap();
        prop_assert!(rel(k, e.constant.k) < 1e-13);
    }
}
