use super::*;
use crate::math::ball_measure;
use core::f64::consts::{E, PI};
use proptest::prelude::*;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn pair(n: u32, alpha: f64) -> OrliczPair {
    OrliczPair::new(n, alpha).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn alpha_constants() {
    assert!(rel(alpha_n(2) * alpha_n(2), 4.0 * PI) < 1e-14);
    assert!(rel(OrliczPair::with_default_alpha(2).unwrap().alpha, 2.0 * PI) < 1e-14);
    assert!(OrliczPair::new(2, 4.0 * PI).is_err());
    assert!(OrliczPair::new(1, 0.5).is_err());
    assert!(OrliczPair::new(3, 0.0).is_err());
}

#[test]
fn m_examples() {
    let m = pair(2, 1.0);
    assert_eq!(m.m(0.0), 0.0);
    assert!(rel(m.m(1.0), E - 2.0) < 1e-15);
    // tiny arguments keep full relative precision
    assert!(rel(m.m(1e-6), 0.5e-12) < 1e-5);
}

#[test]
fn m_quadrature_matches_closed_form_in_three_dims() {
    // n = 3: M(t) = 2 ∫_0^X (e^w - 1) w dw = 2[(X - 1)e^X + 1 - X²/2], X = sqrt(αt)
    let m = pair(3, 2.0);
    for &t in &[0.01, 0.5, 2.0, 30.0] {
        let x = (2.0f64 * t).sqrt();
        let exact = 2.0 * ((x - 1.0) * x.exp() + 1.0 - x * x / 2.0);
        assert!(rel(m.m(t), exact) < 1e-11, "t = {t}");
    }
}

#[test]
fn m_prime_matches_finite_differences() {
    for (n, alpha) in [(2u32, 1.0), (3, 5.0), (4, 20.0)] {
        let m = pair(n, alpha);
        for &t in &[0.05, 0.7, 3.0] {
            let h = 1e-5 * t;
            let fd = (m.m(t + h) - m.m(t - h)) / (2.0 * h);
            assert!(m.m_prime(t) > 0.0);
            assert!(rel(fd, m.m_prime(t)) < 1e-6, "n={n} t={t}: {fd} vs {}", m.m_prime(t));
        }
    }
    let alt = OrliczPair::alternate(3).unwrap();
    for &t in &[0.05, 0.7] {
        let h = 1e-5 * t;
        let fd = (alt.m(t + h) - alt.m(t - h)) / (2.0 * h);
        assert!(rel(fd, alt.m_prime(t)) < 1e-6);
    }
}

#[test]
fn large_arguments_use_log_space() {
    let m = pair(2, 1.0);
    assert_eq!(m.m(800.0), f64::INFINITY);
    assert!(rel(m.ln_m(800.0), 800.0) < 1e-12);
    assert!(rel(m.ln_m(10.0), (m.m(10.0)).ln()) < 1e-15);
    let m3 = pair(3, 1.0);
    // X = 1000: ln(2 ∫ e^w w dw) ≈ ln 2 + X + ln(X - 1)
    let t = 1e6;
    assert!(rel(m3.ln_m(t), 2f64.ln() + 1000.0 + 999f64.ln()) < 1e-12);
}

#[test]
fn alternate_equals_standard_in_the_plane() {
    let alt = OrliczPair::alternate(2).unwrap();
    let std_ = pair(2, 4.0 * PI - 1e-9);
    let exact = OrliczPair { alpha: 4.0 * PI, ..std_ };
    for &t in &[0.01, 0.3, 2.0] {
        assert!(rel(alt.m(t), exact.m(t)) < 1e-13);
        assert!(rel(alt.m_prime(t), exact.m_prime(t)) < 1e-13);
    }
    assert!(OrliczPair::alternate(3).unwrap().n_eval(1.0).is_nan());
}

#[test]
fn n_examples() {
    let m = pair(2, 1.0);
    assert_eq!(m.n_eval(0.0), 0.0);
    for &x in &[0.0, 0.5, 3.0] {
        assert_eq!(poly_p(1, x), x - 1.0);
        assert_eq!(poly_p(0, x), 1.0);
    }
    // ∫_0^{e-1} log(t+1) dt = 1
    let q = integrate(ln1p, 0.0, E - 1.0, &cfg()).unwrap().value;
    assert!((q - 1.0).abs() < 1e-12);
    assert!((m.n_eval(E - 1.0) - q).abs() < 1e-10);
}

#[test]
fn n_closed_form_matches_defining_integral() {
    for n in 2..6u32 {
        let m = pair(n, 0.7 * critical_alpha(n) / 2.0);
        let k = n as f64 - 1.0;
        for i in 0..=48 {
            let s = if i == 0 { 0.0 } else { 10f64.powf(-6.0 + 12.0 * i as f64 / 48.0) };
            let x = s / m.alpha;
            let q = integrate(|t| pow(ln1p(t), k), 0.0, x, &inner_cfg()).unwrap().value;
            let c = m.n_eval(s);
            assert!((c - q).abs() <= 1e-9 * q.max(1e-300), "n={n} s={s}: {c} vs {q}");
        }
    }
}

#[test]
fn generalized_log_power() {
    let base = pair(2, 1.0);
    let k0 = base.with_log_power(0.0).unwrap();
    assert!(rel(k0.n_eval(3.0), 3.0) < 1e-15);
    let khalf = base.with_log_power(0.5).unwrap();
    let q = integrate(|t| ln1p(t).sqrt(), 0.0, 2.0, &inner_cfg()).unwrap().value;
    assert!(rel(khalf.n_eval(2.0), q) < 1e-12);
    assert!(base.with_log_power(-1.0).is_err());
}

#[test]
fn young_gap_examples() {
    let m = pair(2, 2.0 * PI);
    assert_eq!(young_gap(&m, 0.0, 0.0).unwrap(), 0.0);
    for &u in &[0.1, 1.0, 5.0] {
        let v = m.m_prime(u);
        let scale = m.m(u) + m.n_eval(v);
        assert!(young_gap(&m, u, v).unwrap() < 1e-10 * scale.max(1.0), "U = {u}");
        assert!(young_gap(&m, u, 1.5 * v).unwrap() > 0.0);
    }
    assert!(young_gap(&m, -1.0, 0.0).is_err());
}

#[test]
fn luxemburg_of_zero_is_zero() {
    let m = pair(2, 1.0);
    let r = luxemburg_norm(&m, &Potential::zero(2, 1.0), 1.0, PI, &cfg()).unwrap();
    assert_eq!(r.norm, 0.0);
}

fn grid_minimum(m: &OrliczPair, v: &Potential, k_m: f64, measure: f64) -> f64 {
    // log-spaced scan followed by a dense local scan
    let obj = |l: f64| l + f_lambda(m, v, Part::Full, l, &cfg()).unwrap() / (k_m * measure);
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=400 {
        let l = 10f64.powf(-6.0 + 12.0 * i as f64 / 400.0);
        let f = obj(l);
        if f < best.0 {
            best = (f, l);
        }
    }
    let (lo, hi) = (best.1 / 1.08, best.1 * 1.08);
    for i in 0..=2000 {
        let l = lo + (hi - lo) * i as f64 / 2000.0;
        best.0 = best.0.min(obj(l));
    }
    best.0
}

#[test]
fn luxemburg_constant_matches_grid() {
    let m = pair(2, 1.0);
    let measure = ball_measure(2, 1.0);
    for &c in &[0.3, 2.0, -5.0] {
        let v = Potential::Constant { n: 2, radius: 1.0, value: c };
        let r = luxemburg_norm(&m, &v, 1.3, measure, &cfg()).unwrap();
        let grid = grid_minimum(&m, &v, 1.3, measure);
        assert!((r.norm - grid).abs() < 1e-6, "c={c}: {} vs {grid}", r.norm);
        assert!(r.norm <= grid + 1e-12);
        assert!((r.norm - (r.lambda + r.f_lambda / (1.3 * measure))).abs() < 1e-12);
    }
}

#[test]
fn luxemburg_rejects_atoms() {
    let m = pair(2, 1.0);
    let v = Potential::atomic(2, 1.0, 1.0).unwrap();
    assert!(matches!(luxemburg_norm(&m, &v, 1.0, PI, &cfg()), Err(Error::NotInClass(_))));
}

#[test]
fn luxemburg_linear_n_has_boundary_infimum() {
    // k = 0: F(λ) = ∫|V|/α is constant in λ, so the infimum is the λ → 0 limit.
    let m = pair(2, 2.0).with_log_power(0.0).unwrap();
    let v = Potential::Constant { n: 2, radius: 1.0, value: 3.0 };
    let r = luxemburg_norm(&m, &v, 1.0, PI, &cfg()).unwrap();
    assert_eq!(r.lambda, 0.0);
    assert!(rel(r.norm, 3.0 * PI / 2.0 / PI) < 1e-10);
}

#[test]
fn mt_functional_small_profiles() {
    let m = pair(2, 2.0 * PI);
    let u = moser_profile(2, 1.0, 1.0).unwrap();
    let big = mt_functional(&u, &m, &cfg()).unwrap();
    assert!(big > 0.0);
    // the functional is scale invariant; small amplitude changes nothing
    let small = mt_functional(&u.scaled(1e-6), &m, &cfg()).unwrap();
    assert!(rel(small, big) < 1e-10);
    let flat = PiecewiseRadialProfile::new(2, alloc::vec![Segment::power_affine(1.0, 0.0, 1.0, 0.0, 1.0)]).unwrap();
    assert!(matches!(mt_functional(&flat, &m, &cfg()), Err(Error::Degenerate(_))));
}

#[test]
fn mt_functional_tends_to_zero_for_flat_bumps() {
    // min(-ln ρ, L): u²/||∇u||² ≤ L/(2π)
    let m = pair(2, 2.0 * PI);
    let u = moser_profile(2, 1.0, 1e-3).unwrap();
    let val = mt_functional(&u, &m, &cfg()).unwrap();
    assert!(val < 1e-3 && val > 0.0, "{val}");
}

#[test]
fn k_m_estimate_is_dilation_invariant_and_monotone() {
    let m = pair(2, 2.0 * PI);
    let coarse = estimate_k_m(1.0, &m, &moser_grid(0), &cfg()).unwrap();
    let fine = estimate_k_m(1.0, &m, &moser_grid(2), &cfg()).unwrap();
    assert!(coarse.lower_bound && fine.lower_bound);
    assert!(fine.value >= coarse.value);
    let dilated = estimate_k_m(37.5, &m, &moser_grid(2), &cfg()).unwrap();
    assert!(rel(dilated.value, fine.value) < 1e-8);
    let mut prev = 0.0;
    for r in 0..4 {
        let e = estimate_k_m(1.0, &m, &moser_grid(r), &cfg()).unwrap();
        assert!(e.value >= prev);
        prev = e.value;
    }
}

#[test]
fn equality_identity_examples() {
    let m = pair(2, 1.0);
    let u = moser_profile(2, 1.0, 2.0).unwrap();
    let r = equality_identity_check(&u, &m, &cfg()).unwrap();
    assert!(r < 1e-8, "{r}");
    let scaled = equality_identity_check(&u.scaled(7.0), &m, &cfg()).unwrap();
    assert!((scaled - r).abs() < 1e-12);
    let tiny = moser_profile(2, 1.0, 0.01).unwrap();
    assert!(equality_identity_check(&tiny, &m, &cfg()).unwrap() < 1e-8);
    let flat = PiecewiseRadialProfile::new(2, alloc::vec![Segment::power_affine(0.0, 0.0, 1.0, 0.0, 1.0)]).unwrap();
    assert!(matches!(equality_identity_check(&flat, &m, &cfg()), Err(Error::Degenerate(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn m_and_n_are_convex(n in 2u32..5, frac in 0.05f64..0.95, a in 0.0f64..4.0, b in 0.0f64..4.0) {
        let m = pair(n, frac * critical_alpha(n));
        let mid = 0.5 * (a + b);
        prop_assert!(m.m(mid) <= 0.5 * (m.m(a) + m.m(b)) + 1e-12 * m.m(a).max(m.m(b)).max(1.0));
        let (sa, sb) = (a * 50.0, b * 50.0);
        let sm = 0.5 * (sa + sb);
        prop_assert!(m.n_eval(sm) <= 0.5 * (m.n_eval(sa) + m.n_eval(sb)) + 1e-12 * m.n_eval(sa).max(m.n_eval(sb)).max(1.0));
    }

    #[test]
    fn n_scaling_inequality(n in 2u32..5, k in 0.0f64..4.0, s in 1e-3f64..1e4, lambda in 1e-3f64..0.999) {
        let m = pair(n, critical_alpha(n) / 2.0).with_log_power(k).unwrap();
        let lhs = m.n_eval(s / lambda);
        let rhs = pow(lambda, -(k + 1.0)) * m.n_eval(s);
        prop_assert!(lhs <= rhs * (1.0 + 1e-10), "{lhs} > {rhs}");
    }

    #[test]
    fn young_gap_is_nonnegative(n in 2u32..5, u in 0.0f64..5.0, v in 0.0f64..200.0) {
        let m = pair(n, critical_alpha(n) / 2.0);
        let gap = young_gap(&m, u, v).unwrap();
        prop_assert!(gap >= -1e-12 * (m.m(u) + m.n_eval(v) + u * v).max(1.0));
    }

    #[test]
    fn identity_holds_for_random_profiles(a in 0.1f64..3.0, b in 0.1f64..2.0, g in 1.5f64..4.0, level in 0.2f64..3.0, pick in 0usize..2) {
        let m = pair(2, 2.0 * PI);
        let u = if pick == 0 {
            PiecewiseRadialProfile::new(2, alloc::vec![Segment::power_affine(a + b, -b, g, 0.0, 1.0)]).unwrap()
        } else {
            moser_profile(2, a, level).unwrap()
        };
        let r = equality_identity_check(&u, &m, &cfg()).unwrap();
        prop_assert!(r < 1e-8, "{r}");
    }

    #[test]
    fn luxemburg_matches_grid_for_power_potentials(c in 0.1f64..20.0, e in 0.0f64..3.0) {
        let m = pair(2, 2.0 * PI);
        let u = PiecewiseRadialProfile::new(2, alloc::vec![Segment::power_affine(1.0, 1.0, 1.0, 0.0, 1.0)]).unwrap();
        let v = Potential::PowerOf { u, coeff: c, exponent: e };
        let measure = ball_measure(2, 1.0);
        let r = luxemburg_norm(&m, &v, 1.0, measure, &cfg()).unwrap();
        let obj = |l: f64| l + f_lambda(&m, &v, Part::Full, l, &cfg()).unwrap() / measure;
        for i in 0..=60 {
            let l = 10f64.powf(-4.0 + 8.0 * i as f64 / 60.0);
            prop_assert!(r.norm <= obj(l) + 1e-9);
        }
    }
}
