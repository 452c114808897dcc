//! Radial shooting for the Euler–Lagrange equation `-Δ_p u = θ u^{q-1}`.
//!
//! The equation is written in flux form with state `(u, w)`,
//! `w = ρ^{n-1} φ_p(u_ρ)`, and integrated from a two-term series at `ρ_0`
//! until `u` first vanishes at `z`. Homogeneity then maps the profile
//! onto the unit ball exactly: `u(ρ) = U(zρ)` solves the equation with
//! `θ = z^p`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::ode::{dp_step, error_norm, State};
use crate::error::{Error, Result};
use crate::math::{conjugate, odd_pow, pow};
use crate::radial::{PiecewiseRadialProfile, SampledData, Segment, SegmentKind};

/// Solver knobs; the defaults are the documented ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Series start radius.
    pub rho0: f64,
    /// Local relative tolerance of the stepper.
    pub tol: f64,
    /// Largest step.
    pub max_step: f64,
    /// Largest step relative to `ρ` (keeps the Hermite samples dense near
    /// the origin, where `u_ρρ` is singular for `p > 2`).
    pub max_rel_step: f64,
    /// Accuracy of the zero location.
    pub zero_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig {
            rho0: 1e-6,
            tol: 1e-12,
            max_step: 4e-3,
            max_rel_step: 2e-2,
            zero_tol: 1e-12,
        }
    }
}

/// Raw trajectory on `[0, z]` with `U(0) = 1`, `θ = 1`. Values are stored
/// as `U - 1`.
pub(crate) struct Trajectory {
    pub zero: f64,
    pub series_coeff: f64,
    pub rho: Vec<f64>,
    pub drop: Vec<f64>,
    pub slope: Vec<f64>,
    pub curvature: Vec<f64>,
}

struct Rhs {
    n: f64,
    p: f64,
    q: f64,
    theta: f64,
}

impl Rhs {
    fn slope(&self, rho: f64, w: f64) -> f64 {
        let area = if self.n == 1.0 { 1.0 } else { pow(rho, self.n - 1.0) };
        odd_pow(w / area, 1.0 / (self.p - 1.0))
    }

    /// State `(U - 1, w)`: the drop from the central value keeps full
    /// precision near the origin.
    fn eval(&self, rho: f64, y: &State) -> State {
        let area = if self.n == 1.0 { 1.0 } else { pow(rho, self.n - 1.0) };
        [self.slope(rho, y[1]), -self.theta * area * odd_pow(1.0 + y[0], self.q - 1.0)]
    }

    /// `u_ρρ` from the equation: `(p-1)|u'|^{p-2} u'' = -θ φ_q(u) - (n-1) φ_p(u')/ρ`.
    fn curvature(&self, rho: f64, u: f64, du: f64) -> f64 {
        let forcing = -self.theta * odd_pow(u, self.q - 1.0) - (self.n - 1.0) * odd_pow(du, self.p - 1.0) / rho;
        forcing / ((self.p - 1.0) * pow(du.abs(), self.p - 2.0))
    }
}

/// Integrate from `U(0) = 1` to the first zero.
pub(crate) fn integrate_to_zero(n: u32, p: f64, q: f64, cfg: &ShootingConfig) -> Result<Trajectory> {
    let rhs = Rhs {
        n: n as f64,
        p,
        q,
        theta: 1.0,
    };
    let nf = n as f64;
    let pp = conjugate(p);
    // u ≈ 1 - C ρ^{p'}, w ≈ -ρ^n / n
    let series_coeff = (p - 1.0) / p * pow(1.0 / nf, 1.0 / (p - 1.0));
    let rho0 = cfg.rho0;
    let mut y: State = [-series_coeff * pow(rho0, pp), -pow(rho0, nf) / nf];
    let mut x = rho0;
    let mut traj = Trajectory {
        zero: f64::NAN,
        series_coeff,
        rho: Vec::with_capacity(4096),
        drop: Vec::with_capacity(4096),
        slope: Vec::with_capacity(4096),
        curvature: Vec::with_capacity(4096),
    };
    let push = |traj: &mut Trajectory, x: f64, y: &State| {
        let du = rhs.slope(x, y[1]);
        traj.rho.push(x);
        traj.drop.push(y[0]);
        traj.slope.push(du);
        traj.curvature.push(rhs.curvature(x, 1.0 + y[0], du));
    };
    push(&mut traj, x, &y);

    let f = |r: f64, s: &State| rhs.eval(r, s);
    let mut h = (cfg.max_rel_step * x).min(cfg.max_step);
    const MAX_STEPS: usize = 2_000_000;
    const MAX_RHO: f64 = 1e8;
    for _ in 0..MAX_STEPS {
        h = h.min(cfg.max_step).min(cfg.max_rel_step * x);
        let (y1, err) = dp_step(&f, x, &y, h);
        let en = error_norm(&y, &y1, &err, f64::MIN_POSITIVE, cfg.tol);
        if !(en <= 1.0) || !y1[0].is_finite() || !y1[1].is_finite() {
            h *= if en.is_finite() { (0.9 * pow(en, -0.2)).max(0.1) } else { 0.1 };
            if h < 1e-14 * x {
                return Err(Error::Shooting(format!("step size underflow at ρ = {x}")));
            }
            continue;
        }
        if y1[0] <= -1.0 {
            let (z, yz) = refine_zero(&f, x, &y, h, cfg.zero_tol)?;
            let du = rhs.slope(z, yz[1]);
            traj.rho.push(z);
            traj.drop.push(-1.0);
            traj.slope.push(du);
            traj.curvature.push(rhs.curvature(z, 0.0, du));
            traj.zero = z;
            return Ok(traj);
        }
        x += h;
        y = y1;
        push(&mut traj, x, &y);
        if x > MAX_RHO {
            break;
        }
        h *= (0.9 * pow(en.max(1e-10), -0.2)).clamp(0.2, 5.0);
    }
    Err(Error::Shooting(format!(
        "no sign change of u up to ρ = {x}; the exponent is likely critical or supercritical"
    )))
}

/// Locate `u = 0` inside the step `[x, x + h]` by bisection on single
/// stepper calls from the accepted state, finished with one secant step.
fn refine_zero<F: Fn(f64, &State) -> State>(f: &F, x: f64, y: &State, h: f64, tol: f64) -> Result<(f64, State)> {
    let value = |t: f64| dp_step(f, x, y, t).0;
    let (mut a, mut fa) = (0.0, 1.0 + y[0]);
    let (mut b, mut fb) = (h, 1.0 + value(h)[0]);
    while b - a > 1e-3 * tol && b - a > 4.0 * f64::EPSILON * (x + b) {
        let m = 0.5 * (a + b);
        let fm = 1.0 + value(m)[0];
        if fm > 0.0 {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let t = if fa != fb { a - fa * (b - a) / (fb - fa) } else { 0.5 * (a + b) };
    let yt = value(t);
    if !yt[0].is_finite() || !yt[1].is_finite() {
        return Err(Error::Shooting("zero refinement produced a non-finite state".into()));
    }
    Ok((x + t, yt))
}

/// Result of mapping the trajectory onto the unit ball.
pub(crate) struct UnitProfile {
    pub profile: PiecewiseRadialProfile,
    /// `θ` in `-Δ_p u = θ u^{q-1}` for the returned (unnormalized) profile.
    pub theta: f64,
}

/// `u(ρ) = U(zρ)` on `[0, 1)`: a series segment on `[0, ρ_0/z)` and a
/// sampled segment for the rest.
pub(crate) fn to_unit_ball(n: u32, p: f64, traj: &Trajectory) -> Result<UnitProfile> {
    let z = traj.zero;
    let pp = conjugate(p);
    let rho: Vec<f64> = traj.rho.iter().map(|r| r / z).collect();
    let slope: Vec<f64> = traj.slope.iter().map(|d| d * z).collect();
    let curvature: Vec<f64> = traj.curvature.iter().map(|c| c * z * z).collect();
    let mut rho = rho;
    let last = rho.len() - 1;
    rho[last] = 1.0;
    let cut = rho[0];
    let data = SampledData::new(1.0, rho, traj.drop.clone(), slope, curvature);
    let series = Segment::power_affine(1.0, -traj.series_coeff * pow(z, pp), pp, 0.0, cut);
    let sampled = Segment::new(SegmentKind::Sampled(Arc::new(data)), cut, 1.0);
    let profile = PiecewiseRadialProfile::new(n, vec![series, sampled])?;
    Ok(UnitProfile {
        profile,
        theta: pow(z, p),
    })
}
