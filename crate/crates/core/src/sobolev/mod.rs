//! Sobolev constants `K_{q,p}` with `||u||_q <= K ||∇u||_p` on balls.
//!
//! * subcritical `q` by radial shooting ([`shoot_subcritical`]),
//! * `q = ∞`, `p > n` in closed form ([`sup_norm_constant`]),
//! * `q = q̄` from the Talenti profile ([`critical_constant`]),
//!
//! together with the measure scaling bound and the eigenvalue bound `1/K^p`.

mod ode;
mod rayleigh;
mod shooting;

use alloc::format;

use serde::{Deserialize, Serialize};

pub use rayleigh::rayleigh_estimate;
pub use shooting::ShootingConfig;

use crate::error::{Error, Result};
use crate::exponents::{critical_exponent, ExponentConfig};
use crate::math::{abs, ball_measure, pow, radius_for_measure, sphere_area};
use crate::quadrature::QuadConfig;
use crate::radial::{self, PLapValue, PiecewiseRadialProfile, Potential, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Shooting,
    ClosedFormSup,
    TalentiQuadrature,
    ScalingBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevConstant {
    pub k: f64,
    pub config: ExponentConfig,
    /// Ball radius; infinite for the dilation-invariant critical constant.
    pub domain_radius: f64,
    pub method: Method,
    /// Euler–Lagrange residual for shooting, quadrature discrepancy otherwise.
    pub residual: f64,
}

impl SobolevConstant {
    /// `1 + n/q - n/p`, the power of the radius in `K(B_R) = R^e K(B_1)`.
    pub fn radius_exponent(&self) -> f64 {
        let c = &self.config;
        let inv_q = if c.q.is_infinite() { 0.0 } else { 1.0 / c.q };
        1.0 + c.n as f64 * (inv_q - 1.0 / c.p)
    }

    /// The same constant on the ball of another radius.
    pub fn on_radius(&self, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config("radius", "ball radius must be positive and finite"));
        }
        if self.domain_radius.is_infinite() {
            return Ok(SobolevConstant {
                domain_radius: radius,
                ..*self
            });
        }
        let e = self.radius_exponent();
        Ok(SobolevConstant {
            k: self.k * pow(radius / self.domain_radius, e),
            domain_radius: radius,
            ..*self
        })
    }

    /// `K*`: the constant on the ball of measure 1.
    pub fn on_unit_measure(&self) -> Result<Self> {
        self.on_radius(radius_for_measure(self.config.n, 1.0))
    }
}

/// The shooting extremal on the unit ball, normalised to `||∇u||_p = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShootingState {
    pub profile: PiecewiseRadialProfile,
    /// `u(0)` after normalisation.
    pub central_value: f64,
    /// First zero of the `U(0) = 1` trajectory before rescaling.
    pub first_zero: f64,
    /// `θ` in `-Δ_p u = θ u^{q-1}`; equals `1/||u||_q^q` up to quadrature.
    pub theta: f64,
    /// Factor applied to the unit-ball profile to normalise the gradient.
    pub normalization: f64,
}

impl ShootingState {
    /// `V = θ u^{q-p}`, so `-Δ_p u = V u^{p-1}`.
    pub fn potential(&self, q: f64, p: f64) -> Potential {
        Potential::PowerOf {
            u: self.profile.clone(),
            coeff: self.theta,
            exponent: q - p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extremal {
    pub constant: SobolevConstant,
    pub state: ShootingState,
}

/// Radii at which the Euler–Lagrange residual is measured.
pub fn residual_grid() -> impl Iterator<Item = f64> {
    (1..=99).map(|i| i as f64 / 100.0)
}

/// `sup |-Δ_p u - θ u^{q-1}|` over `grid`.
pub fn el_residual(u: &PiecewiseRadialProfile, p: f64, q: f64, theta: f64, grid: impl Iterator<Item = f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for rho in grid {
        let lap = match u.p_laplacian(p, rho)? {
            PLapValue::Finite(v) => v,
            PLapValue::Singular => return Ok(f64::INFINITY),
        };
        let val = u.eval(rho)?;
        worst = worst.max(abs(-lap - theta * crate::math::odd_pow(val, q - 1.0)));
    }
    Ok(worst)
}

/// Sobolev constant and extremal for `p <= q < q̄` on the unit ball.
pub fn shoot_subcritical(n: u32, p: f64, q: f64, cfg: &QuadConfig) -> Result<Extremal> {
    shoot_subcritical_with(n, p, q, &ShootingConfig::default(), cfg)
}

pub fn shoot_subcritical_with(n: u32, p: f64, q: f64, shoot: &ShootingConfig, cfg: &QuadConfig) -> Result<Extremal> {
    let config = ExponentConfig::new(n, p, q)?;
    if !(q >= p) {
        return Err(Error::config("q", format!("q = {q} must be at least p = {p}")));
    }
    if !q.is_finite() || q >= critical_exponent(n, p) {
        return Err(Error::config("q", format!("shooting needs p <= q < q̄ = {}", critical_exponent(n, p))));
    }
    let traj = shooting::integrate_to_zero(n, p, q, shoot)?;
    let unit = shooting::to_unit_ball(n, p, &traj)?;
    let grad = radial::grad_lp_norm(&unit.profile, p, cfg)?;
    let c = 1.0 / grad;
    let profile = unit.profile.scaled(c);
    // -Δ_p(cu) = θ c^{p-q} (cu)^{q-1}
    let theta = unit.theta * pow(c, p - q);
    let lq = radial::lp_norm(&profile, q, cfg)?;
    let k = lq;
    let residual = el_residual(&profile, p, q, theta, residual_grid())?;
    let state = ShootingState {
        central_value: profile.eval(0.0)?,
        profile,
        first_zero: traj.zero,
        theta,
        normalization: c,
    };
    Ok(Extremal {
        constant: SobolevConstant {
            k,
            config,
            domain_radius: 1.0,
            method: Method::Shooting,
            residual,
        },
        state,
    })
}

/// `K_{∞,p} = (ω_n σ^{p-1})^{-1/p}`, `σ = (p-n)/(p-1)`, on the unit ball,
/// attained by `1 - ρ^σ`; the residual is the gap to quadrature.
pub fn sup_norm_constant(n: u32, p: f64, cfg: &QuadConfig) -> Result<SobolevConstant> {
    if !(p > n as f64 && p.is_finite()) {
        return Err(Error::config("p", "the sup-norm constant needs n < p < ∞"));
    }
    let config = ExponentConfig::new(n, p, f64::INFINITY)?;
    let sigma = (p - n as f64) / (p - 1.0);
    let energy = sphere_area(n) * pow(sigma, p - 1.0);
    let u = sup_norm_extremal(n, p)?;
    let quad = radial::grad_integral(&u, p, cfg)?.value;
    Ok(SobolevConstant {
        k: pow(energy, -1.0 / p),
        config,
        domain_radius: 1.0,
        method: Method::ClosedFormSup,
        residual: abs(quad - energy),
    })
}

/// `1 - ρ^σ` on the unit ball, `σ = (p-n)/(p-1)`: p-harmonic away from the
/// origin with `-Δ_p u = K_{∞,p}^{-p} δ_0`.
pub fn sup_norm_extremal(n: u32, p: f64) -> Result<PiecewiseRadialProfile> {
    if !(p > n as f64 && p.is_finite()) {
        return Err(Error::config("p", "the sup-norm extremal needs n < p < ∞"));
    }
    let sigma = (p - n as f64) / (p - 1.0);
    PiecewiseRadialProfile::new(n, alloc::vec![Segment::harmonic(-1.0, 1.0, 2.0 - sigma, 0.0, 1.0)])
}

/// `K = ||v||_{q̄} / ||∇v||_p` for the Talenti profile; the same on every ball.
pub fn critical_constant(n: u32, p: f64, cfg: &QuadConfig) -> Result<SobolevConstant> {
    let config = ExponentConfig::critical(n, p)?;
    if !(p < n as f64) {
        return Err(Error::config("p", "the critical constant needs 1 < p < n"));
    }
    let v = PiecewiseRadialProfile::new(n, alloc::vec![Segment::talenti(n, p, 0.0, f64::INFINITY)])?;
    let qbar = config.q;
    let num = radial::profile_integral(&v, |_, j| pow(abs(j[0]), qbar), cfg)?;
    let den = radial::grad_integral(&v, p, cfg)?;
    let k = pow(num.value, 1.0 / qbar) / pow(den.value, 1.0 / p);
    // first-order propagation of the two quadrature error estimates
    let residual = k * (num.error / (qbar * num.value) + den.error / (p * den.value));
    Ok(SobolevConstant {
        k,
        config,
        domain_radius: f64::INFINITY,
        method: Method::TalentiQuadrature,
        residual,
    })
}

/// `|D|^{1/q - 1/p + 1/n} K*` with `K*` taken on the ball of measure 1.
pub fn scaling_bound(k_star: &SobolevConstant, measure: f64) -> Result<SobolevConstant> {
    if !(measure > 0.0 && measure.is_finite()) {
        return Err(Error::config("measure", format!("|D| = {measure} must be positive")));
    }
    let n = k_star.config.n;
    if k_star.domain_radius.is_finite() {
        let m = ball_measure(n, k_star.domain_radius);
        if abs(m - 1.0) > 1e-12 {
            return Err(Error::config("K*", format!("K* must be computed on a ball of measure 1, not {m}")));
        }
    }
    let c = &k_star.config;
    let inv_q = if c.q.is_infinite() { 0.0 } else { 1.0 / c.q };
    let e = inv_q - 1.0 / c.p + 1.0 / n as f64;
    Ok(SobolevConstant {
        k: pow(measure, e) * k_star.k,
        config: k_star.config,
        domain_radius: radius_for_measure(n, measure),
        method: Method::ScalingBound,
        residual: k_star.residual,
    })
}

/// `1 / K^p`.
pub fn eigen_lower_bound(k: &SobolevConstant) -> f64 {
    1.0 / pow(k.k, k.config.p)
}

#[cfg(test)]
mod tests;
