//! Exact radial calculus on glued closed-form profiles.
//!
//! A radial function `u(x) = u(|x|)` on `B_R ⊂ R^n` integrates as
//! `∫ f dx = ω_n ∫_0^R f(ρ) ρ^{n-1} dρ`, and its p-Laplacian is
//! `Δ_p u = |u_ρ|^{p-2}((p-1) u_ρρ + (n-1) u_ρ / ρ)`.

mod potential;
mod profile;
mod segment;

use alloc::vec::Vec;

pub use potential::{Potential, ProfilePotential};
pub use profile::{Continuity, PiecewiseRadialProfile, CONTINUITY_TOL};
pub use segment::{radial_p_laplacian, PLapValue, SampledData, Segment, SegmentKind};

use crate::error::{Error, Result};
use crate::math::{abs, pow, sphere_area};
use crate::quadrature::{integrate, QuadConfig, Quadrature};

/// Radial p-Laplacian of `u` at `rho`.
pub fn p_laplacian_radial(u: &PiecewiseRadialProfile, p: f64, rho: f64) -> Result<PLapValue> {
    u.p_laplacian(p, rho)
}

/// `ω_n ∫_lo^hi f(ρ) ρ^{n-1} dρ`; `hi` may be infinite.
pub fn radial_integral<F: Fn(f64) -> f64>(f: F, n: u32, lo: f64, hi: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    radial_integral_split(f, n, lo, hi, &[], cfg)
}

/// [`radial_integral`] split at the given interior points, where the
/// integrand may have kinks.
pub fn radial_integral_split<F: Fn(f64) -> f64>(
    f: F,
    n: u32,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<Quadrature> {
    if !(lo >= 0.0 && hi >= lo) {
        return Err(Error::Domain { rho: lo, radius: hi });
    }
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let weight = n as f64 - 1.0;
    let g = |rho: f64| {
        let w = if weight == 0.0 { 1.0 } else { pow(rho, weight) };
        let v = f(rho);
        if v == 0.0 {
            0.0
        } else {
            v * w
        }
    };
    let mut total = Quadrature::default();
    let mut a = lo;
    for &b in cuts.iter().chain(core::iter::once(&hi)) {
        total = total + integrate(g, a, b, cfg)?;
        a = b;
    }
    let omega = sphere_area(n);
    Ok(Quadrature {
        value: omega * total.value,
        error: omega * total.error,
    })
}

/// `∫_D f(ρ, [u, u_ρ, u_ρρ]) dx` over the profile's domain.
pub fn profile_integral<F: Fn(f64, [f64; 3]) -> f64>(
    u: &PiecewiseRadialProfile,
    f: F,
    cfg: &QuadConfig,
) -> Result<Quadrature> {
    let breaks = u.breakpoints();
    radial_integral_split(
        |rho| match u.jet(rho) {
            Ok(jet) => f(rho, jet),
            Err(_) => f64::NAN,
        },
        u.dimension(),
        0.0,
        u.radius(),
        &breaks,
        cfg,
    )
}

/// `||u||_e`; `e = ∞` gives the supremum norm.
pub fn lp_norm(u: &PiecewiseRadialProfile, exponent: f64, cfg: &QuadConfig) -> Result<f64> {
    if exponent.is_infinite() {
        return Ok(linf_norm(u));
    }
    check_exponent(exponent)?;
    let q = profile_integral(u, |_, j| pow(abs(j[0]), exponent), cfg)?;
    Ok(pow(q.value, 1.0 / exponent))
}

pub fn linf_norm(u: &PiecewiseRadialProfile) -> f64 {
    u.linf_norm()
}

/// `∫ |∇u|^e dx`.
pub fn grad_integral(u: &PiecewiseRadialProfile, exponent: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    check_exponent(exponent)?;
    profile_integral(u, |_, j| pow(abs(j[1]), exponent), cfg)
}

/// `||∇u||_e`.
pub fn grad_lp_norm(u: &PiecewiseRadialProfile, exponent: f64, cfg: &QuadConfig) -> Result<f64> {
    Ok(pow(grad_integral(u, exponent, cfg)?.value, 1.0 / exponent))
}

fn check_exponent(e: f64) -> Result<()> {
    if e >= 1.0 {
        Ok(())
    } else {
        Err(Error::config("exponent", alloc::format!("norm exponent {e} must be >= 1")))
    }
}

/// Which part of a potential a norm is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Full,
    Positive,
}

impl Part {
    fn apply(self, v: f64) -> f64 {
        match self {
            Part::Full => abs(v),
            Part::Positive => v.max(0.0),
        }
    }
}

/// `∫ f(V(ρ), ρ) dx` over the density part of `v`.
pub fn potential_integral<F: Fn(f64, f64) -> f64>(v: &Potential, f: F, cfg: &QuadConfig) -> Result<Quadrature> {
    if !v.has_density() {
        return Ok(Quadrature::default());
    }
    let breaks = v.breakpoints();
    radial_integral_split(|rho| f(v.density(rho), rho), v.dimension(), 0.0, v.radius(), &breaks, cfg)
}

/// `||V||_r` or `||V_+||_r`. For `r = 1` an atomic part contributes its
/// total variation; for `r > 1` an atomic part makes the norm infinite.
pub fn potential_norm(v: &Potential, r: f64, part: Part, cfg: &QuadConfig) -> Result<f64> {
    let mass = part.apply(v.atomic_mass());
    if r.is_infinite() {
        if mass > 0.0 {
            return Ok(f64::INFINITY);
        }
        return potential_sup(v, part);
    }
    check_exponent(r)?;
    if mass > 0.0 && r > 1.0 {
        return Ok(f64::INFINITY);
    }
    let q = potential_integral(v, |x, _| pow(part.apply(x), r), cfg)?;
    Ok(pow(q.value + mass, 1.0 / r))
}

/// Essential supremum of `|V|` (or `V_+`) by dense sampling of each piece.
pub fn potential_sup(v: &Potential, part: Part) -> Result<f64> {
    if let Potential::Constant { value, .. } = v {
        return Ok(part.apply(*value));
    }
    let radius = v.radius();
    let mut edges = v.breakpoints();
    edges.insert(0, 0.0);
    edges.push(if radius.is_finite() { radius } else { edges.last().copied().unwrap_or(1.0).max(1.0) * 64.0 });
    let mut best = 0.0f64;
    const SAMPLES: usize = 256;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        for i in 0..=SAMPLES {
            // Stay strictly inside the piece.
            let t = (i as f64 + 0.5) / (SAMPLES as f64 + 1.0);
            let x = a + t * (b - a);
            let val = v.value(x)?;
            best = best.max(part.apply(val));
        }
    }
    Ok(best)
}

/// `V = -Δ_p u / |u|^e`, stored as a closed-form potential over `u`.
pub fn potential_from(u: &PiecewiseRadialProfile, p: f64, exponent: f64) -> Result<Potential> {
    potential_from_gradient(u, p, exponent, 0.0)
}

/// `V = -Δ_p u / (|u|^e |u_ρ|^γ)`.
pub fn potential_from_gradient(u: &PiecewiseRadialProfile, p: f64, exponent: f64, grad_exponent: f64) -> Result<Potential> {
    if !(p > 1.0) {
        return Err(Error::config("p", "p must exceed 1"));
    }
    if !(exponent >= 0.0) {
        return Err(Error::config("exponent", "potential exponent must be nonnegative"));
    }
    let n = u.dimension();
    for (i, seg) in u.segments().iter().enumerate() {
        if seg.is_p_harmonic(n, p) {
            continue;
        }
        let hi = if seg.hi.is_finite() { seg.hi } else { seg.lo.max(1.0) * 16.0 };
        for k in 1..8 {
            let rho = seg.lo + (hi - seg.lo) * k as f64 / 8.0;
            let [val, _, _] = seg.jet(rho);
            let lap = seg.p_laplacian(n, p, rho).finite().unwrap_or(f64::NAN);
            if !(val > 0.0) && lap != 0.0 {
                return Err(Error::Construction(alloc::format!(
                    "u = {val} is not positive at ρ = {rho} in segment {i} while Δ_p u = {lap}"
                )));
            }
        }
    }
    Ok(Potential::Profile(ProfilePotential {
        u: u.clone(),
        p,
        u_exponent: exponent,
        grad_exponent,
    }))
}

#[cfg(test)]
mod tests;
