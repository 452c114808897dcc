use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use super::profile::PiecewiseRadialProfile;
use super::segment::PLapValue;
use crate::error::{Error, Result};
use crate::math::{abs, pow};
use crate::orlicz::OrliczPair;

/// `V = -Δ_p u / (|u|^e |u_ρ|^γ)`, evaluated from the closed-form segments of `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePotential {
    pub u: PiecewiseRadialProfile,
    pub p: f64,
    pub u_exponent: f64,
    pub grad_exponent: f64,
}

impl ProfilePotential {
    pub fn value(&self, rho: f64) -> Result<f64> {
        let seg = self.u.segment_at(rho)?;
        let n = self.u.dimension();
        if seg.is_p_harmonic(n, self.p) && rho > 0.0 {
            return Ok(0.0);
        }
        let lap = match seg.p_laplacian(n, self.p, rho) {
            PLapValue::Finite(v) => v,
            PLapValue::Singular => {
                return Err(Error::Degenerate(format!("p-Laplacian singular at ρ = {rho}")));
            }
        };
        if lap == 0.0 {
            return Ok(0.0);
        }
        let [u, du, _] = seg.jet(rho);
        let mut denom = pow(abs(u), self.u_exponent);
        if self.grad_exponent != 0.0 {
            denom *= pow(abs(du), self.grad_exponent);
        }
        Ok(-lap / denom)
    }
}

/// A radial potential on a ball (or R^n).
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// Built from a profile by the equation it should satisfy.
    Profile(ProfilePotential),
    /// `coeff · |u|^exponent`; the Euler–Lagrange potentials of Sobolev extremals.
    PowerOf {
        u: PiecewiseRadialProfile,
        coeff: f64,
        exponent: f64,
    },
    /// `scale · M'(|u|^n)`; the Moser–Trudinger Euler–Lagrange potential.
    OrliczOf {
        u: PiecewiseRadialProfile,
        pair: OrliczPair,
        scale: f64,
    },
    Constant { n: u32, radius: f64, value: f64 },
    /// `mass · δ_0`.
    AtomicAtOrigin { n: u32, radius: f64, mass: f64 },
    /// `base + shift`.
    Shifted { base: Box<Potential>, shift: f64 },
}

impl Potential {
    pub fn zero(n: u32, radius: f64) -> Self {
        Potential::Constant { n, radius, value: 0.0 }
    }

    pub fn atomic(n: u32, radius: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::config("mass", "atomic mass must be positive"));
        }
        Ok(Potential::AtomicAtOrigin { n, radius, mass })
    }

    pub fn shifted(self, shift: f64) -> Self {
        Potential::Shifted {
            base: Box::new(self),
            shift,
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Potential::Profile(pp) => pp.u.dimension(),
            Potential::PowerOf { u, .. } | Potential::OrliczOf { u, .. } => u.dimension(),
            Potential::Constant { n, .. } | Potential::AtomicAtOrigin { n, .. } => *n,
            Potential::Shifted { base, .. } => base.dimension(),
        }
    }

    /// Radius of the ball the potential lives on.
    pub fn radius(&self) -> f64 {
        match self {
            Potential::Profile(pp) => pp.u.radius(),
            Potential::PowerOf { u, .. } | Potential::OrliczOf { u, .. } => u.radius(),
            Potential::Constant { radius, .. } | Potential::AtomicAtOrigin { radius, .. } => *radius,
            Potential::Shifted { base, .. } => base.radius(),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Potential::Profile(pp) => pp.u.breakpoints(),
            Potential::PowerOf { u, .. } | Potential::OrliczOf { u, .. } => u.breakpoints(),
            Potential::Constant { .. } | Potential::AtomicAtOrigin { .. } => Vec::new(),
            Potential::Shifted { base, .. } => base.breakpoints(),
        }
    }

    /// Pure point mass with no density part.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Potential::AtomicAtOrigin { .. })
    }

    pub fn has_density(&self) -> bool {
        match self {
            Potential::AtomicAtOrigin { .. } => false,
            Potential::Shifted { base, shift } => base.has_density() || *shift != 0.0,
            _ => true,
        }
    }

    /// Atomic mass carried at the origin (0 for absolutely continuous potentials).
    pub fn atomic_mass(&self) -> f64 {
        match self {
            Potential::AtomicAtOrigin { mass, .. } => *mass,
            Potential::Shifted { base, .. } => base.atomic_mass(),
            _ => 0.0,
        }
    }

    /// Pointwise density. Atomic potentials have none.
    pub fn value(&self, rho: f64) -> Result<f64> {
        match self {
            Potential::Profile(pp) => pp.value(rho),
            Potential::PowerOf { u, coeff, exponent } => {
                let v = u.eval(rho)?;
                Ok(coeff * pow(abs(v), *exponent))
            }
            Potential::OrliczOf { u, pair, scale } => {
                let v = u.eval(rho)?;
                Ok(scale * pair.m_prime(pow(abs(v), u.dimension() as f64)))
            }
            Potential::Constant { radius, value, .. } => {
                if rho < 0.0 || rho >= *radius {
                    Err(Error::Domain { rho, radius: *radius })
                } else {
                    Ok(*value)
                }
            }
            Potential::AtomicAtOrigin { .. } => {
                Err(Error::Unsupported("atomic potentials have no pointwise density".into()))
            }
            Potential::Shifted { base, shift } => {
                if base.is_atomic() {
                    Ok(*shift)
                } else {
                    Ok(base.value(rho)? + shift)
                }
            }
        }
    }

    /// Pointwise density or NaN; for use inside quadrature closures.
    pub(crate) fn density(&self, rho: f64) -> f64 {
        self.value(rho).unwrap_or(f64::NAN)
    }
}
