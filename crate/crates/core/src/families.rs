//! Explicit `(u, V)` pairs: the Talenti extremal, its truncation to a ball,
//! the cone-point family for `p > n`, and the small-support families whose
//! potentials have vanishing norm.
//!
//! Each family glues closed-form segments with `C¹` matching and sets
//! `V = -Δ_p u / u^{p-1}`, so `-Δ_p u = V u^{p-1}` holds segment by segment.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{critical_exponent, holder_q, ExponentConfig};
use crate::math::{conjugate, ln, pow, sphere_area};
use crate::optimize::bisect;
use crate::quadrature::QuadConfig;
use crate::radial::{self, Continuity, Part, PiecewiseRadialProfile, Potential, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// The Talenti extremal on all of R^n.
    Talenti,
    /// Talenti on `[0, R)`, linear on `[R, R+1)`, p-harmonic down to zero.
    CriticalSharp { radius: f64 },
    /// `1 - ρ^{(p-n)/(p-1)}` capped by a parabola on `B_ε`.
    ConePoint { eps: f64 },
    /// `ρ^{2-s} - 1` capped on `B_ε`; `||V||_r → 0` for `r < n/p`.
    SmallR { eps: f64, r: f64 },
    /// `-log ρ` capped on `B_ε` for `p = n`; `k` is the log power of `N`.
    LogFamily { eps: f64, k: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Talenti => "talenti",
            Family::CriticalSharp { .. } => "critical_sharp",
            Family::ConePoint { .. } => "cone_point",
            Family::SmallR { .. } => "small_r",
            Family::LogFamily { .. } => "log_family",
        }
    }

    /// The sweep parameter: `R` or `ε`.
    pub fn parameter(&self) -> f64 {
        match self {
            Family::Talenti => f64::INFINITY,
            Family::CriticalSharp { radius } => *radius,
            Family::ConePoint { eps } | Family::SmallR { eps, .. } | Family::LogFamily { eps, .. } => *eps,
        }
    }

    /// Default sweep grid: `R` doubling from 10, `ε` halving from 0.2 (cone
    /// point) or 1/4 (small r), `ε = 10^{-2^j}` for the log family.
    pub fn default_grid(&self) -> Vec<f64> {
        match self {
            Family::Talenti => Vec::new(),
            Family::CriticalSharp { .. } => vec![10.0, 20.0, 40.0, 80.0],
            Family::ConePoint { .. } => vec![0.2, 0.1, 0.05, 0.025],
            Family::SmallR { .. } => (2..=9).map(|i| pow(2.0, -(i as f64))).collect(),
            Family::LogFamily { .. } => vec![1e-2, 1e-4, 1e-8, 1e-16, 1e-32, 1e-64, 1e-128],
        }
    }

    /// The same family at another sweep parameter.
    pub fn with_parameter(&self, value: f64) -> Family {
        match *self {
            Family::Talenti => Family::Talenti,
            Family::CriticalSharp { .. } => Family::CriticalSharp { radius: value },
            Family::ConePoint { .. } => Family::ConePoint { eps: value },
            Family::SmallR { r, .. } => Family::SmallR { eps: value, r },
            Family::LogFamily { k, .. } => Family::LogFamily { eps: value, k },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    /// Exponents the family is built for. For [`Family::SmallR`] the pair
    /// `(q, r)` deliberately lies beyond the critical exponent.
    pub config: ExponentConfig,
}

fn unchecked(n: u32, p: f64, q: f64, r: f64) -> ExponentConfig {
    ExponentConfig {
        n,
        p,
        q,
        r,
        beta: p - 2.0,
        gamma: 0.0,
    }
}

const LOG_FAMILY_CEIL: f64 = 1e300;

fn require_eps(eps: f64, upper: f64) -> Result<()> {
    if eps > 0.0 && eps < upper {
        Ok(())
    } else {
        Err(Error::config("eps", format!("ε = {eps} must lie in (0, {upper})")))
    }
}

fn require_dim(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::config("n", "dimension must be at least 1"))
    }
}

impl FamilySpec {
    pub fn talenti(n: u32, p: f64) -> Result<Self> {
        let config = ExponentConfig::critical(n, p)?;
        if !(p < n as f64) {
            return Err(Error::config("p", "the Talenti family needs 1 < p < n"));
        }
        Ok(FamilySpec {
            family: Family::Talenti,
            config,
        })
    }

    pub fn critical_sharp(n: u32, p: f64, radius: f64) -> Result<Self> {
        let mut spec = Self::talenti(n, p)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::config("R", format!("R = {radius} must be positive and finite")));
        }
        spec.family = Family::CriticalSharp { radius };
        Ok(spec)
    }

    pub fn cone_point(n: u32, p: f64, eps: f64) -> Result<Self> {
        require_dim(n)?;
        if !(p > n as f64 && p.is_finite()) {
            return Err(Error::config("p", "the cone-point family needs p > n"));
        }
        require_eps(eps, 1.0)?;
        Ok(FamilySpec {
            family: Family::ConePoint { eps },
            config: unchecked(n, p, f64::INFINITY, 1.0),
        })
    }

    pub fn small_r(n: u32, p: f64, eps: f64, r: f64) -> Result<Self> {
        require_dim(n)?;
        if !(p > 1.0 && p < n as f64) {
            return Err(Error::config("p", "the small-r family needs 1 < p < n"));
        }
        if !(r >= 1.0 && r < n as f64 / p) {
            return Err(Error::config("r", format!("r = {r} must lie in [1, n/p = {})", n as f64 / p)));
        }
        require_eps(eps, 0.5)?;
        Ok(FamilySpec {
            family: Family::SmallR { eps, r },
            config: unchecked(n, p, holder_q(p, r), r),
        })
    }

    pub fn log_family(n: u32, eps: f64, k: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::config("n", "the log family needs n >= 2"));
        }
        if !(k >= 0.0 && k < n as f64 - 1.0) {
            return Err(Error::config("k", format!("k = {k} must lie in [0, n - 1)")));
        }
        require_eps(eps, 0.5)?;
        // the core potential is of size ε^{-n}
        if !(pow(eps, -(n as f64)) < LOG_FAMILY_CEIL) {
            return Err(Error::config("eps", format!("ε = {eps} overflows the core potential for n = {n}")));
        }
        let p = n as f64;
        Ok(FamilySpec {
            family: Family::LogFamily { eps, k },
            config: unchecked(n, p, f64::INFINITY, 1.0),
        })
    }

    /// The family's default grid, less the points this spec cannot build.
    pub fn default_grid(&self) -> Vec<f64> {
        self.family
            .default_grid()
            .into_iter()
            .filter(|&x| self.with_parameter(x).is_ok())
            .collect()
    }

    /// Same spec at another sweep parameter, revalidated.
    pub fn with_parameter(&self, value: f64) -> Result<Self> {
        let (n, p) = (self.config.n, self.config.p);
        match self.family.with_parameter(value) {
            Family::Talenti => Self::talenti(n, p),
            Family::CriticalSharp { radius } => Self::critical_sharp(n, p, radius),
            Family::ConePoint { eps } => Self::cone_point(n, p, eps),
            Family::SmallR { eps, r } => Self::small_r(n, p, eps, r),
            Family::LogFamily { eps, k } => Self::log_family(n, eps, k),
        }
    }

    pub fn build(&self, cfg: &QuadConfig) -> Result<FamilyOutput> {
        let (n, p) = (self.config.n, self.config.p);
        let mut out = match self.family {
            Family::Talenti => talenti_pair(n, p, cfg)?,
            Family::CriticalSharp { radius } => critical_sharp_family(n, p, radius)?,
            Family::ConePoint { eps } => cone_point_family(n, p, eps)?,
            Family::SmallR { eps, r } => small_r_family(n, p, eps, r, cfg)?,
            Family::LogFamily { eps, k } => {
                let mut o = log_family(n, eps)?;
                o.coefficients.insert("k".into(), k);
                o
            }
        };
        out.spec = *self;
        Ok(out)
    }
}

/// A constructed `(u, V)` pair with its closed-form coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyOutput {
    pub spec: FamilySpec,
    pub u: PiecewiseRadialProfile,
    pub v: Potential,
    pub domain_radius: f64,
    pub coefficients: BTreeMap<String, f64>,
}

impl FamilyOutput {
    fn new(spec: FamilySpec, u: PiecewiseRadialProfile, coefficients: &[(&str, f64)]) -> Result<Self> {
        let v = radial::potential_from(&u, spec.config.p, spec.config.p - 1.0)?;
        Ok(FamilyOutput {
            spec,
            domain_radius: u.radius(),
            u,
            v,
            coefficients: coefficients.iter().map(|(k, x)| (String::from(*k), *x)).collect(),
        })
    }

    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.coefficients.get(name).copied()
    }

    /// Value and slope jumps at the interior breakpoints.
    pub fn audit(&self) -> Continuity {
        self.u.continuity()
    }
}

/// `v = (1 + ρ^{p'})^{(p-n)/p}` on R^n with `V_v = -Δ_p v / v^{p-1}`; reports
/// `K = ||v||_{q̄} / ||∇v||_p` under the key `"K"`.
pub fn talenti_pair(n: u32, p: f64, cfg: &QuadConfig) -> Result<FamilyOutput> {
    let spec = FamilySpec::talenti(n, p)?;
    let u = PiecewiseRadialProfile::new(n, vec![Segment::talenti(n, p, 0.0, f64::INFINITY)])?;
    let qbar = critical_exponent(n, p);
    let k = radial::lp_norm(&u, qbar, cfg)? / radial::grad_lp_norm(&u, p, cfg)?;
    FamilyOutput::new(spec, u, &[("p_prime", conjugate(p)), ("q_bar", qbar), ("K", k)])
}

/// Talenti on `[0, R)`, `a - bρ` on `[R, R+1)`, `cρ^{2-s} + d` on `[R+1, R̂)`.
///
/// `b` and `c` are the closed forms that match slopes; `d` comes from exact
/// value continuity at `R + 1` (the asymptotic `d = -b` is kept as
/// `"d_printed"`), and `R̂ = (c / -d)^{1/(s-2)}` is the root of the last piece.
pub fn critical_sharp_family(n: u32, p: f64, radius: f64) -> Result<FamilyOutput> {
    let spec = FamilySpec::critical_sharp(n, p, radius)?;
    let nf = n as f64;
    let pp = conjugate(p);
    let s = (nf - 1.0) / (p - 1.0) + 1.0;
    let r = radius;
    let tail = pow(r, pp - 1.0) * pow(1.0 + pow(r, pp), -nf / p);
    let b = (nf - p) / (p - 1.0) * tail;
    let v_r = pow(1.0 + pow(r, pp), (p - nf) / p);
    let a = v_r + b * r;
    let u1 = a - b * (r + 1.0);
    if !(u1 > 0.0) {
        return Err(Error::RadiusTooSmall { radius: r, value: u1 });
    }
    let c = pow(r + 1.0, s - 1.0) * tail;
    let d = u1 - c * pow(r + 1.0, 2.0 - s);
    if !(d < 0.0) {
        return Err(Error::Construction(format!("harmonic tail constant d = {d} is not negative")));
    }
    let r_hat = pow(c / -d, 1.0 / (s - 2.0));
    let root = |x: f64| c * pow(x, 2.0 - s) + d;
    let r_hat_bisect = bisect(root, r + 1.0, 2.0 * r_hat, 1e-14 * r_hat).unwrap_or(f64::NAN);
    let u = PiecewiseRadialProfile::new(
        n,
        vec![
            Segment::talenti(n, p, 0.0, r),
            Segment::power_affine(a, -b, 1.0, r, r + 1.0),
            Segment::harmonic(c, d, s, r + 1.0, r_hat),
        ],
    )?;
    FamilyOutput::new(
        spec,
        u,
        &[
            ("R", r),
            ("a", a),
            ("b", b),
            ("c", c),
            ("d", d),
            ("d_printed", -b),
            ("R_hat", r_hat),
            ("R_hat_bisect", r_hat_bisect),
            ("s", s),
            ("p_prime", pp),
        ],
    )
}

/// `u_* = 1 - ρ^σ`, `σ = (p-n)/(p-1)`, on `[ε, 1)` and `a - bρ²` on `[0, ε)`.
/// Also reports `K_{∞,p} = (ω_n σ^{p-1})^{-1/p}` for the unit ball.
pub fn cone_point_family(n: u32, p: f64, eps: f64) -> Result<FamilyOutput> {
    let spec = FamilySpec::cone_point(n, p, eps)?;
    let nf = n as f64;
    let sigma = (p - nf) / (p - 1.0);
    let s = 2.0 - sigma;
    let b = sigma * pow(eps, sigma - 2.0) / 2.0;
    let a = 1.0 - pow(eps, sigma) + b * eps * eps;
    let u = PiecewiseRadialProfile::new(
        n,
        vec![Segment::power_affine(a, -b, 2.0, 0.0, eps), Segment::harmonic(-1.0, 1.0, s, eps, 1.0)],
    )?;
    let k_inf = pow(sphere_area(n) * pow(sigma, p - 1.0), -1.0 / p);
    FamilyOutput::new(
        spec,
        u,
        &[("eps", eps), ("a", a), ("b", b), ("sigma", sigma), ("s", s), ("K_inf_p", k_inf)],
    )
}

/// `a - bρ^{p'}` on `[0, ε)` and `ρ^{2-s} - 1` on `[ε, 1)`; reports `||V||_r`
/// under `"norm_r"`.
pub fn small_r_family(n: u32, p: f64, eps: f64, r: f64, cfg: &QuadConfig) -> Result<FamilyOutput> {
    let spec = FamilySpec::small_r(n, p, eps, r)?;
    let nf = n as f64;
    let pp = conjugate(p);
    let s = (nf - 1.0) / (p - 1.0) + 1.0;
    let b = (nf - p) / p * pow(eps, -nf / (p - 1.0));
    let a = nf / p * pow(eps, 2.0 - s) - 1.0;
    let u = PiecewiseRadialProfile::new(
        n,
        vec![Segment::power_affine(a, -b, pp, 0.0, eps), Segment::harmonic(1.0, -1.0, s, eps, 1.0)],
    )?;
    let mut out = FamilyOutput::new(spec, u, &[("eps", eps), ("a", a), ("b", b), ("s", s), ("p_prime", pp), ("r", r)])?;
    let norm = radial::potential_norm(&out.v, r, Part::Full, cfg)?;
    out.coefficients.insert("norm_r".into(), norm);
    Ok(out)
}

/// `a - bρ^{n/(n-1)}` on `[0, ε)` and `-log ρ` on `[ε, 1)`, with `p = n`.
pub fn log_family(n: u32, eps: f64) -> Result<FamilyOutput> {
    let spec = FamilySpec::log_family(n, eps, 0.0)?;
    let nf = n as f64;
    let pp = nf / (nf - 1.0);
    let b = (nf - 1.0) / nf * pow(eps, -pp);
    let a = (nf - 1.0) / nf - ln(eps);
    let u = PiecewiseRadialProfile::new(
        n,
        vec![Segment::power_affine(a, -b, pp, 0.0, eps), Segment::log_drop(0.0, eps, 1.0)],
    )?;
    FamilyOutput::new(spec, u, &[("eps", eps), ("a", a), ("b", b), ("p_prime", pp)])
}
