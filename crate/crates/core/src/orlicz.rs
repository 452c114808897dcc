//! The complementary Orlicz pair `(M, N)` built for the Moser–Trudinger
//! inequality, the Luxemburg-type norm
//! `||V||_N = inf_λ { λ + λ/(K_M |D|) ∫ N(|V|/λ) dx }`, and the
//! Moser–Trudinger functional `∫ M(|u|^n / ||∇u||_n^n) dx / |D|`.
//!
//! With `M(t) = ∫_0^{αt} (e^{s^{1/(n-1)}} - 1) ds` the complement is
//! `N(s) = ∫_0^{s/α} log^{n-1}(t + 1) dt`, which has the closed form
//! `(1 + x) P_{n-1}(log(1 + x)) + (-1)^n (n-1)!` with `x = s/α`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{abs, expm1, exp, floor, ln, ln1p, pow, sphere_area, ball_measure};
use crate::optimize::golden_section;
use crate::quadrature::{integrate, QuadConfig};
use crate::radial::{self, PiecewiseRadialProfile, Potential, Part, Segment};

/// `α_n = (n^{n-1} ω_n)^{1/n}`.
pub fn alpha_n(n: u32) -> f64 {
    pow(critical_alpha(n), 1.0 / n as f64)
}

/// `α_n^n = n^{n-1} ω_n`, the upper limit for `α`.
pub fn critical_alpha(n: u32) -> f64 {
    pow(n as f64, n as f64 - 1.0) * sphere_area(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrliczVariant {
    /// `M(t) = ∫_0^{αt} (e^{s^{1/(n-1)}} - 1) ds`.
    Standard,
    /// `M̃(t) = e^{(α_n^n t)^{1/(n-1)}} - Σ_{k<n} (α_n^n t)^{k/(n-1)}/k!`.
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrliczPair {
    pub n: u32,
    pub alpha: f64,
    pub variant: OrliczVariant,
    /// Power `k` of the logarithm in `N(s) = ∫_0^{s/α} log^k(t+1) dt`;
    /// `n - 1` for the complementary pair.
    pub log_power: f64,
}

fn inner_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        max_intervals: 2000,
    }
}

impl OrliczPair {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::config("n", "the Orlicz pair needs n >= 2"));
        }
        let top = critical_alpha(n);
        if !(alpha > 0.0 && alpha < top) {
            return Err(Error::config(
                "alpha",
                format!("α = {alpha} must lie in (0, α_n^n = {top})"),
            ));
        }
        Ok(OrliczPair {
            n,
            alpha,
            variant: OrliczVariant::Standard,
            log_power: n as f64 - 1.0,
        })
    }

    /// `α = α_n^n / 2`.
    pub fn with_default_alpha(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::config("n", "the Orlicz pair needs n >= 2"));
        }
        Self::new(n, critical_alpha(n) / 2.0)
    }

    /// The alternate function `M̃`, whose parameter is pinned at `α_n^n`.
    pub fn alternate(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::config("n", "the Orlicz pair needs n >= 2"));
        }
        Ok(OrliczPair {
            n,
            alpha: critical_alpha(n),
            variant: OrliczVariant::Alternate,
            log_power: n as f64 - 1.0,
        })
    }

    /// Replace `N` by `∫_0^{s/α} log^k(t+1) dt`. For `k ≠ n - 1` the pair is
    /// no longer complementary; only the norm uses it.
    pub fn with_log_power(mut self, k: f64) -> Result<Self> {
        if !(k >= 0.0) {
            return Err(Error::config("k", format!("log power k = {k} must be >= 0")));
        }
        self.log_power = k;
        Ok(self)
    }

    fn exponent_root(&self, t: f64) -> f64 {
        // (αt)^{1/(n-1)}
        pow(self.alpha * t, 1.0 / (self.n as f64 - 1.0))
    }

    /// `M(t)` (or `M̃(t)`); `+∞` on overflow, see [`OrliczPair::ln_m`].
    pub fn m(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let x = self.exponent_root(t);
        if x > 700.0 {
            return f64::INFINITY;
        }
        match self.variant {
            OrliczVariant::Alternate => exp_tail(x, self.n as usize),
            OrliczVariant::Standard => {
                if self.n == 2 {
                    exp_tail(x, 2)
                } else {
                    let m = self.n as f64 - 2.0;
                    let integrand = |w: f64| expm1(w) * pow(w, m);
                    let q = integrate(integrand, 0.0, x, &inner_cfg()).map(|q| q.value).unwrap_or(f64::NAN);
                    (self.n as f64 - 1.0) * q
                }
            }
        }
    }

    /// `ln M(t)`, finite for arguments where `M` itself overflows.
    pub fn ln_m(&self, t: f64) -> f64 {
        let direct = self.m(t);
        if direct.is_finite() {
            return ln(direct);
        }
        let x = self.exponent_root(t);
        let m = self.n as usize - 2;
        match self.variant {
            OrliczVariant::Alternate => x,
            OrliczVariant::Standard => {
                // ∫_0^x e^w w^m dw = e^x Σ_j (-1)^j m!/(m-j)! x^{m-j} + O(1)
                let mut sum = 0.0;
                let mut coeff = 1.0;
                for j in 0..=m {
                    sum += coeff * pow(x, (m - j) as f64);
                    coeff *= -((m - j) as f64);
                }
                ln(self.n as f64 - 1.0) + x + ln(sum)
            }
        }
    }

    /// `M'(t)`.
    pub fn m_prime(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let x = self.exponent_root(t);
        match self.variant {
            OrliczVariant::Standard => self.alpha * expm1(x),
            OrliczVariant::Alternate => {
                // (e^x - Σ_{k<n-1} x^k/k!) · x / ((n-1) t)
                let n = self.n as usize;
                exp_tail(x, n - 1) * x / ((n as f64 - 1.0) * t)
            }
        }
    }

    /// `N(s)`. Closed polynomial form for integer log powers, quadrature
    /// otherwise. NaN for the alternate variant with `n >= 3`, whose
    /// complement has no closed form.
    pub fn n_eval(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if self.variant == OrliczVariant::Alternate && self.n > 2 {
            return f64::NAN;
        }
        let x = s / self.alpha;
        let k = self.log_power;
        if k == floor(k) {
            log_power_integral(x, k as u32)
        } else {
            integrate(|t| pow(ln1p(t), k), 0.0, x, &inner_cfg())
                .map(|q| q.value)
                .unwrap_or(f64::NAN)
        }
    }

    fn require_complement(&self) -> Result<()> {
        if self.variant == OrliczVariant::Alternate && self.n > 2 {
            return Err(Error::Unsupported(
                "the complement of the alternate Orlicz function is only available for n = 2".into(),
            ));
        }
        Ok(())
    }
}

/// `e^x - Σ_{k<m} x^k/k!`, by its positive tail series for small `x`.
fn exp_tail(x: f64, m: usize) -> f64 {
    if x < 1.0 {
        let mut term = 1.0;
        for k in 1..=m {
            term *= x / k as f64;
        }
        let mut sum = 0.0f64;
        let mut k = m;
        loop {
            sum += term;
            k += 1;
            term *= x / k as f64;
            if term <= 1e-18 * sum || k > m + 60 {
                break;
            }
        }
        sum
    } else {
        let mut partial = 0.0;
        let mut term = 1.0;
        for k in 0..m {
            partial += term;
            term *= x / (k + 1) as f64;
        }
        exp(x) - partial
    }
}

/// `P_m(x) = Σ_{k=0}^m (-1)^k m!/(m-k)! x^{m-k}`.
pub fn poly_p(m: u32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // (-1)^k m!/(m-k)!
    for k in 0..=m {
        sum += coeff * pow(x, (m - k) as f64);
        coeff *= -((m - k) as f64);
    }
    sum
}

/// `∫_0^x log^k(1 + t) dt` for integer `k`.
fn log_power_integral(x: f64, k: u32) -> f64 {
    let l = ln1p(x);
    if l < 1.0 {
        // ∫_0^L y^k e^y dy = Σ_j L^{k+j+1} / (j! (k+j+1)); every term positive.
        let mut sum = 0.0;
        let mut lj = pow(l, k as f64 + 1.0); // L^{k+j+1}/j!
        let mut j = 0u32;
        loop {
            let term = lj / (k + j + 1) as f64;
            sum += term;
            if term <= 1e-18 * sum || j > 200 {
                break;
            }
            j += 1;
            lj *= l / j as f64;
        }
        sum
    } else {
        let kfact: f64 = (1..=k).map(|i| i as f64).product();
        let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
        (1.0 + x) * poly_p(k, l) + sign * kfact
    }
}

/// `M(U) + N(v) - Uv`, nonnegative by Young's inequality.
pub fn young_gap(pair: &OrliczPair, u: f64, v: f64) -> Result<f64> {
    pair.require_complement()?;
    if !(u >= 0.0 && v >= 0.0 && u.is_finite() && v.is_finite()) {
        return Err(Error::config("U, v", "Young gap needs finite nonnegative arguments"));
    }
    Ok(pair.m(u) + pair.n_eval(v) - u * v)
}

/// Output of [`luxemburg_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuxemburgResult {
    pub norm: f64,
    /// Minimizing `λ`; 0 when the infimum is approached as `λ → 0`.
    pub lambda: f64,
    /// `F(λ) = λ ∫ N(V/λ) dx` at the minimizer.
    pub f_lambda: f64,
    pub k_m: f64,
    pub measure: f64,
}

const LAMBDA_FLOOR: f64 = 1e-14;
const LAMBDA_CEIL: f64 = 1e14;

/// `F(λ) = λ ∫_D N(V_part / λ) dx`.
pub fn f_lambda(pair: &OrliczPair, v: &Potential, part: Part, lambda: f64, cfg: &QuadConfig) -> Result<f64> {
    if v.atomic_mass() != 0.0 {
        return Err(Error::NotInClass("atomic potentials are not in L log L".into()));
    }
    let q = radial::potential_integral(
        v,
        |x, _| {
            let s = match part {
                Part::Full => abs(x),
                Part::Positive => x.max(0.0),
            };
            pair.n_eval(s / lambda)
        },
        cfg,
    )?;
    Ok(lambda * q.value)
}

/// `||V||_N` by golden-section minimization over `λ` after growing a bracket
/// geometrically (factor 4) from `λ = 1`.
pub fn luxemburg_norm(
    pair: &OrliczPair,
    v: &Potential,
    k_m: f64,
    measure: f64,
    cfg: &QuadConfig,
) -> Result<LuxemburgResult> {
    luxemburg_norm_part(pair, v, Part::Full, k_m, measure, cfg)
}

pub fn luxemburg_norm_part(
    pair: &OrliczPair,
    v: &Potential,
    part: Part,
    k_m: f64,
    measure: f64,
    cfg: &QuadConfig,
) -> Result<LuxemburgResult> {
    pair.require_complement()?;
    if !(k_m > 0.0) {
        return Err(Error::config("k_m", "K_M must be positive"));
    }
    if !(measure > 0.0) {
        return Err(Error::config("measure", "|D| must be positive"));
    }
    if v.atomic_mass() != 0.0 {
        return Err(Error::NotInClass("atomic potentials are not in L log L".into()));
    }
    let scale = k_m * measure;
    let mass = radial::potential_integral(
        v,
        |x, _| match part {
            Part::Full => abs(x),
            Part::Positive => x.max(0.0),
        },
        cfg,
    )?;
    if mass.value == 0.0 {
        return Ok(LuxemburgResult {
            norm: 0.0,
            lambda: 0.0,
            f_lambda: 0.0,
            k_m,
            measure,
        });
    }
    let objective = |lambda: f64| -> f64 {
        match f_lambda(pair, v, part, lambda, cfg) {
            Ok(f) if f.is_finite() => lambda + f / scale,
            _ => f64::INFINITY,
        }
    };

    let f1 = objective(1.0);
    let (lo, hi) = {
        let up = objective(4.0);
        if up < f1 {
            let (mut prev, mut cur, mut fcur) = (1.0, 4.0, up);
            loop {
                let next = cur * 4.0;
                let fnext = objective(next);
                if fnext >= fcur || next > LAMBDA_CEIL {
                    break (prev, next);
                }
                prev = cur;
                cur = next;
                fcur = fnext;
            }
        } else {
            let (mut cur, mut fcur, mut upper) = (1.0, f1, 4.0);
            loop {
                let next = cur / 4.0;
                if next < LAMBDA_FLOOR {
                    // Still decreasing: the infimum is the λ → 0 limit.
                    let f = f_lambda(pair, v, part, cur, cfg)?;
                    if !f.is_finite() {
                        return Err(Error::NotInClass("∫ N(|V|/λ) diverges for every λ tried".into()));
                    }
                    return Ok(LuxemburgResult {
                        norm: cur + f / scale,
                        lambda: 0.0,
                        f_lambda: f,
                        k_m,
                        measure,
                    });
                }
                let fnext = objective(next);
                if fnext >= fcur {
                    break (next, upper);
                }
                upper = cur;
                cur = next;
                fcur = fnext;
            }
        }
    };
    if !objective(0.5 * (lo + hi)).is_finite() && !f1.is_finite() {
        return Err(Error::NotInClass("∫ N(|V|/λ) diverges for every λ tried".into()));
    }
    let (lambda, norm) = golden_section(objective, lo, hi, 1e-10, 0.0);
    if !norm.is_finite() {
        return Err(Error::NotInClass("∫ N(|V|/λ) diverges near the minimizer".into()));
    }
    let f = f_lambda(pair, v, part, lambda, cfg)?;
    Ok(LuxemburgResult {
        norm,
        lambda,
        f_lambda: f,
        k_m,
        measure,
    })
}

/// `∫_D M(|u|^n / ||∇u||_n^n) dx / |D|`.
pub fn mt_functional(u: &PiecewiseRadialProfile, pair: &OrliczPair, cfg: &QuadConfig) -> Result<f64> {
    let n = pair.n;
    if u.dimension() != n {
        return Err(Error::config("n", "profile and Orlicz pair dimensions differ"));
    }
    let grad = radial::grad_integral(u, n as f64, cfg)?.value;
    if !(grad > 0.0) {
        return Err(Error::Degenerate("||∇u||_n = 0".into()));
    }
    let measure = ball_measure(n, u.radius());
    let q = radial::profile_integral(u, |_, j| pair.m(pow(abs(j[0]), n as f64) / grad), cfg)?;
    Ok(q.value / measure)
}

/// The truncated Moser profile `min(ln(R/ρ), L)` on `B_R`.
pub fn moser_profile(n: u32, radius: f64, level: f64) -> Result<PiecewiseRadialProfile> {
    if !(level > 0.0) {
        return Err(Error::config("L", "truncation level must be positive"));
    }
    let knee = radius * exp(-level);
    PiecewiseRadialProfile::new(
        n,
        vec![
            Segment::power_affine(level, 0.0, 1.0, 0.0, knee),
            Segment::log_drop(ln(radius), knee, radius),
        ],
    )
}

/// Truncation levels `L = h, 2h, …, 12` with `h = 2^{-refinement}`; each
/// refinement contains the previous grid.
pub fn moser_grid(refinement: u32) -> Vec<f64> {
    let h = pow(2.0, -(refinement as f64));
    let count = (12.0 / h) as usize;
    (1..=count).map(|i| i as f64 * h).collect()
}

/// Lower-bound estimate of `K_M`: the best Moser–Trudinger functional
/// value over a trial family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmEstimate {
    pub value: f64,
    pub best_level: f64,
    /// Always true: the estimate is a supremum over a finite trial set.
    pub lower_bound: bool,
    pub evaluations: Vec<(f64, f64)>,
}

pub fn estimate_k_m(radius: f64, pair: &OrliczPair, levels: &[f64], cfg: &QuadConfig) -> Result<KmEstimate> {
    if levels.is_empty() {
        return Err(Error::config("levels", "trial grid is empty"));
    }
    let mut evaluations = Vec::with_capacity(levels.len());
    let mut best = (f64::NEG_INFINITY, levels[0]);
    for &level in levels {
        let u = moser_profile(pair.n, radius, level)?;
        let value = mt_functional(&u, pair, cfg)?;
        if !value.is_finite() {
            return Err(Error::Divergent {
                lo: 0.0,
                hi: radius,
                value,
                error: f64::INFINITY,
            });
        }
        evaluations.push((level, value));
        if value > best.0 {
            best = (value, level);
        }
    }
    Ok(KmEstimate {
        value: best.0,
        best_level: best.1,
        lower_bound: true,
        evaluations,
    })
}

/// The Euler–Lagrange construction for the Moser–Trudinger functional
/// applied to an arbitrary nonnegative profile.
#[derive(Debug, Clone, PartialEq)]
pub struct OrliczEquality {
    /// `u / ||∇u||_n`.
    pub u: PiecewiseRadialProfile,
    /// `V = M'(u^n) / ω`.
    pub v: Potential,
    pub omega: f64,
    /// `λ = 1/ω`.
    pub lambda: f64,
    /// `∫ M(u^n) dx`.
    pub int_m: f64,
    /// `F(λ) = λ ∫ N(V/λ) dx`.
    pub f_lambda: f64,
    /// `|λ ∫ M(u^n) + F(λ) - 1|`.
    pub residual: f64,
}

pub fn euler_lagrange_pair(u: &PiecewiseRadialProfile, pair: &OrliczPair, cfg: &QuadConfig) -> Result<OrliczEquality> {
    pair.require_complement()?;
    let n = pair.n;
    if u.dimension() != n {
        return Err(Error::config("n", "profile and Orlicz pair dimensions differ"));
    }
    let grad = radial::grad_lp_norm(u, n as f64, cfg)?;
    if !(grad > 0.0) {
        return Err(Error::Degenerate("||∇u||_n = 0".into()));
    }
    let un = u.scaled(1.0 / grad);
    let big_u = |j: [f64; 3]| pow(abs(j[0]), n as f64);
    let omega = radial::profile_integral(&un, |_, j| {
        let uu = big_u(j);
        pair.m_prime(uu) * uu
    }, cfg)?
    .value;
    if !(omega > 0.0) {
        return Err(Error::Degenerate("ω = ∫ M'(u^n) u^n dx vanishes".into()));
    }
    let lambda = 1.0 / omega;
    let int_m = radial::profile_integral(&un, |_, j| pair.m(big_u(j)), cfg)?.value;
    // V/λ = M'(U), so F(λ) = λ ∫ N(M'(U)).
    let int_n = radial::profile_integral(&un, |_, j| pair.n_eval(pair.m_prime(big_u(j))), cfg)?.value;
    let f_lambda = lambda * int_n;
    let residual = abs(lambda * int_m + f_lambda - 1.0);
    let v = Potential::OrliczOf {
        u: un.clone(),
        pair: *pair,
        scale: lambda,
    };
    Ok(OrliczEquality {
        u: un,
        v,
        omega,
        lambda,
        int_m,
        f_lambda,
        residual,
    })
}

/// Residual of the equality identity `λ ∫ M(u^n) + F(λ) = 1` for the
/// Euler–Lagrange potential of `u`; pure quadrature error for any admissible `u`.
pub fn equality_identity_check(u: &PiecewiseRadialProfile, pair: &OrliczPair, cfg: &QuadConfig) -> Result<f64> {
    Ok(euler_lagrange_pair(u, pair, cfg)?.residual)
}

#[cfg(test)]
mod tests;
