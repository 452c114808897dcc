//! Thin wrappers over `libm` so the crate stays `no_std`.

use core::f64::consts::PI;

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    libm::pow(x, k as f64)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn signum(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `|x|^{e-1} x`, the odd power map; `phi(x, p)` with exponent `p - 1` is the
/// p-Laplacian flux nonlinearity `|x|^{p-2} x`.
#[inline]
pub fn odd_pow(x: f64, e: f64) -> f64 {
    signum(x) * pow(abs(x), e)
}

/// Surface area of the unit sphere in R^n; `omega(1) = 2` counts the two
/// endpoints of (-1, 1).
pub fn sphere_area(n: u32) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * pow(PI, half) / gamma(half)
}

/// Volume of the unit ball in R^n.
pub fn ball_volume(n: u32) -> f64 {
    sphere_area(n) / n as f64
}

/// Volume of the ball of radius `radius` in R^n.
pub fn ball_measure(n: u32, radius: f64) -> f64 {
    ball_volume(n) * pow(radius, n as f64)
}

/// Radius of the ball with the given measure.
pub fn radius_for_measure(n: u32, measure: f64) -> f64 {
    pow(measure / ball_volume(n), 1.0 / n as f64)
}

/// Hölder conjugate `p' = p/(p-1)`.
#[inline]
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}
