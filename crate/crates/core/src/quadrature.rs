//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Infinite upper limits are mapped to `(0, 1]` by `x = c / u`.
//! The error estimate follows the QUADPACK rescaling.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math::{abs, pow};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            ..Self::default()
        }
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

impl core::ops::Add for Quadrature {
    type Output = Quadrature;
    fn add(self, rhs: Quadrature) -> Quadrature {
        Quadrature {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = abs(res_k);
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (abs(f1) + abs(f2));
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * abs(fc - mean);
    for j in 0..7 {
        res_asc += WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean));
    }
    let result = res_k * half;
    res_abs *= abs(half);
    res_asc *= abs(half);
    let mut err = abs((res_k - res_g) * half);
    if res_asc != 0.0 && err != 0.0 {
        let scale = pow(200.0 * err / res_asc, 1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature::default());
    }
    let (v, e) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total = v;
    let mut total_err = e;
    // Intervals too narrow to split further; their error is frozen.
    let mut frozen_err = 0.0;
    let mut frozen_val = 0.0;
    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * abs(total));
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Divergent {
                lo: a,
                hi: b,
                value: total,
                error: total_err,
            });
        }
        if total_err <= target {
            break;
        }
        if heap.len() >= cfg.max_intervals {
            return Err(Error::Divergent {
                lo: a,
                hi: b,
                value: total,
                error: total_err,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen_err += worst.error;
            frozen_val += worst.value;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        // Resum to avoid drift from repeated subtraction.
        total = frozen_val;
        total_err = frozen_err;
        for piece in heap.iter() {
            total += piece.value;
            total_err += piece.error;
        }
    }
    let mut pieces: alloc::vec::Vec<Piece> = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pieces.iter().fold(frozen_val, |acc, p| acc + p.value);
    let error = pieces.iter().fold(frozen_err, |acc, p| acc + p.error);
    Ok(Quadrature { value, error })
}

/// `∫_a^b f(x) dx` for finite `a` and `b >= a` finite or `+∞`.
///
/// An infinite range is split at `c = max(a, 0) + 1`; the tail is mapped to
/// `(0, 1]` by `x = c/u`, so algebraic decay becomes an endpoint singularity
/// at `u = 0`, where bisection has the full exponent range to work with.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    if b.is_infinite() {
        let c = a.max(0.0) + 1.0;
        let head = adapt(&f, a, c, cfg)?;
        let g = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let y = f(c / u);
            if y == 0.0 {
                0.0
            } else {
                y * c / (u * u)
            }
        };
        let tail = adapt(&g, 0.0, 1.0, cfg).map_err(|e| match e {
            Error::Divergent { value, error, .. } => Error::Divergent {
                lo: a,
                hi: b,
                value,
                error,
            },
            other => other,
        })?;
        Ok(head + tail)
    } else {
        adapt(&f, a, b, cfg)
    }
}
