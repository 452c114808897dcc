use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::math::{abs, conjugate, ln, odd_pow, pow};

/// Closed-form radial building blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// `a + b ρ^γ`.
    PowerAffine { a: f64, b: f64, gamma: f64 },
    /// `(1 + (ρ/width)^{p'})^{(p-n)/p}`, `p' = p/(p-1)`; the critical
    /// Sobolev extremal on R^n when `width = 1`.
    Talenti { n: u32, p: f64, width: f64 },
    /// `offset - ln ρ`.
    LogDrop { offset: f64 },
    /// `c ρ^{2-s} + d`; p-harmonic when `s = (n-1)/(p-1) + 1`.
    Harmonic { c: f64, d: f64, s: f64 },
    /// Dense quintic Hermite data produced by the shooting solver. Only
    /// [`crate::sobolev`] builds these.
    #[serde(skip)]
    Sampled(Arc<SampledData>),
}

/// Node values, slopes and curvatures for quintic Hermite interpolation.
/// Values are stored as offsets from `base`, which keeps full relative
/// precision where the function is nearly constant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampledData {
    pub(crate) base: f64,
    pub(crate) rho: Vec<f64>,
    pub(crate) value: Vec<f64>,
    pub(crate) slope: Vec<f64>,
    pub(crate) curvature: Vec<f64>,
}

impl SampledData {
    pub(crate) fn new(base: f64, rho: Vec<f64>, value: Vec<f64>, slope: Vec<f64>, curvature: Vec<f64>) -> Self {
        debug_assert!(rho.len() >= 2);
        debug_assert!(rho.len() == value.len() && rho.len() == slope.len() && rho.len() == curvature.len());
        SampledData {
            base,
            rho,
            value,
            slope,
            curvature,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.rho
    }

    fn locate(&self, x: f64) -> usize {
        let n = self.rho.len();
        match self.rho.binary_search_by(|r| r.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Value, first and second derivative of the quintic Hermite interpolant.
    fn eval(&self, x: f64) -> [f64; 3] {
        let i = self.locate(x);
        let (x0, x1) = (self.rho[i], self.rho[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (f0, f1) = (self.value[i], self.value[i + 1]);
        let (d0, d1) = (self.slope[i] * h, self.slope[i + 1] * h);
        let (c0, c1) = (self.curvature[i] * h * h, self.curvature[i + 1] * h * h);

        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let t5 = t4 * t;
        // Quintic Hermite basis (without h0 = 1 - h5) and its first two
        // derivatives in t.
        let h1 = [
            t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
            1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
            -36.0 * t + 96.0 * t2 - 60.0 * t3,
        ];
        let h2 = [
            0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
            t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
            1.0 - 9.0 * t + 18.0 * t2 - 10.0 * t3,
        ];
        let h3 = [
            0.5 * t3 - t4 + 0.5 * t5,
            1.5 * t2 - 4.0 * t3 + 2.5 * t4,
            3.0 * t - 12.0 * t2 + 10.0 * t3,
        ];
        let h4 = [
            -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
            -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
            -24.0 * t + 84.0 * t2 - 60.0 * t3,
        ];
        let h5 = [
            10.0 * t3 - 15.0 * t4 + 6.0 * t5,
            30.0 * t2 - 60.0 * t3 + 30.0 * t4,
            60.0 * t - 180.0 * t2 + 120.0 * t3,
        ];
        // h0 = 1 - h5: carry the value jump instead of both endpoint values,
        // otherwise the 1/h² in the curvature amplifies their rounding.
        let jump = f1 - f0;
        let mut out = [0.0; 3];
        for k in 0..3 {
            out[k] = jump * h5[k] + d0 * h1[k] + c0 * h2[k] + c1 * h3[k] + d1 * h4[k];
        }
        out[0] += f0 + self.base;
        out[1] /= h;
        out[2] /= h * h;
        out
    }
}

/// Limit of the radial p-Laplacian, or a tag that it is singular there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PLapValue {
    Finite(f64),
    Singular,
}

impl PLapValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            PLapValue::Finite(v) => Some(v),
            PLapValue::Singular => None,
        }
    }
}

/// One analytic piece `gain · kind(ρ)` on `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub lo: f64,
    pub hi: f64,
    pub gain: f64,
}

impl Segment {
    pub fn new(kind: SegmentKind, lo: f64, hi: f64) -> Self {
        Segment {
            kind,
            lo,
            hi,
            gain: 1.0,
        }
    }

    pub fn power_affine(a: f64, b: f64, gamma: f64, lo: f64, hi: f64) -> Self {
        Self::new(SegmentKind::PowerAffine { a, b, gamma }, lo, hi)
    }

    pub fn talenti(n: u32, p: f64, lo: f64, hi: f64) -> Self {
        Self::new(SegmentKind::Talenti { n, p, width: 1.0 }, lo, hi)
    }

    pub fn log_drop(offset: f64, lo: f64, hi: f64) -> Self {
        Self::new(SegmentKind::LogDrop { offset }, lo, hi)
    }

    pub fn harmonic(c: f64, d: f64, s: f64, lo: f64, hi: f64) -> Self {
        Self::new(SegmentKind::Harmonic { c, d, s }, lo, hi)
    }

    pub fn with_gain(mut self, gain: f64) -> Self {
        self.gain *= gain;
        self
    }

    pub fn contains(&self, rho: f64) -> bool {
        rho >= self.lo && rho < self.hi
    }

    /// `[u, u_ρ, u_ρρ]` at `rho > 0` (or at 0 where the kind is smooth there).
    pub fn jet(&self, rho: f64) -> [f64; 3] {
        let [v, d1, d2] = match &self.kind {
            SegmentKind::PowerAffine { a, b, gamma } => {
                if *b == 0.0 {
                    [*a, 0.0, 0.0]
                } else if *gamma == 0.0 {
                    [*a + *b, 0.0, 0.0]
                } else {
                    let g = *gamma;
                    let d1 = if g == 1.0 { *b } else { b * g * pow(rho, g - 1.0) };
                    let d2 = if g == 1.0 {
                        0.0
                    } else if g == 2.0 {
                        2.0 * b
                    } else {
                        b * g * (g - 1.0) * pow(rho, g - 2.0)
                    };
                    [a + b * pow(rho, g), d1, d2]
                }
            }
            SegmentKind::Talenti { n, p, width } => {
                let pp = conjugate(*p);
                let e = (*p - *n as f64) / *p;
                let x = rho / width;
                let xp = pow(x, pp);
                let w = 1.0 + xp;
                let v = pow(w, e);
                // d/dρ of x^{p'} = p' x^{p'-1} / width
                let dx = pp * pow(x, pp - 1.0) / width;
                let ddx = pp * (pp - 1.0) * pow(x, pp - 2.0) / (width * width);
                let d1 = e * pow(w, e - 1.0) * dx;
                let d2 = e * (e - 1.0) * pow(w, e - 2.0) * dx * dx + e * pow(w, e - 1.0) * ddx;
                [v, d1, if rho == 0.0 && pp < 2.0 { f64::NEG_INFINITY } else { d2 }]
            }
            SegmentKind::LogDrop { offset } => [offset - ln(rho), -1.0 / rho, 1.0 / (rho * rho)],
            SegmentKind::Harmonic { c, d, s } => {
                let g = 2.0 - s;
                if *c == 0.0 {
                    [*d, 0.0, 0.0]
                } else {
                    [
                        c * pow(rho, g) + d,
                        c * g * pow(rho, g - 1.0),
                        c * g * (g - 1.0) * pow(rho, g - 2.0),
                    ]
                }
            }
            SegmentKind::Sampled(data) => data.eval(rho),
        };
        [self.gain * v, self.gain * d1, self.gain * d2]
    }

    pub fn value(&self, rho: f64) -> f64 {
        self.jet(rho)[0]
    }

    /// Segment formula continued to `hi` (the left limit at the right
    /// endpoint); the limit at infinity for unbounded segments.
    pub fn value_at_hi(&self) -> f64 {
        if self.hi.is_infinite() {
            match &self.kind {
                SegmentKind::Talenti { .. } => 0.0,
                SegmentKind::Harmonic { c, d, s } if *s > 2.0 || *c == 0.0 => self.gain * d,
                SegmentKind::PowerAffine { a, b, gamma } if *gamma < 0.0 || *b == 0.0 => self.gain * a,
                _ => f64::INFINITY,
            }
        } else {
            self.jet(self.hi)[0]
        }
    }

    pub fn slope_at_hi(&self) -> f64 {
        self.jet(self.hi)[1]
    }

    /// True when the segment is annihilated by `Δ_p` in dimension `n`
    /// (constant, p-harmonic power, or the n-harmonic logarithm).
    pub fn is_p_harmonic(&self, n: u32, p: f64) -> bool {
        let s_star = (n as f64 - 1.0) / (p - 1.0) + 1.0;
        match &self.kind {
            SegmentKind::PowerAffine { b, gamma, .. } => *b == 0.0 || *gamma == 0.0,
            SegmentKind::Harmonic { c, s, .. } => *c == 0.0 || abs(s - s_star) <= 1e-14 * s_star.max(1.0),
            SegmentKind::LogDrop { .. } => p == n as f64,
            _ => false,
        }
    }

    /// Radial p-Laplacian `|u'|^{p-2}((p-1) u'' + (n-1) u'/ρ)` at `rho`.
    ///
    /// At `ρ = 0` the one-sided limit is taken from the leading power
    /// `a + Bρ^σ` of the segment: finite `n φ_p(Bσ)` when `σ = p'`, zero
    /// when `σ > p'`, singular otherwise.
    pub fn p_laplacian(&self, n: u32, p: f64, rho: f64) -> PLapValue {
        if self.is_p_harmonic(n, p) && !(rho == 0.0 && self.singular_at_origin()) {
            return PLapValue::Finite(0.0);
        }
        if rho == 0.0 {
            return self.p_laplacian_at_origin(n, p);
        }
        let [_, d1, d2] = self.jet(rho);
        radial_p_laplacian(n, p, rho, d1, d2)
    }

    fn singular_at_origin(&self) -> bool {
        match &self.kind {
            SegmentKind::LogDrop { .. } => true,
            SegmentKind::Harmonic { c, s, .. } => *c != 0.0 && *s > 2.0,
            _ => false,
        }
    }

    fn p_laplacian_at_origin(&self, n: u32, p: f64) -> PLapValue {
        let pp = conjugate(p);
        let leading = match &self.kind {
            SegmentKind::PowerAffine { b, gamma, .. } => Some((self.gain * b, *gamma)),
            SegmentKind::Talenti { n: tn, p: tp, width } => {
                let e = (tp - *tn as f64) / tp;
                let tpp = conjugate(*tp);
                Some((self.gain * e / pow(*width, tpp), tpp))
            }
            SegmentKind::Harmonic { c, s, .. } => Some((self.gain * c, 2.0 - s)),
            SegmentKind::Sampled(data) => {
                // Shooting profiles start with an analytic series segment;
                // if a sampled segment reaches 0 use its curvature there.
                let [_, d1, d2] = data.eval(0.0);
                if d1 != 0.0 {
                    return PLapValue::Singular;
                }
                return radial_p_laplacian_origin_smooth(n, p, self.gain * d2);
            }
            SegmentKind::LogDrop { .. } => None,
        };
        let Some((b, sigma)) = leading else {
            return PLapValue::Singular;
        };
        if b == 0.0 || sigma == 0.0 {
            return PLapValue::Finite(0.0);
        }
        if sigma < 0.0 {
            return PLapValue::Singular;
        }
        let tol = 1e-12;
        if abs(sigma - pp) <= tol {
            PLapValue::Finite(n as f64 * odd_pow(b * sigma, p - 1.0))
        } else if sigma > pp {
            PLapValue::Finite(0.0)
        } else {
            PLapValue::Singular
        }
    }
}

fn radial_p_laplacian_origin_smooth(n: u32, p: f64, curvature: f64) -> PLapValue {
    // u ≈ u(0) + u''(0) ρ²/2: σ = 2 against p'.
    let pp = conjugate(p);
    if curvature == 0.0 {
        PLapValue::Finite(0.0)
    } else if abs(pp - 2.0) <= 1e-12 {
        PLapValue::Finite(n as f64 * curvature)
    } else if 2.0 > pp {
        PLapValue::Finite(0.0)
    } else {
        PLapValue::Singular
    }
}

/// Radial p-Laplacian from the slope and curvature at `rho > 0`.
pub fn radial_p_laplacian(n: u32, p: f64, rho: f64, slope: f64, curvature: f64) -> PLapValue {
    let second = (p - 1.0) * curvature + (n as f64 - 1.0) * slope / rho;
    if slope == 0.0 {
        return if second == 0.0 || p > 2.0 {
            PLapValue::Finite(0.0)
        } else if p == 2.0 {
            PLapValue::Finite(second)
        } else {
            PLapValue::Singular
        };
    }
    PLapValue::Finite(pow(abs(slope), p - 2.0) * second)
}
