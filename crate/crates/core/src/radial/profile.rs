use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::segment::{PLapValue, Segment, SegmentKind};
use crate::error::{Error, Result};
use crate::math::{abs, pow};

/// Default breakpoint tolerance used for the continuity flag.
pub const CONTINUITY_TOL: f64 = 1e-12;

/// Largest value and slope jumps over the interior breakpoints, each
/// relative to `max(1, |left limit|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Continuity {
    pub tolerance: f64,
    pub max_value_jump: f64,
    pub max_slope_jump: f64,
    pub continuous: bool,
}

/// Radial function on `B_radius ⊂ R^n` (or all of R^n when the radius is
/// infinite) made of closed-form segments partitioning `[0, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseRadialProfile {
    n: u32,
    segments: Vec<Segment>,
    radius: f64,
    continuity: Continuity,
}

impl PiecewiseRadialProfile {
    pub fn new(n: u32, segments: Vec<Segment>) -> Result<Self> {
        Self::with_tolerance(n, segments, CONTINUITY_TOL)
    }

    pub fn with_tolerance(n: u32, segments: Vec<Segment>, tolerance: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("n", "dimension must be at least 1"));
        }
        let first = segments
            .first()
            .ok_or_else(|| Error::Construction("profile needs at least one segment".into()))?;
        if first.lo != 0.0 {
            return Err(Error::Construction(format!("first segment starts at {} instead of 0", first.lo)));
        }
        for (i, seg) in segments.iter().enumerate() {
            if !(seg.lo < seg.hi) || seg.lo < 0.0 || seg.lo.is_nan() || seg.hi.is_nan() {
                return Err(Error::Construction(format!(
                    "segment {i} has an empty or invalid interval [{}, {})",
                    seg.lo, seg.hi
                )));
            }
            if seg.hi.is_infinite() && !matches!(seg.kind, SegmentKind::Talenti { .. }) {
                return Err(Error::Construction(format!(
                    "segment {i}: only Talenti segments may extend to infinity"
                )));
            }
            if let Some(next) = segments.get(i + 1) {
                if next.lo != seg.hi {
                    return Err(Error::Construction(format!(
                        "gap or overlap between segments {i} and {}: {} vs {}",
                        i + 1,
                        seg.hi,
                        next.lo
                    )));
                }
            }
        }
        let radius = segments[segments.len() - 1].hi;
        let mut max_value_jump = 0.0f64;
        let mut max_slope_jump = 0.0f64;
        for pair in segments.windows(2) {
            let at = pair[0].hi;
            let left = pair[0].jet(at);
            let right = pair[1].jet(at);
            max_value_jump = max_value_jump.max(abs(left[0] - right[0]) / abs(left[0]).max(1.0));
            max_slope_jump = max_slope_jump.max(abs(left[1] - right[1]) / abs(left[1]).max(1.0));
        }
        let continuous = max_value_jump <= tolerance && max_slope_jump <= tolerance;
        Ok(PiecewiseRadialProfile {
            n,
            segments,
            radius,
            continuity: Continuity {
                tolerance,
                max_value_jump,
                max_slope_jump,
                continuous,
            },
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    /// Interior breakpoints, including every node of sampled segments.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                out.push(seg.lo);
            }
            if let SegmentKind::Sampled(data) = &seg.kind {
                out.extend(data.nodes().iter().copied().filter(|&r| r > seg.lo && r < seg.hi));
            }
        }
        out
    }

    pub fn segment_at(&self, rho: f64) -> Result<&Segment> {
        if !(rho >= 0.0 && rho < self.radius) {
            return Err(Error::Domain {
                rho,
                radius: self.radius,
            });
        }
        // Right segment at breakpoints.
        let idx = self.segments.partition_point(|s| s.hi <= rho);
        Ok(&self.segments[idx])
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        Ok(self.segment_at(rho)?.jet(rho)[0])
    }

    pub fn eval_deriv1(&self, rho: f64) -> Result<f64> {
        Ok(self.segment_at(rho)?.jet(rho)[1])
    }

    pub fn eval_deriv2(&self, rho: f64) -> Result<f64> {
        Ok(self.segment_at(rho)?.jet(rho)[2])
    }

    /// `[u, u_ρ, u_ρρ]` at `rho`.
    pub fn jet(&self, rho: f64) -> Result<[f64; 3]> {
        Ok(self.segment_at(rho)?.jet(rho))
    }

    /// Limit of `u` at the outer radius (0 for a profile vanishing on the
    /// boundary; the decay limit for profiles on R^n).
    pub fn boundary_value(&self) -> f64 {
        self.segments[self.segments.len() - 1].value_at_hi()
    }

    /// Radial p-Laplacian at `rho`; see [`Segment::p_laplacian`].
    pub fn p_laplacian(&self, p: f64, rho: f64) -> Result<PLapValue> {
        Ok(self.segment_at(rho)?.p_laplacian(self.n, p, rho))
    }

    /// Supremum of `|u|`. Every catalog kind is monotone on its interval,
    /// so each segment attains its extremes at the endpoints.
    pub fn linf_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for seg in &self.segments {
            let lo = if seg.lo == 0.0 && matches!(seg.kind, SegmentKind::LogDrop { .. }) {
                f64::INFINITY
            } else {
                abs(seg.value(seg.lo))
            };
            best = best.max(lo).max(abs(seg.value_at_hi()));
            if let SegmentKind::Sampled(data) = &seg.kind {
                for &r in data.nodes() {
                    if r >= seg.lo && r <= seg.hi {
                        best = best.max(abs(seg.value(r)));
                    }
                }
            }
        }
        best
    }

    /// Multiply the profile by a constant.
    pub fn scaled(&self, factor: f64) -> Self {
        let segments = self.segments.iter().cloned().map(|s| s.with_gain(factor)).collect();
        // Same partition as `self`, so validation cannot fail.
        Self::with_tolerance(self.n, segments, self.continuity.tolerance).expect("scaling keeps a valid partition")
    }

    /// The spatial dilation `ρ ↦ u(ρ / scale)` on the ball of radius
    /// `scale · radius`. Not available for sampled segments.
    pub fn dilated(&self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::config("scale", "dilation must be positive and finite"));
        }
        let mut segments = Vec::with_capacity(self.segments.len());
        for seg in &self.segments {
            let kind = match &seg.kind {
                SegmentKind::PowerAffine { a, b, gamma } => SegmentKind::PowerAffine {
                    a: *a,
                    b: b * pow(scale, -gamma),
                    gamma: *gamma,
                },
                SegmentKind::Talenti { n, p, width } => SegmentKind::Talenti {
                    n: *n,
                    p: *p,
                    width: width * scale,
                },
                SegmentKind::LogDrop { offset } => SegmentKind::LogDrop {
                    offset: offset + crate::math::ln(scale),
                },
                SegmentKind::Harmonic { c, d, s } => SegmentKind::Harmonic {
                    c: c * pow(scale, s - 2.0),
                    d: *d,
                    s: *s,
                },
                SegmentKind::Sampled(_) => {
                    return Err(Error::Unsupported("dilation of sampled segments".into()));
                }
            };
            segments.push(Segment {
                kind,
                lo: seg.lo * scale,
                hi: seg.hi * scale,
                gain: seg.gain,
            });
        }
        Self::with_tolerance(self.n, segments, self.continuity.tolerance)
    }
}
