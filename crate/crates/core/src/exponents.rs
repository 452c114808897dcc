use alloc::format;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::abs;

const RELATION_TOL: f64 = 1e-12;

/// Exponent tuple `(n, p, q, r, β, γ)`.
///
/// `q` and `r` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentConfig {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// `q̄ = np/(n-p)` for `p < n`, `∞` otherwise.
pub fn critical_exponent(n: u32, p: f64) -> f64 {
    let nf = n as f64;
    if p < nf {
        nf * p / (nf - p)
    } else {
        f64::INFINITY
    }
}

/// `r` with `1/r + p/q = 1`.
pub fn holder_r(p: f64, q: f64) -> f64 {
    if q.is_infinite() {
        1.0
    } else if q == p {
        f64::INFINITY
    } else {
        q / (q - p)
    }
}

/// `q` with `1/r + p/q = 1`.
pub fn holder_q(p: f64, r: f64) -> f64 {
    if r.is_infinite() {
        p
    } else if r == 1.0 {
        f64::INFINITY
    } else {
        p * r / (r - 1.0)
    }
}

fn recip(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        1.0 / x
    }
}

impl ExponentConfig {
    /// `(n, p, q)` with `r` from `1/r + p/q = 1`, `β = p - 2`, `γ = 0`.
    pub fn new(n: u32, p: f64, q: f64) -> Result<Self> {
        let cfg = ExponentConfig {
            n,
            p,
            q,
            r: holder_r(p, q),
            beta: p - 2.0,
            gamma: 0.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `(n, p, q = q̄)`.
    pub fn critical(n: u32, p: f64) -> Result<Self> {
        Self::new(n, p, critical_exponent(n, p))
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self.beta = beta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_r(mut self, r: f64) -> Result<Self> {
        self.r = r;
        self.validate()?;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn critical_exponent(&self) -> f64 {
        critical_exponent(self.n, self.p)
    }

    /// Range checks on each field; does not enforce the Hölder relation.
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::config("n", "dimension must be at least 1"));
        }
        if !(self.p > 1.0 && self.p.is_finite()) {
            return Err(Error::config("p", format!("p = {} must lie in (1, ∞)", self.p)));
        }
        if !(self.q >= self.p) {
            return Err(Error::config("q", format!("q = {} must satisfy q >= p = {}", self.q, self.p)));
        }
        let qbar = self.critical_exponent();
        if self.q > qbar * (1.0 + RELATION_TOL) {
            return Err(Error::config(
                "q",
                format!("q = {} exceeds the critical exponent {qbar}", self.q),
            ));
        }
        if !(self.r >= 1.0) {
            return Err(Error::config("r", format!("r = {} must be >= 1", self.r)));
        }
        if !(self.beta >= -1.0) {
            return Err(Error::config("beta", format!("β = {} must be >= -1", self.beta)));
        }
        if !(self.gamma >= 0.0) {
            return Err(Error::config("gamma", format!("γ = {} must be >= 0", self.gamma)));
        }
        Ok(())
    }

    /// `1/r + p/q - 1`.
    pub fn holder_residual(&self) -> f64 {
        recip(self.r) + self.p * recip(self.q) - 1.0
    }

    pub fn require_holder(&self) -> Result<()> {
        let res = self.holder_residual();
        if abs(res) <= RELATION_TOL {
            Ok(())
        } else {
            Err(Error::config(
                "r",
                format!("1/r + p/q = 1 violated by {res} (p = {}, q = {}, r = {})", self.p, self.q, self.r),
            ))
        }
    }

    /// `1/r + (β+2)/q + γ/p - 1`, with `q` the Lebesgue exponent of the
    /// solution (q̄ in the critical case).
    pub fn gradient_relation_residual(&self) -> f64 {
        recip(self.r) + (self.beta + 2.0) * recip(self.q) + self.gamma / self.p - 1.0
    }

    pub fn require_gradient_relation(&self) -> Result<()> {
        let res = self.gradient_relation_residual();
        if abs(res) <= RELATION_TOL {
            Ok(())
        } else {
            Err(Error::config(
                "gamma",
                format!("1/r + (β+2)/q + γ/p = 1 violated by {res}"),
            ))
        }
    }

    /// `q̂ = r(β+2)/(r-1)`.
    pub fn q_hat(&self) -> f64 {
        if self.r.is_infinite() {
            self.beta + 2.0
        } else if self.r == 1.0 {
            f64::INFINITY
        } else {
            self.r * (self.beta + 2.0) / (self.r - 1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holder_pairs() {
        let c = ExponentConfig::new(3, 2.0, 4.0).unwrap();
        assert_eq!(c.r, 2.0);
        assert!(c.require_holder().is_ok());
        assert_eq!(holder_r(2.0, 2.0), f64::INFINITY);
        assert_eq!(holder_q(2.0, 1.0), f64::INFINITY);
        assert_eq!(holder_q(2.0, 2.0), 4.0);
    }

    #[test]
    fn critical_exponents() {
        assert_eq!(critical_exponent(3, 2.0), 6.0);
        assert_eq!(critical_exponent(2, 2.0), f64::INFINITY);
        let c = ExponentConfig::critical(3, 2.0).unwrap();
        assert_eq!(c.r, 1.5);
    }

    #[test]
    fn rejects_supercritical_q() {
        let err = ExponentConfig::new(3, 2.0, 7.0).unwrap_err();
        assert!(matches!(err, Error::Config { field: "q", .. }));
        assert!(matches!(ExponentConfig::new(3, 1.0, 2.0), Err(Error::Config { field: "p", .. })));
    }

    #[test]
    fn q_hat_values() {
        let c = ExponentConfig::new(3, 2.0, 6.0).unwrap().with_r(3.0).unwrap().with_beta(1.0).unwrap();
        assert!((c.q_hat() - 4.5).abs() < 1e-15);
    }

    #[test]
    fn gradient_relation() {
        // 1/3 + 2/6 + γ/2 = 1  =>  γ = 2/3
        let c = ExponentConfig::new(3, 2.0, 6.0)
            .unwrap()
            .with_r(3.0)
            .unwrap()
            .with_beta(0.0)
            .unwrap()
            .with_gamma(2.0 / 3.0)
            .unwrap();
        assert!(c.require_gradient_relation().is_ok());
    }
}
