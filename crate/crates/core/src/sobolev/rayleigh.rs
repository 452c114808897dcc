//! Coarse cross-check: ascent of the discrete quotient
//! `||u||_q / ||∇u||_p` over piecewise-linear radial functions on a uniform
//! grid of the unit ball with `u(1) = 0`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, ln, odd_pow, pow, sphere_area};

struct Grid {
    p: f64,
    q: f64,
    h: f64,
    /// `∫_{ρ_i}^{ρ_{i+1}} ρ^{n-1} dρ` per cell.
    cell: Vec<f64>,
    /// Lumped nodal weights `∫ hat_i ρ^{n-1} dρ`.
    node: Vec<f64>,
}

impl Grid {
    fn new(n: u32, p: f64, q: f64, points: usize) -> Self {
        let nf = n as f64;
        let h = 1.0 / points as f64;
        let cell: Vec<f64> = (0..points)
            .map(|i| (pow((i + 1) as f64 * h, nf) - pow(i as f64 * h, nf)) / nf)
            .collect();
        let mut node = vec![0.0; points];
        for i in 0..points {
            node[i] += 0.5 * cell[i];
            if i > 0 {
                node[i] += 0.5 * cell[i - 1];
            }
        }
        Grid {
            p,
            q,
            h,
            cell,
            node,
        }
    }

    fn diff(&self, u: &[f64], i: usize) -> f64 {
        let next = if i + 1 < u.len() { u[i + 1] } else { 0.0 };
        (next - u[i]) / self.h
    }

    /// `ln K_h(u)` and its gradient.
    fn objective(&self, u: &[f64]) -> (f64, Vec<f64>) {
        let m = u.len();
        let mut g = 0.0;
        let mut qn = 0.0;
        for i in 0..m {
            g += self.cell[i] * pow(abs(self.diff(u, i)), self.p);
            qn += self.node[i] * pow(abs(u[i]), self.q);
        }
        let value = ln(qn) / self.q - ln(g) / self.p;
        let mut grad = vec![0.0; m];
        for i in 0..m {
            grad[i] += self.node[i] * odd_pow(u[i], self.q - 1.0) / qn;
            let flux = self.cell[i] * odd_pow(self.diff(u, i), self.p - 1.0) / (self.h * g);
            grad[i] += flux;
            if i + 1 < m {
                grad[i + 1] -= flux;
            }
        }
        (value, grad)
    }

    /// Solve the radial Laplacian stiffness system `A d = g` (Thomas).
    fn precondition(&self, g: &[f64]) -> Vec<f64> {
        let m = g.len();
        let w: Vec<f64> = self.cell.iter().map(|c| c / (self.h * self.h)).collect();
        let mut diag: Vec<f64> = (0..m).map(|i| w[i] + if i > 0 { w[i - 1] } else { 0.0 }).collect();
        let mut rhs = g.to_vec();
        for i in 1..m {
            let factor = -w[i - 1] / diag[i - 1];
            diag[i] -= factor * -w[i - 1];
            rhs[i] -= factor * rhs[i - 1];
        }
        let mut d = vec![0.0; m];
        d[m - 1] = rhs[m - 1] / diag[m - 1];
        for i in (0..m - 1).rev() {
            d[i] = (rhs[i] + w[i] * d[i + 1]) / diag[i];
        }
        d
    }
}

/// Discrete estimate of `K_{q,p}` on the unit ball.
pub fn rayleigh_estimate(n: u32, p: f64, q: f64, points: usize, iterations: usize) -> f64 {
    let grid = Grid::new(n, p, q, points.max(4));
    let m = grid.node.len();
    let mut u: Vec<f64> = (0..m).map(|i| 1.0 - pow(i as f64 * grid.h, 2.0)).collect();
    let (mut val, mut grad) = grid.objective(&u);
    let mut step = 1.0;
    for _ in 0..iterations {
        let dir = grid.precondition(&grad);
        let slope: f64 = dir.iter().zip(&grad).map(|(a, b)| a * b).sum();
        if slope <= 0.0 {
            break;
        }
        let scale = u.iter().fold(0.0f64, |a, x| a.max(abs(*x)));
        let dmax = dir.iter().fold(0.0f64, |a, x| a.max(abs(*x)));
        let mut t = step * scale / dmax;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = u.iter().zip(&dir).map(|(a, d)| (a + t * d).max(0.0)).collect();
            let (tv, tg) = grid.objective(&trial);
            if tv > val {
                improved = tv - val > 1e-15 * abs(val).max(1.0);
                u = trial;
                val = tv;
                grad = tg;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
        step = (t * dmax / scale * 2.0).min(1.0);
    }
    // ω_n enters as ω_n^{1/q - 1/p}.
    let omega = sphere_area(n);
    pow(omega, 1.0 / q - 1.0 / p) * crate::math::exp(val)
}
