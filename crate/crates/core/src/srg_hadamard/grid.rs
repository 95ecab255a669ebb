//! Brute-force check that no unimodular solution was missed: scan the 2-torus of
//! `(x, y)` angles and polish every local minimum of the eigenvalue residual.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::solve::SolutionRecord;
use crate::error::Result;
use crate::graphs::{spectrum, SrgParams};

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub params: SrgParams,
    pub resolution: usize,
    pub local_minima: usize,
    /// Polished roots, one per cluster, as `[x, y]` pairs of `[re, im]`.
    pub roots: Vec<[[f64; 2]; 2]>,
    /// Roots with no emitted solution nearby.
    pub unmatched: Vec<[[f64; 2]; 2]>,
}

impl GridReport {
    pub fn complete(&self) -> bool {
        self.unmatched.is_empty()
    }
}

struct Residual {
    v: f64,
    // eigenvalue j of W is 1 + a[j] x + b[j] y
    a: [f64; 3],
    b: [f64; 3],
}

impl Residual {
    fn eval(&self, px: f64, py: f64) -> ([f64; 3], [[f64; 2]; 3]) {
        let x = Complex64::from_polar(1.0, px);
        let y = Complex64::from_polar(1.0, py);
        let mut f = [0.0; 3];
        let mut jac = [[0.0; 2]; 3];
        for j in 0..3 {
            let lam = 1.0 + x * self.a[j] + y * self.b[j];
            f[j] = lam.norm_sqr() - self.v;
            let dx = Complex64::i() * x * self.a[j];
            let dy = Complex64::i() * y * self.b[j];
            jac[j] = [2.0 * (lam.conj() * dx).re, 2.0 * (lam.conj() * dy).re];
        }
        (f, jac)
    }

    fn cost(&self, px: f64, py: f64) -> f64 {
        self.eval(px, py).0.iter().map(|r| r * r).sum()
    }

    /// Levenberg-Marquardt on the two angles.
    fn polish(&self, mut px: f64, mut py: f64) -> (f64, f64, f64) {
        let mut mu = 1e-3;
        let mut cost = self.cost(px, py);
        for _ in 0..200 {
            let (f, j) = self.eval(px, py);
            let mut jtj = [[0.0; 2]; 2];
            let mut jtf = [0.0; 2];
            for r in 0..3 {
                for c in 0..2 {
                    jtf[c] += j[r][c] * f[r];
                    for d in 0..2 {
                        jtj[c][d] += j[r][c] * j[r][d];
                    }
                }
            }
            let a = jtj[0][0] * (1.0 + mu) + 1e-300;
            let d = jtj[1][1] * (1.0 + mu) + 1e-300;
            let b = jtj[0][1];
            let det = a * d - b * b;
            if det.abs() < 1e-300 {
                break;
            }
            let sx = -(d * jtf[0] - b * jtf[1]) / det;
            let sy = -(a * jtf[1] - b * jtf[0]) / det;
            let next = self.cost(px + sx, py + sy);
            if next < cost {
                px += sx;
                py += sy;
                cost = next;
                mu = (mu * 0.3).max(1e-12);
                if sx.abs() + sy.abs() < 1e-15 {
                    break;
                }
            } else {
                mu *= 10.0;
                if mu > 1e12 {
                    break;
                }
            }
        }
        let max = self.eval(px, py).0.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        (px, py, max)
    }
}

/// Scans a `resolution x resolution` grid; roots with residual below `1e-9 v` count.
pub fn grid_scan(p: &SrgParams, resolution: usize, emitted: &[SolutionRecord]) -> Result<GridReport> {
    let sp = spectrum(p)?;
    let (th, ta) = sp.theta_tau_f64();
    let v = p.v as f64;
    let k = p.k as f64;
    let res = Residual { v, a: [k, th, ta], b: [v - k - 1.0, -1.0 - th, -1.0 - ta] };
    let h = TAU / resolution as f64;
    let m = resolution;
    let grid: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|idx| res.cost((idx / m) as f64 * h, (idx % m) as f64 * h))
        .collect();
    let minima: Vec<(usize, usize)> = (0..m * m)
        .filter_map(|idx| {
            let (i, j) = (idx / m, idx % m);
            let c = grid[idx];
            let is_min = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let ii = (i as i64 + di).rem_euclid(m as i64) as usize;
                    let jj = (j as i64 + dj).rem_euclid(m as i64) as usize;
                    (di == 0 && dj == 0) || c <= grid[ii * m + jj]
                })
            });
            is_min.then_some((i, j))
        })
        .collect();
    let polished: Vec<(Complex64, Complex64)> = minima
        .par_iter()
        .filter_map(|&(i, j)| {
            let (px, py, r) = res.polish(i as f64 * h, j as f64 * h);
            (r < 1e-9 * v).then(|| (Complex64::from_polar(1.0, px), Complex64::from_polar(1.0, py)))
        })
        .collect();
    let mut roots: Vec<(Complex64, Complex64)> = Vec::new();
    for (x, y) in polished {
        if !roots.iter().any(|(a, b)| (a - x).norm() + (b - y).norm() < 1e-6) {
            roots.push((x, y));
        }
    }
    let known: Vec<(Complex64, Complex64)> =
        emitted.iter().filter(|r| r.unimodular).map(|r| (r.x.embed_complex(), r.y.embed_complex())).collect();
    let pack = |(x, y): &(Complex64, Complex64)| [[x.re, x.im], [y.re, y.im]];
    let unmatched = roots
        .iter()
        .filter(|(x, y)| !known.iter().any(|(a, b)| (a - x).norm() + (b - y).norm() < 1e-6))
        .map(pack)
        .collect();
    Ok(GridReport {
        params: *p,
        resolution,
        local_minima: minima.len(),
        roots: roots.iter().map(pack).collect(),
        unmatched,
    })
}
