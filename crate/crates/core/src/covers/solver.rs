//! Multi-start search for roots of the cover system on the 3-torus.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{bound_filter, CoverParams};
use super::recognize::ExactTriple;
use super::system::{system_residual, AngleSystem};
use crate::scalar::serde_c64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Points per axis of the uniform seed grid.
    pub grid: usize,
    /// Additional pseudorandom seeds.
    pub seeds: usize,
    pub tol_accept: f64,
    pub tol_cluster: f64,
    pub polish_iters: usize,
    /// More distinct roots than this marks the triple as a possible curve.
    pub curve_threshold: usize,
    pub rng_seed: u64,
    pub bound_filter: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: 24,
            seeds: 64,
            tol_accept: 1e-10,
            tol_cluster: 1e-6,
            polish_iters: 50,
            curve_threshold: 50,
            rng_seed: 0x4841_4441_4d41_5431,
            bound_filter: true,
        }
    }
}

/// One root, standing for itself and (when `conjugate_distinct`) its complex conjugate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusSolution {
    #[serde(with = "serde_c64")]
    pub x: Complex64,
    #[serde(with = "serde_c64")]
    pub y: Complex64,
    #[serde(with = "serde_c64")]
    pub z: Complex64,
    /// Largest absolute residual of the three equations.
    pub residual: f64,
    pub conjugate_distinct: bool,
    /// The Jacobian is rank deficient at the root.
    pub singular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactTriple>,
}

impl TorusSolution {
    fn from_angles(p: &CoverParams, phi: [f64; 3], singular: bool) -> Self {
        let [x, y, z] = phi.map(|t| Complex64::from_polar(1.0, t));
        let residual = system_residual(p, x, y, z).iter().fold(0.0f64, |m, r| m.max(r.abs()));
        TorusSolution { x, y, z, residual, conjugate_distinct: false, singular, exact: None }
    }

    pub fn coords(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conjugate(&self) -> Self {
        TorusSolution {
            x: self.x.conj(),
            y: self.y.conj(),
            z: self.z.conj(),
            exact: self.exact.as_ref().and_then(ExactTriple::conjugate),
            ..self.clone()
        }
    }

    fn distance(&self, o: &Self) -> f64 {
        (self.x - o.x).norm().max((self.y - o.y).norm()).max((self.z - o.z).norm())
    }
}

/// Everything the search found for one triple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverSearch {
    pub n: u64,
    pub r: u64,
    pub c2: u64,
    pub solutions: Vec<TorusSolution>,
    /// Roots counted with conjugates.
    pub distinct_roots: usize,
    pub possible_curve: bool,
    pub starts: usize,
    pub skipped_by_bounds: bool,
}

pub fn solve_cover(p: &CoverParams, cfg: &SearchConfig) -> Vec<TorusSolution> {
    search_cover(p, cfg).solutions
}

pub fn search_cover(p: &CoverParams, cfg: &SearchConfig) -> CoverSearch {
    let (n, r, c2) = p.triple();
    let mut out = CoverSearch {
        n,
        r,
        c2,
        solutions: vec![],
        distinct_roots: 0,
        possible_curve: false,
        starts: 0,
        skipped_by_bounds: false,
    };
    if cfg.bound_filter && !bound_filter(p) {
        out.skipped_by_bounds = true;
        return out;
    }
    let sys = AngleSystem::new(p);
    let starts = seeds(p, cfg);
    out.starts = starts.len();
    let found: Vec<Option<([f64; 3], bool)>> =
        starts.par_iter().map(|s| descend(&sys, *s, cfg)).collect();

    let mut roots: Vec<TorusSolution> = vec![];
    for (phi, singular) in found.into_iter().flatten() {
        let cand = canonical(TorusSolution::from_angles(p, phi, singular), cfg.tol_cluster);
        if cand.residual > cfg.tol_accept {
            continue;
        }
        match roots.iter_mut().find(|s| s.distance(&cand) < cfg.tol_cluster) {
            Some(s) if cand.residual < s.residual => *s = cand,
            Some(_) => {}
            None => roots.push(cand),
        }
    }
    roots.sort_by(|a, b| angle_key(a).partial_cmp(&angle_key(b)).unwrap());
    out.distinct_roots = roots.iter().map(|s| 1 + s.conjugate_distinct as usize).sum();
    out.possible_curve = out.distinct_roots > cfg.curve_threshold;
    out.solutions = roots;
    out
}

/// Every root, with conjugates listed separately.
pub fn expand_conjugates(sols: &[TorusSolution]) -> Vec<TorusSolution> {
    sols.iter()
        .flat_map(|s| {
            let mut v = vec![s.clone()];
            if s.conjugate_distinct {
                v.push(s.conjugate());
            }
            v
        })
        .collect()
}

fn angle_key(s: &TorusSolution) -> [f64; 3] {
    s.coords().map(|c| c.arg().rem_euclid(TAU))
}

/// Picks the member of `{s, conj(s)}` whose first non-real coordinate has positive imaginary part.
fn canonical(mut s: TorusSolution, tol: f64) -> TorusSolution {
    match s.coords().iter().find(|c| c.im.abs() > tol) {
        None => {
            s.conjugate_distinct = false;
            s
        }
        Some(c) => {
            let flip = c.im < 0.0;
            s.conjugate_distinct = true;
            if flip {
                s.conjugate()
            } else {
                s
            }
        }
    }
}

fn seeds(p: &CoverParams, cfg: &SearchConfig) -> Vec<[f64; 3]> {
    let g = cfg.grid;
    let mut out = Vec::with_capacity(g * g * g + cfg.seeds);
    let at = |i: usize| TAU * (i as f64 + 0.5) / g as f64;
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                out.push([at(i), at(j), at(k)]);
            }
        }
    }
    let (n, r, c2) = p.triple();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ (n << 40) ^ (r << 20) ^ c2);
    for _ in 0..cfg.seeds {
        out.push([rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)]);
    }
    out
}

fn max_abs(f: &[f64; 3]) -> f64 {
    f.iter().fold(0.0f64, |m, r| m.max(r.abs()))
}

fn mat3(j: &[[f64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, k| j[i][k])
}

const LM_ITERS: usize = 100;
const CANDIDATE: f64 = 1e-4;
const SINGULAR_RATIO: f64 = 1e-6;

/// Levenberg-Marquardt from `start`, then Newton polish or, at a singular
/// root, Gauss-Newton on the deflated system. Returns the final angles.
fn descend(sys: &AngleSystem, start: [f64; 3], cfg: &SearchConfig) -> Option<([f64; 3], bool)> {
    let mut phi = start;
    let mut f = sys.residual(&phi);
    let mut cost = f.iter().map(|v| v * v).sum::<f64>();
    let mut lambda = 1e-3;
    for _ in 0..LM_ITERS {
        if max_abs(&f) < 1e-13 {
            break;
        }
        let j = mat3(&sys.jacobian(&phi));
        let fv = Vector3::from(f);
        let a = j.transpose() * j;
        let g = j.transpose() * fv;
        if g.norm() < 1e-14 * (1.0 + cost) && cost > 1e-12 {
            return None;
        }
        let mut improved = false;
        while lambda < 1e12 {
            let m = a + Matrix3::identity() * lambda;
            let Some(step) = m.lu().solve(&(-g)) else {
                lambda *= 4.0;
                continue;
            };
            let trial = [phi[0] + step[0], phi[1] + step[1], phi[2] + step[2]];
            let ft = sys.residual(&trial);
            let ct = ft.iter().map(|v| v * v).sum::<f64>();
            if ct < cost {
                phi = trial;
                f = ft;
                cost = ct;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    if max_abs(&f) > CANDIDATE {
        return None;
    }

    phi = newton(sys, phi, cfg.polish_iters);
    let j = mat3(&sys.jacobian(&phi));
    let sv = j.svd(false, true);
    let (smax, smin) = (sv.singular_values.max(), sv.singular_values.min());
    let singular = smax == 0.0 || smin / smax < SINGULAR_RATIO;
    if singular {
        if let Some(d) = deflate(sys, phi, &sv, cfg.polish_iters) {
            if max_abs(&sys.residual(&d)) <= max_abs(&sys.residual(&phi)) {
                phi = d;
            }
        }
    }
    Some((phi.map(|t| t.rem_euclid(TAU)), singular))
}

fn newton(sys: &AngleSystem, mut phi: [f64; 3], iters: usize) -> [f64; 3] {
    let mut best = max_abs(&sys.residual(&phi));
    for _ in 0..iters {
        if best == 0.0 {
            break;
        }
        let f = Vector3::from(sys.residual(&phi));
        let j = mat3(&sys.jacobian(&phi));
        let Some(step) = j.lu().solve(&(-f)) else { break };
        let trial = [phi[0] + step[0], phi[1] + step[1], phi[2] + step[2]];
        let r = max_abs(&sys.residual(&trial));
        if r.is_nan() || r > best {
            break;
        }
        phi = trial;
        best = r;
        if step.norm() < 1e-16 {
            break;
        }
    }
    phi
}

/// Gauss-Newton on `{F(φ) = 0, J(φ)v = 0, <v, v0> = 1}`, whose root is regular
/// when the original root has a one-dimensional kernel.
fn deflate(
    sys: &AngleSystem,
    start: [f64; 3],
    sv: &nalgebra::SVD<f64, nalgebra::U3, nalgebra::U3>,
    iters: usize,
) -> Option<[f64; 3]> {
    let vt = sv.v_t.as_ref()?;
    let imin = sv.singular_values.imin();
    let v0 = Vector3::new(vt[(imin, 0)], vt[(imin, 1)], vt[(imin, 2)]);
    let mut u = DVector::from_column_slice(&[start[0], start[1], start[2], v0[0], v0[1], v0[2]]);
    let eval = |u: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let phi = [u[0], u[1], u[2]];
        let v = [u[3], u[4], u[5]];
        let f = sys.residual(&phi);
        let j = sys.jacobian(&phi);
        let h = sys.hessians(&phi);
        let mut g = DVector::zeros(7);
        let mut dg = DMatrix::zeros(7, 6);
        for i in 0..3 {
            g[i] = f[i];
            g[3 + i] = (0..3).map(|m| j[i][m] * v[m]).sum();
            for l in 0..3 {
                dg[(i, l)] = j[i][l];
                dg[(3 + i, l)] = (0..3).map(|m| h[i][m][l] * v[m]).sum();
                dg[(3 + i, 3 + l)] = j[i][l];
            }
            dg[(6, 3 + i)] = v0[i];
        }
        g[6] = (0..3).map(|m| v[m] * v0[m]).sum::<f64>() - 1.0;
        (g, dg)
    };
    for _ in 0..iters {
        let (g, dg) = eval(&u);
        if g.amax() < 1e-15 {
            break;
        }
        let step = dg.svd(true, true).solve(&(-&g), 1e-14).ok()?;
        u += &step;
        if step.norm() < 1e-16 {
            break;
        }
    }
    let out = [u[0], u[1], u[2]];
    out.iter().all(|t| t.is_finite()).then_some(out)
}
