//! Turning float roots of the cover system into certified exact values.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::params::CoverParams;
use super::solver::TorusSolution;
use crate::algebra::quadratic::Quad;
use crate::algebra::rational::{int, squarefree_int, to_f64};
use crate::algebra::{common_tower, Rational, TowerDescriptor, TowerElement};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecognizeConfig {
    /// Bound on numerator, denominator and `√d1` coefficient of a real part.
    pub max_coeff: i64,
    /// Largest square-free `d1` tried.
    pub max_radicand: i64,
    /// Float agreement required before exact certification is attempted.
    pub match_tol: f64,
}

impl Default for RecognizeConfig {
    fn default() -> Self {
        RecognizeConfig { max_coeff: 64, max_radicand: 64, match_tol: 1e-8 }
    }
}

/// Exact coordinates of a root, checked to satisfy the system exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactTriple {
    pub x: TowerElement,
    pub y: TowerElement,
    pub z: TowerElement,
}

impl ExactTriple {
    pub fn conjugate(&self) -> Option<Self> {
        Some(ExactTriple { x: self.x.conj()?, y: self.y.conj()?, z: self.z.conj()? })
    }

    pub fn coords(&self) -> [&TowerElement; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Exact check that `(x, y, z)` is unimodular and satisfies all three equations.
pub fn certify(p: &CoverParams, x: &TowerElement, y: &TowerElement, z: &TowerElement) -> Result<bool> {
    if ![x, y, z].iter().all(|w| w.is_unimodular()) {
        return Ok(false);
    }
    let r1 = TowerElement::from_i64(p.r as i64 - 1);
    let one = TowerElement::one();
    let nr = TowerElement::from_i64((p.n * p.r) as i64);
    let rows = [
        [one.clone(), -&one, -&r1, r1.clone()],
        [one.clone(), p.theta.clone(), -&p.theta, -&one],
        [one.clone(), p.tau.clone(), -&p.tau, -&one],
    ];
    for k in rows {
        let l = k[0]
            .checked_add(&k[1].checked_mul(x)?)?
            .checked_add(&k[2].checked_mul(y)?)?
            .checked_add(&k[3].checked_mul(z)?)?;
        let Some(lc) = l.conj() else { return Ok(false) };
        if l.checked_mul(&lc)? != nr {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Attempts an exact certificate for a float root; `None` unless one is proven.
pub fn recognize_exact(p: &CoverParams, sol: &TorusSolution, cfg: &RecognizeConfig) -> Option<ExactTriple> {
    for d1 in base_candidates(Some(p), cfg) {
        let Some([x, y, z]) = lift(&sol.coords(), &d1, cfg) else { continue };
        if certify(p, &x, &y, &z).unwrap_or(false) {
            let simple = ExactTriple { x: x.simplify(), y: y.simplify(), z: z.simplify() };
            // separately simplified coordinates may no longer share a field with θ, τ
            let shared = [simple.y.tower(), simple.z.tower(), p.theta.tower(), p.tau.tower()]
                .into_iter()
                .try_fold(simple.x.tower().clone(), |t, u| common_tower(&t, u))
                .is_ok();
            return Some(if shared { simple } else { ExactTriple { x, y, z } });
        }
    }
    None
}

/// Best-effort exact form `(a + b√d1)/s + ρ·i√d2` of one unimodular float, without any certification.
pub fn recognize_value(w: Complex64, cfg: &RecognizeConfig) -> Option<TowerElement> {
    base_candidates(None, cfg).iter().find_map(|d1| lift(&[w], d1, cfg)).map(|[e]| e.simplify())
}

fn base_candidates(p: Option<&CoverParams>, cfg: &RecognizeConfig) -> Vec<Rational> {
    if let Some(p) = p.filter(|p| !p.eigenvalues_rational()) {
        let (_, core) = squarefree_int(&BigInt::from(p.n - 1));
        return vec![Rational::from_integer(core)];
    }
    let mut out = vec![Rational::zero()];
    for d in 2..=cfg.max_radicand {
        let (g, core) = squarefree_int(&BigInt::from(d));
        if g == BigInt::from(1) && core == BigInt::from(d) {
            out.push(int(d));
        }
    }
    out
}

/// Expresses every coordinate in one tower `Q(√d1)(i√d2)`, matching floats to `match_tol`.
fn lift<const N: usize>(coords: &[Complex64; N], d1: &Rational, cfg: &RecognizeConfig) -> Option<[TowerElement; N]> {
    let sd = to_f64(d1).sqrt();
    let quad_f64 = |q: &Quad| to_f64(&q.a) + to_f64(&q.b) * sd;
    let mut re = Vec::with_capacity(N);
    for w in coords {
        re.push(match_real(w.re, d1, cfg)?);
    }
    // R = 1 - re^2 = im^2
    let rs: Vec<Quad> = re.iter().map(|q| Quad::one().sub(&q.mul(q, d1))).collect();
    for (r, w) in rs.iter().zip(coords) {
        if (quad_f64(r) - w.im * w.im).abs() > cfg.match_tol {
            return None;
        }
    }
    let d2 = rs.iter().find(|r| !r.is_zero()).cloned().unwrap_or_else(Quad::zero);
    let tower = if d2.is_zero() {
        if d1.is_zero() {
            TowerDescriptor::rational()
        } else {
            TowerDescriptor::real_quadratic(d1.clone()).ok()?
        }
    } else {
        TowerDescriptor::new(d1.clone(), [d2.a.clone(), d2.b.clone()]).ok()?
    };
    let sd2 = quad_f64(&d2).max(0.0).sqrt();
    let mut elems = Vec::with_capacity(N);
    for ((q, r), w) in re.iter().zip(&rs).zip(coords) {
        let rho = if r.is_zero() {
            if w.im.abs() > cfg.match_tol {
                return None;
            }
            Quad::zero()
        } else {
            let rho = r.mul(&d2.inv(d1)?, d1).sqrt(d1)?;
            let v = quad_f64(&rho) * sd2;
            if (v.abs() - w.im.abs()).abs() > cfg.match_tol {
                return None;
            }
            if (v < 0.0) != (w.im < 0.0) {
                rho.neg()
            } else {
                rho
            }
        };
        elems.push(tower.element_raw([q.a.clone(), q.b.clone(), rho.a, rho.b]));
    }
    elems.try_into().ok()
}

/// `(a + b√d1)/s` within `match_tol` of `v`, with `|a|, |b|, s <= max_coeff`.
fn match_real(v: f64, d1: &Rational, cfg: &RecognizeConfig) -> Option<Quad> {
    if d1.is_zero() {
        return continued_fraction(v, cfg.max_coeff, cfg.match_tol).map(Quad::rational);
    }
    let sd = to_f64(d1).sqrt();
    let m = cfg.max_coeff;
    for s in 1..=m {
        for b in (0..=m).flat_map(|b| if b == 0 { vec![0] } else { vec![b, -b] }) {
            let a = (s as f64 * v - b as f64 * sd).round();
            if a.abs() > m as f64 {
                continue;
            }
            if ((a + b as f64 * sd) / s as f64 - v).abs() < cfg.match_tol {
                let s = int(s);
                return Some(Quad::new(int(a as i64) / &s, int(b) / &s));
            }
        }
    }
    None
}

/// First continued-fraction convergent of `v` within `tol`, with bounded terms.
fn continued_fraction(v: f64, max: i64, tol: f64) -> Option<Rational> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        (h0, h1) = (h1, a.checked_mul(h1)?.checked_add(h0)?);
        (k0, k1) = (k1, a.checked_mul(k1)?.checked_add(k0)?);
        if h1.abs() > max || k1 > max {
            return None;
        }
        if (h1 as f64 / k1 as f64 - v).abs() < tol {
            return Some(Rational::new(h1.into(), k1.into()));
        }
        let frac = x - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        x = 1.0 / frac;
    }
    None
}
