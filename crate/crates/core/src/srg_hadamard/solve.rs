//! All type II matrices `I + xA(X) + yA(X̄)` in the adjacency algebra of a strongly regular graph.

use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, TowerDescriptor, TowerElement};
use crate::error::{Error, Result};
use crate::graphs::SrgParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    APotts,
    BDisconnected,
    CDesignX1,
    DDesignXm1,
    EQuadratic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub params: SrgParams,
    pub case: Case,
    pub x: TowerElement,
    pub y: TowerElement,
    pub design_lambda: Option<i64>,
    pub unimodular: bool,
    pub exact: bool,
    /// Set once a matrix built from this record has been checked.
    pub hadamard_verified: Option<bool>,
}

impl SolutionRecord {
    pub fn new(params: SrgParams, case: Case, x: TowerElement, y: TowerElement) -> Self {
        let unimodular = x.is_unimodular() && y.is_unimodular();
        SolutionRecord {
            params,
            case,
            design_lambda: design_lambda(case, &params),
            x,
            y,
            unimodular,
            exact: true,
            hadamard_verified: None,
        }
    }

    /// The same solution with every value conjugated, when that stays in the field.
    pub fn conjugate(&self) -> Option<Self> {
        Some(SolutionRecord::new(self.params, self.case, self.x.conj()?, self.y.conj()?))
    }
}

/// `λ` of the symmetric design in cases (c) and (d).
pub fn design_lambda(case: Case, p: &SrgParams) -> Option<i64> {
    let big_p = 1 + p.s() + p.p();
    match case {
        Case::CDesignX1 => Some(p.v as i64 - p.k as i64 - 1 + big_p),
        Case::DDesignXm1 => Some(p.k as i64 + p.p()),
        _ => None,
    }
}

/// The quadratic `-θτ z^2 + α z + β + 2θτ` satisfied by `z = x + 1/x` in case (e).
#[derive(Clone, Debug, Serialize)]
pub struct CaseEQuadratic {
    pub alpha: TowerElement,
    pub beta: TowerElement,
    pub discriminant: TowerElement,
}

/// Integer coefficients `(α, β, Δ)`; they only involve `θ + τ` and `θτ`.
fn case_e_coefficients(p: &SrgParams) -> (i64, i64, i64) {
    let (v, s, q) = (p.v as i64, p.s(), p.p());
    let alpha = v * (s + 1) + s * s;
    // θ^2 + θτ + τ^2 = s^2 - θτ
    let beta = v + v * (1 + s) * (1 + s) - 2 * (s * s - q);
    let delta = alpha * alpha + 4 * q * (beta + 2 * q);
    (alpha, beta, delta)
}

pub fn case_e_quadratic(p: &SrgParams) -> CaseEQuadratic {
    let (a, b, d) = case_e_coefficients(p);
    CaseEQuadratic {
        alpha: TowerElement::from_i64(a),
        beta: TowerElement::from_i64(b),
        discriminant: TowerElement::from_i64(d),
    }
}

/// Principal square root of an integer as a tower element.
pub(crate) fn sqrt_int(r: i64) -> TowerElement {
    if r >= 0 {
        TowerDescriptor::real_quadratic(int(r)).expect("non-negative").sqrt_d1()
    } else {
        TowerDescriptor::new(int(0), [int(-r), int(0)]).expect("positive").i_sqrt_d2()
    }
}

fn q(n: i64) -> TowerElement {
    TowerElement::from_i64(n)
}

#[derive(Clone, Debug)]
pub struct TypeIiSolutions {
    pub params: SrgParams,
    pub records: Vec<SolutionRecord>,
    /// Skipped or degenerate branches, and any disagreement between the two `y` formulas.
    pub diagnostics: Vec<String>,
}

pub fn solve_typeii(p: &SrgParams) -> Result<Vec<SolutionRecord>> {
    Ok(solve_typeii_report(p)?.records)
}

pub fn solve_typeii_report(p: &SrgParams) -> Result<TypeIiSolutions> {
    if p.v <= 4 {
        return Err(Error::TooSmall(p.v));
    }
    let (v, k, s, pp) = (p.v as i64, p.k as i64, p.s(), p.p());
    let big_p = 1 + s + pp;
    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    let half = TowerElement::rational(rat(1, 2));

    // (a) and (b)
    let root = sqrt_int(v * v - 4 * v);
    for sign in [1, -1] {
        let x = (q(2 - v) + &root * &q(sign)) * &half;
        records.push(SolutionRecord::new(*p, Case::APotts, x.clone(), x.clone()));
        if p.c == 0 && p.a + 1 == p.k {
            let y = (q(1) + &x * &q(k)) / (&x + &q(k));
            records.push(SolutionRecord::new(*p, Case::BDisconnected, x, y));
        }
    }

    // (c): x = 1, only when θ + τ = -2
    if s == -2 {
        let root = sqrt_int(v * v + 4 * v * big_p);
        for sign in [1, -1] {
            let y = (q(v + 2 * big_p) + &root * &q(sign)) / q(2 * big_p);
            records.push(SolutionRecord::new(*p, Case::CDesignX1, q(1), y));
        }
    }

    // (d): x = -1, only when θ + τ = 0; then θ^2 = -θτ
    if s == 0 {
        if big_p == 0 {
            diagnostics.push("case (d) skipped: (1+θ)(1+τ) = 0".into());
        } else {
            let radicand = (v - 4) * (v + 4 * pp);
            let root = sqrt_int(radicand);
            for sign in [1, -1] {
                let y = (q(-v - 2 * pp + 2) + &root * &q(sign)) / q(2 * big_p);
                assert_eq!(y.is_real(), radicand >= 0, "realness of case (d) y disagrees with (v-4)(v-4θ²)");
                records.push(SolutionRecord::new(*p, Case::DDesignXm1, q(-1), y));
            }
        }
    }

    // (e)
    if big_p == 0 {
        diagnostics.push("case (e) skipped: (1+θ)(1+τ) = 0".into());
    } else {
        for z in case_e_roots(p, &mut diagnostics) {
            if z == q(2) {
                diagnostics.push("case (e) root z = 2 (x = 1) belongs to case (c)".into());
                continue;
            }
            if z == q(-2) {
                diagnostics.push("case (e) root z = -2 (x = -1) belongs to case (d)".into());
                continue;
            }
            for x in split_z(&z) {
                let y = case_e_y(p, &x);
                let alt = case_e_y_alt(p, &x);
                if y != alt {
                    diagnostics.push(format!("case (e) y formulas disagree at x = {x}: {y} vs {alt}"));
                }
                records.push(SolutionRecord::new(*p, Case::EQuadratic, x, y));
            }
        }
    }

    let mut unique: Vec<SolutionRecord> = Vec::with_capacity(records.len());
    for r in records {
        if !unique.iter().any(|u| u.case == r.case && u.x == r.x && u.y == r.y) {
            unique.push(r);
        }
    }
    Ok(TypeIiSolutions { params: *p, records: unique, diagnostics })
}

/// Roots of the case-(e) quadratic in `z = x + 1/x`.
fn case_e_roots(p: &SrgParams, diagnostics: &mut Vec<String>) -> Vec<TowerElement> {
    let (alpha, beta, delta) = case_e_coefficients(p);
    let pp = p.p();
    if pp == 0 {
        if alpha == 0 {
            diagnostics.push("case (e) degenerate: θτ = 0 and α = 0".into());
            return vec![];
        }
        return vec![TowerElement::rational(rat(-beta, alpha))];
    }
    let root = TowerDescriptor::general(int(delta), [int(0), int(0)]).sqrt_d1();
    let mut out: Vec<TowerElement> = Vec::new();
    for sign in [1, -1] {
        // (-α ± √Δ) / (-2θτ)
        let z = (q(-alpha) + &root * &q(sign)) / q(-2 * pp);
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

/// Both roots of `x^2 - z x + 1 = 0`.
fn split_z(z: &TowerElement) -> Vec<TowerElement> {
    let four_minus = &q(4) - &(z * z);
    let c = four_minus.coords();
    let tower = TowerDescriptor::general(z.tower().d1().clone(), [c[0].clone(), c[1].clone()]);
    // t^2 = z^2 - 4
    let t = tower.i_sqrt_d2();
    let z = z.lift_to(&tower).expect("z lies in the base of its own extension");
    let half = TowerElement::rational(rat(1, 2));
    vec![(&z + &t) * &half, (&z - &t) * &half]
}

fn case_e_y(p: &SrgParams, x: &TowerElement) -> TowerElement {
    let (v, s, pp) = (p.v as i64, p.s(), p.p());
    let big_p = 1 + s + pp;
    let x2 = x * x;
    let x3 = &x2 * x;
    let num = &q(pp) * &x3 - &q(v * (s + 1) - 2 * s - 1) * &x2 - &q(v + 2 * s + pp) * x - q(1);
    num / ((&x2 - &q(1)) * q(big_p))
}

/// The second expression for `y`, used as a cross-check.
fn case_e_y_alt(p: &SrgParams, x: &TowerElement) -> TowerElement {
    let (v, s, pp) = (p.v as i64, p.s(), p.p());
    let big_p = 1 + s + pp;
    let xi = x.checked_inv().expect("x != 0");
    let lead = (&q(pp) * x - q(1)) / q(big_p) * (x + &xi - q(2) + q(v));
    (lead - &q(v - 2) * x - q(2)) / (x - &xi)
}

/// Keeps records with `|x| = |y| = 1`.
///
/// For primitive parameters a nonempty result forces `θ + τ ∈ {-2, -1, 0}`;
/// this is asserted.
pub fn filter_unimodular(sols: &[SolutionRecord]) -> Vec<SolutionRecord> {
    let out: Vec<SolutionRecord> = sols.iter().filter(|r| r.x.is_unimodular() && r.y.is_unimodular()).cloned().collect();
    for r in &out {
        assert!(
            !r.params.is_primitive() || (-2..=0).contains(&r.params.s()),
            "unimodular solution for {} with θ + τ = {}",
            r.params,
            r.params.s()
        );
    }
    out
}
