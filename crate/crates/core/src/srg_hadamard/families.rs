//! The five parameter families carrying complex Hadamard matrices, and their closed-form solutions.

use serde::{Deserialize, Serialize};

use super::solve::{sqrt_int, Case, SolutionRecord};
use crate::algebra::{int, rat, TowerDescriptor, TowerElement};
use crate::graphs::SrgParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AppliedTo {
    X,
    Complement,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatFamily {
    pub id: FamilyId,
    pub theta: TowerElement,
    pub applied_to: AppliedTo,
    /// Parameters of the graph that was classified (not of the matched side).
    pub params: SrgParams,
}

/// Family parameters at integer `θ`; `None` when some entry is negative.
pub fn family_params(id: FamilyId, theta: i64) -> Option<SrgParams> {
    let t2 = theta * theta;
    let (v, k, a, c) = match id {
        FamilyId::I => (4 * t2, 2 * t2 - theta, t2 - theta, t2 - theta),
        FamilyId::Ii => (4 * t2, 2 * t2 + theta, t2 + theta, t2 + theta),
        FamilyId::Iii => (4 * t2 - 1, 2 * t2, t2, t2),
        FamilyId::Iv => (4 * t2 + 4 * theta + 1, 2 * t2 + 2 * theta, t2 + theta - 1, t2 + theta),
        FamilyId::V => (4 * t2 + 4 * theta + 2, 2 * t2 + theta, t2 - 1, t2),
    };
    if v < 0 || k < 0 || a < 0 || c < 0 {
        return None;
    }
    SrgParams::new(v as u64, k as u64, a as u64, c as u64).ok()
}

/// Conference-graph parameters with `θ^2 + θ = m`.
fn conference_params(m: i64) -> Option<SrgParams> {
    SrgParams::new((4 * m + 1) as u64, (2 * m) as u64, (m - 1).max(0) as u64, m as u64)
        .ok()
        .filter(|p| m >= 1 && p.a as i64 == m - 1)
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|x| *x >= 0 && x * x == n)
}

fn match_side(p: &SrgParams) -> Option<(FamilyId, TowerElement)> {
    let v = p.v as i64;
    let int_theta = |id: FamilyId, t: Option<i64>| -> Option<(FamilyId, TowerElement)> {
        let t = t.filter(|t| *t >= 1)?;
        (family_params(id, t)? == *p).then(|| (id, TowerElement::from_i64(t)))
    };
    let quarter = |n: i64| (n % 4 == 0).then(|| isqrt(n / 4)).flatten();
    int_theta(FamilyId::I, quarter(v))
        .or_else(|| int_theta(FamilyId::Ii, quarter(v)))
        .or_else(|| int_theta(FamilyId::Iii, quarter(v + 1)))
        .or_else(|| {
            // v = 4(θ^2 + θ) + 1; θ = (-1 + √v)/2
            if (v - 1) % 4 != 0 || conference_params((v - 1) / 4)? != *p {
                return None;
            }
            let s = TowerDescriptor::real_quadratic(int(v)).ok()?.sqrt_d1();
            Some((FamilyId::Iv, (s - TowerElement::one()) * TowerElement::rational(rat(1, 2))))
        })
        .or_else(|| {
            // v - 1 = (2θ + 1)^2
            let r = isqrt(v - 1)?;
            int_theta(FamilyId::V, (r % 2 == 1).then_some((r - 1) / 2))
        })
}

/// Matches `p`, then its complement, against the five families.
///
/// Family iv is closed under complementation, so it always reports `X`.
pub fn classify_flat(p: &SrgParams) -> Option<FlatFamily> {
    if let Some((id, theta)) = match_side(p) {
        return Some(FlatFamily { id, theta, applied_to: AppliedTo::X, params: *p });
    }
    let comp = p.complement().ok()?;
    let (id, theta) = match_side(&comp)?;
    Some(FlatFamily { id, theta, applied_to: AppliedTo::Complement, params: *p })
}

/// Closed-form solutions on the matched side, re-expressed for the classified graph.
pub fn family_solutions(f: &FlatFamily) -> Vec<SolutionRecord> {
    let one = TowerElement::one();
    let q = TowerElement::from_i64;
    let mut pairs: Vec<(Case, TowerElement, TowerElement)> = Vec::new();
    let theta = &f.theta;
    match f.id {
        FamilyId::I | FamilyId::Ii => pairs.push((Case::DDesignXm1, q(-1), one.clone())),
        FamilyId::Iii => {
            let t = theta.as_rational().expect("integral θ").to_integer();
            let t2: i64 = (&t * &t).try_into().expect("small θ");
            let r1 = sqrt_int(-(4 * t2 - 5));
            let r2 = sqrt_int(-(4 * t2 - 1));
            for sign in [1, -1] {
                let y = (q(2 * t2 - 3) + &r1 * &q(sign)) / q(2 * (t2 - 1));
                pairs.push((Case::DDesignXm1, q(-1), y));
                let x = (q(1 - 2 * t2) + &r2 * &q(sign)) / q(2 * t2);
                pairs.push((Case::EQuadratic, x, one.clone()));
            }
        }
        FamilyId::Iv => {
            let v = (4 * conference_m(theta) + 1) as i64;
            let two = TowerElement::from_i64(2);
            for (radical_sign, denom) in [(2, &two * &(theta + &one)), (-2, &two * theta)] {
                // (2θ+1)(2θ+3) = v + 2√v and (2θ+1)(2θ-1) = v - 2√v
                let tower = TowerDescriptor::new(int(v), [int(v), int(radical_sign)]).expect("v ± 2√v > 0");
                let t = tower.i_sqrt_d2();
                let lead = if radical_sign > 0 { one.clone() } else { -&one };
                for sign in [1, -1] {
                    let x = (&lead + &(&t * &q(sign))) / &denom;
                    let y = x.checked_inv().expect("nonzero");
                    pairs.push((Case::EQuadratic, x, y));
                }
            }
        }
        FamilyId::V => {
            let t = theta.as_rational().expect("integral θ").to_integer();
            let t: i64 = t.try_into().expect("small θ");
            let m = 2 * t * (t + 1);
            let r = sqrt_int(-(m * m - 1));
            let i = sqrt_int(-1);
            for sign in [1, -1] {
                let x = &i * &q(sign);
                pairs.push((Case::EQuadratic, x.clone(), x.checked_inv().unwrap()));
                let x = (q(-1) + &r * &q(sign)) / q(m);
                pairs.push((Case::EQuadratic, x.clone(), x.checked_inv().unwrap()));
            }
        }
    }
    pairs
        .into_iter()
        .map(|(case, x, y)| match f.applied_to {
            AppliedTo::X => SolutionRecord::new(f.params, case, x, y),
            AppliedTo::Complement => {
                let case = match case {
                    Case::CDesignX1 => Case::DDesignXm1,
                    Case::DDesignXm1 => Case::CDesignX1,
                    other => other,
                };
                SolutionRecord::new(f.params, case, y, x)
            }
        })
        .collect()
}

/// `θ^2 + θ` for a conference-graph θ.
fn conference_m(theta: &TowerElement) -> u64 {
    let m = (theta * theta + theta.clone()).as_rational().expect("θ^2 + θ is an integer");
    m.to_integer().try_into().expect("small")
}
