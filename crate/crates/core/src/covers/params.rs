use std::cmp::Ordering;

use serde::Serialize;

use crate::algebra::{int, rat, Rational, TowerDescriptor, TowerElement};
use crate::error::{Error, Result};

/// Parameters `(n, r, c2)` of an antipodal distance-regular cover of `K_n`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverParams {
    pub n: u64,
    pub r: u64,
    pub c2: u64,
    pub delta: i64,
    pub a1: i64,
    pub theta: TowerElement,
    pub tau: TowerElement,
}

impl PartialEq for CoverParams {
    fn eq(&self, o: &Self) -> bool {
        self.triple() == o.triple()
    }
}

impl Eq for CoverParams {}

impl CoverParams {
    pub fn new(n: u64, r: u64, c2: u64) -> Result<Self> {
        if n < 3 || r < 2 || c2 < 1 {
            return Err(Error::InvalidParameters(format!("({n},{r},{c2}) needs n >= 3, r >= 2, c2 >= 1")));
        }
        let (ni, ri, ci) = (n as i64, r as i64, c2 as i64);
        let delta = ni - 2 - ri * ci;
        let a1 = ni - 2 - (ri - 1) * ci;
        if a1 < 0 {
            return Err(Error::InvalidParameters(format!("({n},{r},{c2}) has a1 = {a1} < 0")));
        }
        let disc = delta * delta + 4 * (ni - 1);
        let root = TowerDescriptor::real_quadratic(int(disc))?.sqrt_d1();
        let half = TowerElement::rational(rat(1, 2));
        let d = TowerElement::from_i64(delta);
        let theta = (&d + &root) * &half;
        let tau = (&d - &root) * &half;
        Ok(CoverParams { n, r, c2, delta, a1, theta, tau })
    }

    /// Parses `n,r,c2`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParameters(format!("expected n,r,c2, got {s:?}")))?;
        match parts[..] {
            [n, r, c2] => Self::new(n, r, c2),
            _ => Err(Error::InvalidParameters(format!("expected three values, got {s:?}"))),
        }
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.n, self.r, self.c2)
    }

    pub fn theta_f64(&self) -> f64 {
        self.theta.embed_complex().re
    }

    pub fn tau_f64(&self) -> f64 {
        self.tau.embed_complex().re
    }

    /// `θ` and `τ` are integers unless `δ = 0`.
    pub fn eigenvalues_rational(&self) -> bool {
        self.theta.as_rational().is_some()
    }

    /// Multiplicities of `θ` and `τ` in the cover.
    pub fn multiplicities(&self) -> (Rational, Rational) {
        let total = int((self.n * (self.r - 1)) as i64);
        if self.delta == 0 {
            let half = &total / int(2);
            return (half.clone(), half);
        }
        let th = self.theta.as_rational().expect("integral eigenvalue");
        let ta = self.tau.as_rational().expect("integral eigenvalue");
        let gap = &th - &ta;
        (&total * -&ta / &gap, &total * &th / &gap)
    }
}

impl std::fmt::Display for CoverParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.r, self.c2)
    }
}

/// Every triple with `3 <= n <= n_max`, `r >= 2`, `c2 >= 1`, `a1 >= 0` whose
/// eigenvalues are integral or have `δ = 0`.
pub fn enumerate_feasible(n_max: u64) -> Vec<CoverParams> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for r in 2..=n.saturating_sub(1).max(2) {
            for c2 in 1..=n {
                if (r - 1) * c2 > n - 2 {
                    break;
                }
                let delta = n as i64 - 2 - (r * c2) as i64;
                let disc = delta * delta + 4 * (n as i64 - 1);
                let square = (disc as f64).sqrt().round() as i64;
                if delta != 0 && square * square != disc {
                    continue;
                }
                out.push(CoverParams::new(n, r, c2).expect("validated above"));
            }
        }
    }
    out
}

/// Conditions from the existence of a graph, beyond the arithmetic above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverDefect {
    /// The local graph would be `a1`-regular on an odd number `n - 1` of vertices with `a1` odd.
    OddLocalDegreeSum,
    MultiplicityNotIntegral,
}

pub fn graph_defects(p: &CoverParams) -> Vec<CoverDefect> {
    let mut out = Vec::new();
    if (p.n as i64 - 1) * p.a1 % 2 != 0 {
        out.push(CoverDefect::OddLocalDegreeSum);
    }
    let (mt, mu) = p.multiplicities();
    if !mt.is_integer() || !mu.is_integer() {
        out.push(CoverDefect::MultiplicityNotIntegral);
    }
    out
}

/// The three necessary inequalities for a unimodular solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `nr <= 4r^2`
    R,
    /// `nr <= 4(1 + θ)^2`
    Theta,
    /// `nr <= 4(1 - τ)^2`
    Tau,
}

pub fn bound_violations(p: &CoverParams) -> Vec<Bound> {
    let nr = TowerElement::from_i64((p.n * p.r) as i64);
    let four = TowerElement::from_i64(4);
    let one = TowerElement::one();
    let sq = |x: &TowerElement| x * x;
    let checks = [
        (Bound::R, &four * &sq(&TowerElement::from_i64(p.r as i64))),
        (Bound::Theta, &four * &sq(&(&one + &p.theta))),
        (Bound::Tau, &four * &sq(&(&one - &p.tau))),
    ];
    checks
        .into_iter()
        .filter(|(_, rhs)| nr.cmp_real(rhs).expect("real tower") == Ordering::Greater)
        .map(|(b, _)| b)
        .collect()
}

pub fn bound_filter(p: &CoverParams) -> bool {
    bound_violations(p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_data() {
        let p = CoverParams::new(5, 3, 1).unwrap();
        assert_eq!((p.delta, p.a1), (0, 1));
        assert_eq!(&p.theta * &p.theta, TowerElement::from_i64(4));
        assert_eq!(p.theta, TowerElement::from_i64(2));
        let q = CoverParams::new(6, 2, 2).unwrap();
        assert!(!q.eigenvalues_rational());
        assert_eq!(&q.theta * &q.theta, TowerElement::from_i64(5));
    }

    #[test]
    fn multiplicities_of_hexagon() {
        let p = CoverParams::new(3, 2, 1).unwrap();
        assert_eq!(p.multiplicities(), (int(2), int(1)));
        assert!(graph_defects(&p).is_empty());
        assert_eq!(graph_defects(&CoverParams::new(4, 2, 1).unwrap()), vec![CoverDefect::OddLocalDegreeSum]);
    }

    #[test]
    fn bounds() {
        assert!(bound_filter(&CoverParams::new(5, 3, 1).unwrap()));
        assert!(bound_filter(&CoverParams::new(3, 2, 1).unwrap()));
        // θ = 1, τ = -15: both 4r^2 = 16 and 4(1 + θ)^2 = 16 fall below nr = 32
        assert_eq!(bound_violations(&CoverParams::new(16, 2, 14).unwrap()), vec![Bound::R, Bound::Theta]);
    }
}
