use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::algebra::{int, rat, Rational, TowerDescriptor, TowerElement};
use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub a: u64,
    pub c: u64,
}

impl SrgParams {
    /// Checks only the ranges `a <= k < v` and `c <= k`.
    pub fn new(v: u64, k: u64, a: u64, c: u64) -> Result<Self> {
        if !(a <= k && k < v && c <= k) {
            return Err(Error::InvalidParameters(format!("({v},{k},{a},{c}) out of range")));
        }
        Ok(SrgParams { v, k, a, c })
    }

    /// Parses `v,k,a,c`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParameters(format!("expected v,k,a,c, got {s:?}")))?;
        match parts[..] {
            [v, k, a, c] => Self::new(v, k, a, c),
            _ => Err(Error::InvalidParameters(format!("expected four values, got {s:?}"))),
        }
    }

    /// `θ + τ = a - c`.
    pub fn s(&self) -> i64 {
        self.a as i64 - self.c as i64
    }

    /// `θτ = c - k`.
    pub fn p(&self) -> i64 {
        self.c as i64 - self.k as i64
    }

    /// Discriminant of `z^2 - (a-c)z - (k-c)`.
    pub fn disc(&self) -> i64 {
        self.s() * self.s() - 4 * self.p()
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> Result<Self> {
        let (v, k, a, c) = (self.v as i64, self.k as i64, self.a as i64, self.c as i64);
        let kk = v - k - 1;
        let aa = v - 2 - 2 * k + c;
        let cc = v - 2 * k + a;
        if kk < 0 || aa < 0 || cc < 0 {
            return Err(Error::InvalidParameters(format!("complement of {self} has a negative entry")));
        }
        Self::new(v as u64, kk as u64, aa as u64, cc as u64)
    }

    /// Connected with connected complement.
    pub fn is_primitive(&self) -> bool {
        self.c > 0 && self.c < self.k
    }

    /// `(v, (v-1)/2, (v-5)/4, (v-1)/4)`.
    pub fn is_conference(&self) -> bool {
        2 * self.k + 1 == self.v && 4 * self.a + 5 == self.v && 4 * self.c + 1 == self.v
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.a, self.c)
    }
}

/// Restricted eigenvalues `θ >= τ` and their multiplicities.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub k: i64,
    pub theta: TowerElement,
    pub tau: TowerElement,
    pub m_theta: Rational,
    pub m_tau: Rational,
    pub conference: bool,
}

pub fn spectrum(p: &SrgParams) -> Result<Spectrum> {
    let disc = p.disc();
    if disc < 0 {
        return Err(Error::InfeasibleParameters(format!("{p}: non-real eigenvalues")));
    }
    if disc == 0 {
        return Err(Error::InfeasibleParameters(format!("{p}: repeated eigenvalue")));
    }
    let t = TowerDescriptor::real_quadratic(int(disc))?;
    let root = t.sqrt_d1();
    let half = TowerElement::rational(rat(1, 2));
    let s = TowerElement::from_i64(p.s());
    let theta = (&s + &root) * &half;
    let tau = (&s - &root) * &half;
    let v1 = TowerElement::from_i64(p.v as i64 - 1);
    let k = TowerElement::from_i64(p.k as i64);
    let m_theta = ((&v1 * &tau + &k) / (&tau - &theta)).as_rational();
    let m_tau = ((&v1 * &theta + &k) / (&theta - &tau)).as_rational();
    let (Some(m_theta), Some(m_tau)) = (m_theta, m_tau) else {
        return Err(Error::InfeasibleParameters(format!("{p}: irrational multiplicities")));
    };
    Ok(Spectrum { k: p.k as i64, theta, tau, m_theta, m_tau, conference: p.is_conference() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityReason {
    OutOfRange,
    /// `k(k-a-1) != (v-k-1)c`.
    CountingIdentity,
    /// `v(k + θτ) != (k-θ)(k-τ)`.
    VIdentity,
    NonRealEigenvalues,
    MultiplicityNotIntegral,
    MultiplicityNegative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    pub reasons: Vec<FeasibilityReason>,
}

pub fn is_feasible(p: &SrgParams) -> Feasibility {
    use FeasibilityReason::*;
    let mut reasons = Vec::new();
    if SrgParams::new(p.v, p.k, p.a, p.c).is_err() {
        reasons.push(OutOfRange);
        return Feasibility { feasible: false, reasons };
    }
    let (v, k, a, c) = (p.v as i128, p.k as i128, p.a as i128, p.c as i128);
    if k * (k - a - 1) != (v - k - 1) * c {
        reasons.push(CountingIdentity);
    }
    if v * c != k * k - (a - c) * k + (c - k) {
        reasons.push(VIdentity);
    }
    if p.disc() < 0 {
        reasons.push(NonRealEigenvalues);
    } else if p.disc() > 0 {
        match spectrum(p) {
            Ok(sp) => {
                if !sp.m_theta.is_integer() || !sp.m_tau.is_integer() {
                    reasons.push(MultiplicityNotIntegral);
                }
                if sp.m_theta.is_negative() || sp.m_tau.is_negative() {
                    reasons.push(MultiplicityNegative);
                }
            }
            Err(_) => reasons.push(MultiplicityNotIntegral),
        }
    }
    Feasibility { feasible: reasons.is_empty(), reasons }
}

/// Feasible primitive parameter sets with `v <= v_max`, in lexicographic order.
pub fn feasible_primitive(v_max: u64) -> Vec<SrgParams> {
    let mut out = Vec::new();
    for v in 5..=v_max {
        for k in 1..v - 1 {
            for c in 1..k {
                // a is forced by k(k - a - 1) = (v - k - 1)c
                let m = (v - k - 1) * c;
                if m % k != 0 || m / k > k - 1 {
                    continue;
                }
                let p = SrgParams { v, k, a: k - 1 - m / k, c };
                if integral_multiplicities(&p) && is_feasible(&p).feasible {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out
}

/// Cheap integer test that rules out most candidates before the exact check.
fn integral_multiplicities(p: &SrgParams) -> bool {
    let (v, k, s, disc) = (p.v as i64, p.k as i64, p.s(), p.disc());
    if disc <= 0 {
        return false;
    }
    let r = (disc as f64).sqrt().round() as i64;
    if r * r != disc {
        // irrational eigenvalues need equal multiplicities
        return 2 * k + (v - 1) * s == 0;
    }
    if (s + r) % 2 != 0 {
        return false;
    }
    let (theta, tau) = ((s + r) / 2, (s - r) / 2);
    ((v - 1) * tau + k) % (tau - theta) == 0
}

/// Brute-force neighborhood counting over all pairs.
pub fn srg_params(g: &Graph) -> Result<SrgParams> {
    let v = g.order();
    let fail = |u, w, reason: String| Err(Error::NotStronglyRegular { u, v: w, reason });
    if v < 2 {
        return fail(0, 0, "fewer than two vertices".into());
    }
    if g.is_complete() {
        return fail(0, 1, "complete graph".into());
    }
    let k = g.degree(0);
    for u in 1..v {
        if g.degree(u) != k {
            return fail(0, u, format!("degrees {} and {}", k, g.degree(u)));
        }
    }
    let (mut a, mut c) = (None, None);
    for u in 0..v {
        for w in u + 1..v {
            let cn = g.common_neighbors(u, w);
            let (slot, what) = if g.adjacent(u, w) { (&mut a, "adjacent") } else { (&mut c, "non-adjacent") };
            match *slot {
                None => *slot = Some(cn),
                Some(x) if x != cn => {
                    return fail(u, w, format!("{what} pair has {cn} common neighbours, expected {x}"));
                }
                _ => {}
            }
        }
    }
    SrgParams::new(v as u64, k as u64, a.unwrap_or(0) as u64, c.unwrap_or(0) as u64)
}

/// `S = J - I - 2A`.
pub fn seidel_matrix(g: &Graph) -> LabeledMatrix<i64> {
    LabeledMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            0
        } else if g.adjacent(i, j) {
            -1
        } else {
            1
        }
    })
}

impl Spectrum {
    /// Numeric values of `(θ, τ)`.
    pub fn theta_tau_f64(&self) -> (f64, f64) {
        (self.theta.embed_complex().re, self.tau.embed_complex().re)
    }

    pub fn multiplicities_integral(&self) -> bool {
        self.m_theta.is_integer() && self.m_tau.is_integer() && !self.m_theta.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_parameters() {
        let p = SrgParams::new(10, 3, 0, 1).unwrap();
        assert_eq!(p.complement().unwrap(), SrgParams::new(10, 6, 3, 4).unwrap());
        assert_eq!(p.complement().unwrap().complement().unwrap(), p);
    }

    #[test]
    fn parse_params() {
        assert_eq!(SrgParams::parse("15, 8,4,4").unwrap(), SrgParams { v: 15, k: 8, a: 4, c: 4 });
        assert!(SrgParams::parse("15,8,4").is_err());
        assert!(SrgParams::parse("5,6,0,0").is_err());
    }

    #[test]
    fn infeasible_reasons() {
        let f = is_feasible(&SrgParams { v: 8, k: 3, a: 0, c: 1 });
        assert!(!f.feasible);
        assert!(f.reasons.contains(&FeasibilityReason::MultiplicityNotIntegral));
    }
}
