//! Matrices built from solutions: `W = I + xA(X) + yA(X̄)`, the Potts model, and the
//! conference-matrix substitution.

use num_complex::Complex64;

use super::solve::{sqrt_int, SolutionRecord};
use crate::algebra::{common_tower, int, TowerDescriptor, TowerElement};
use crate::error::{ConferenceDefect, Error, Result};
use crate::graphs::{srg_params, Graph};
use crate::matrix::{LabeledMatrix, Provenance};
use crate::scalar::Scalar;

/// `I + xA + y(J - I - A)` for any scalar type.
pub fn build_w_with<T: Scalar>(g: &Graph, x: &T, y: &T) -> LabeledMatrix<T> {
    LabeledMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            T::one()
        } else if g.adjacent(i, j) {
            x.clone()
        } else {
            y.clone()
        }
    })
}

/// Exact `W` for a solution record, over the common tower of `x` and `y`.
pub fn build_w(g: &Graph, s: &SolutionRecord) -> Result<LabeledMatrix<TowerElement>> {
    let p = srg_params(g).map_err(|e| Error::SolutionGraphMismatch(e.to_string()))?;
    if p != s.params {
        return Err(Error::SolutionGraphMismatch(format!("graph has {p}, solution is for {}", s.params)));
    }
    let tower = common_tower(s.x.tower(), s.y.tower())?;
    let x = s.x.lift_to(&tower)?;
    let y = s.y.lift_to(&tower)?;
    let one = TowerElement::one().lift_to(&tower)?;
    let w = LabeledMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            one.clone()
        } else if g.adjacent(i, j) {
            x.clone()
        } else {
            y.clone()
        }
    });
    Ok(w.with_provenance(
        Provenance::new()
            .with("params", p)
            .with("case", format!("{:?}", s.case))
            .with("x", &s.x)
            .with("y", &s.y),
    ))
}

/// One Potts matrix `-u^3 I + u^{-1}(J - I)` of order `n`.
#[derive(Clone, Debug)]
pub struct PottsMatrix {
    pub u: Complex64,
    /// `u^4 = ((n-2) ± √(n^2-4n))/2`.
    pub u4: TowerElement,
    /// `u W = -u^4 I + (J - I)`, exact; scaling preserves the type II property.
    pub scaled: LabeledMatrix<TowerElement>,
    pub w: LabeledMatrix<Complex64>,
}

/// Every root `u` of `u^8 - (n-2)u^4 + 1`, with its matrix.
pub fn potts(n: usize) -> Result<Vec<PottsMatrix>> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("potts({n}) needs n >= 2")));
    }
    let ni = n as i64;
    let root = sqrt_int(ni * ni - 4 * ni);
    let mut out = Vec::new();
    let mut seen: Vec<TowerElement> = Vec::new();
    for sign in [1, -1] {
        let u4 = (TowerElement::from_i64(ni - 2) + &root * &TowerElement::from_i64(sign))
            * TowerElement::rational(crate::algebra::rat(1, 2));
        if seen.contains(&u4) {
            continue;
        }
        seen.push(u4.clone());
        let neg_u4 = -&u4;
        let one = TowerElement::one().lift_to(u4.tower())?;
        let scaled = LabeledMatrix::from_fn(n, |i, j| if i == j { neg_u4.clone() } else { one.clone() })
            .with_provenance(Provenance::new().with("construction", "potts").with("u^4", &u4));
        let base = u4.embed_complex().powf(0.25);
        for k in 0..4 {
            let u = base * Complex64::i().powu(k);
            let diag = -u * u * u;
            let off = u.inv();
            let w = LabeledMatrix::from_fn(n, |i, j| if i == j { diag } else { off })
                .with_provenance(Provenance::new().with("construction", "potts").with("u", u));
            out.push(PottsMatrix { u, u4: u4.clone(), scaled: scaled.clone(), w });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Substitutes `0 -> 1`, `1 -> x`, `-1 -> conj(x)` in a regular conference matrix of
/// order `4θ^2 + 4θ + 2`, with `x = (-1 ± i√(4θ^2(θ+1)^2 - 1)) / (2θ(θ+1))`.
///
/// Row sums may be `2θ + 1` or `-(2θ + 1)`; the latter is the Seidel matrix of the complement.
pub fn conference_to_hadamard(c: &LabeledMatrix<i64>, theta: u64, branch: Branch) -> Result<LabeledMatrix<TowerElement>> {
    let defect = |d| Err(Error::NotRegularConference(d));
    let n = c.size();
    if !c.is_symmetric() {
        return defect(ConferenceDefect::NotSymmetric);
    }
    for i in 0..n {
        if *c.get(i, i) != 0 {
            return defect(ConferenceDefect::NonzeroDiagonal);
        }
        for j in 0..n {
            if i != j && c.get(i, j).abs() != 1 {
                return defect(ConferenceDefect::BadEntry);
            }
        }
    }
    let sq = c.int_mul(c);
    let nn = n as i64;
    if !(0..n).all(|i| (0..n).all(|j| *sq.get(i, j) == if i == j { nn - 1 } else { 0 })) {
        return defect(ConferenceDefect::NotConference);
    }
    let sums = c.row_sums();
    if sums.iter().any(|s| *s != sums[0]) {
        return defect(ConferenceDefect::RowSumsNotConstant);
    }
    let t = theta as i64;
    if theta == 0 || nn != 4 * t * t + 4 * t + 2 || sums[0].abs() != 2 * t + 1 {
        return defect(ConferenceDefect::OrderMismatch);
    }
    let m = 2 * t * (t + 1);
    let tower = TowerDescriptor::new(int(0), [int(m * m - 1), int(0)])?;
    let sign = if branch == Branch::Plus { 1 } else { -1 };
    let x = (TowerElement::from_i64(-1) + tower.i_sqrt_d2() * TowerElement::from_i64(sign)) / TowerElement::from_i64(m);
    let xb = x.conj().expect("closed under conjugation");
    let one = TowerElement::one().lift_to(&tower)?;
    let w = LabeledMatrix::from_fn(n, |i, j| match c.get(i, j) {
        0 => one.clone(),
        1 => x.clone(),
        _ => xb.clone(),
    });
    Ok(w.with_provenance(Provenance::new().with("construction", "conference").with("theta", theta).with("x", &x)))
}
