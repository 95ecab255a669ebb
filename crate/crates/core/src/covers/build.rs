use super::params::CoverParams;
use super::recognize::ExactTriple;
use crate::algebra::{common_tower, TowerElement};
use crate::error::{Error, Result};
use crate::graphs::{cover_params, distance_matrices, Graph};
use crate::matrix::{LabeledMatrix, Provenance};
use crate::scalar::Scalar;

/// `W = I + xA1 + yA2 + zA3` over the distance matrices of a diameter-3 graph.
pub fn build_cover_w_with<T: Scalar>(g: &Graph, x: &T, y: &T, z: &T) -> Result<LabeledMatrix<T>> {
    let [a1, a2, _] = distance_matrices(g)?;
    Ok(LabeledMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            T::one()
        } else if *a1.get(i, j) == 1 {
            x.clone()
        } else if *a2.get(i, j) == 1 {
            y.clone()
        } else {
            z.clone()
        }
    }))
}

/// Exact `W` for a certified root, after checking the graph has parameters `p`.
pub fn build_cover_w(g: &Graph, p: &CoverParams, t: &ExactTriple) -> Result<LabeledMatrix<TowerElement>> {
    let q = cover_params(g).map_err(|e| Error::SolutionGraphMismatch(e.to_string()))?;
    if q.triple() != p.triple() {
        return Err(Error::SolutionGraphMismatch(format!("graph is a {:?} cover, solution is for {:?}", q.triple(), p.triple())));
    }
    let tower = common_tower(&common_tower(t.x.tower(), t.y.tower())?, t.z.tower())?;
    let [x, y, z] = [&t.x, &t.y, &t.z].map(|w| w.lift_to(&tower));
    let w = build_cover_w_with(g, &x?, &y?, &z?)?;
    let (n, r, c2) = p.triple();
    Ok(w.with_provenance(Provenance::new().with("construction", "cover").with("params", format!("{n},{r},{c2}"))))
}
