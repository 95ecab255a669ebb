use super::Graph;
use crate::covers::CoverParams;
use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;

/// `(A1, A2, A3)` for a graph of diameter exactly three.
pub fn distance_matrices(g: &Graph) -> Result<[LabeledMatrix<i64>; 3]> {
    let d = g.distances();
    let diam = g.diameter();
    if diam != Some(3) {
        return Err(Error::WrongDiameter(diam));
    }
    let n = g.order();
    Ok([1, 2, 3].map(|k| LabeledMatrix::from_fn(n, |i, j| (d[i][j] == Some(k)) as i64)))
}

pub fn cover_params(g: &Graph) -> Result<CoverParams> {
    let [a1m, a2m, a3m] = distance_matrices(g)?;
    let order = g.order();
    let fibre = |u: usize| -> Vec<usize> { (0..order).filter(|&w| w == u || *a3m.get(u, w) == 1).collect() };
    let r = fibre(0).len();
    for u in 0..order {
        let f = fibre(u);
        if f.len() != r {
            return Err(Error::NotAntipodal(format!("classes of sizes {r} and {}", f.len())));
        }
        for &w in &f {
            if fibre(w) != f {
                return Err(Error::NotAntipodal(format!("distance-3 relation not transitive at {u}, {w}")));
            }
        }
    }
    let n = order / r;
    for u in 0..order {
        if g.degree(u) != n - 1 {
            return Err(Error::NotDistanceRegular(format!("vertex {u} has degree {}, expected {}", g.degree(u), n - 1)));
        }
    }
    let constant = |m: &LabeledMatrix<i64>, what: &str| -> Result<usize> {
        let mut val = None;
        for u in 0..order {
            for w in u + 1..order {
                if *m.get(u, w) == 1 {
                    let cn = g.common_neighbors(u, w);
                    match val {
                        None => val = Some(cn),
                        Some(x) if x != cn => {
                            return Err(Error::NotDistanceRegular(format!(
                                "{what} pair ({u}, {w}) has {cn} common neighbours, expected {x}"
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(val.unwrap_or(0))
    };
    let c2 = constant(&a2m, "distance-2")?;
    let a1 = constant(&a1m, "adjacent")?;
    let p = CoverParams::new(n as u64, r as u64, c2 as u64)?;
    if p.a1 != a1 as i64 {
        return Err(Error::NotDistanceRegular(format!("a1 = {a1}, expected {}", p.a1)));
    }
    Ok(p)
}
