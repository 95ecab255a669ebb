//! The type II condition, the complex Hadamard condition, and a Haagerup-style fingerprint.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::format_rational;
use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;
use crate::scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    TypeIi,
    ComplexHadamard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Float,
}

/// Where a check failed (or came closest to failing, in float mode).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub residual: f64,
    pub what: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub kind: CheckKind,
    pub mode: Mode,
    pub passed: bool,
    pub worst_pair: Option<Witness>,
    pub tolerance: Option<f64>,
}

fn mode_of<T: Scalar>() -> Mode {
    if T::EXACT {
        Mode::Exact
    } else {
        Mode::Float
    }
}

/// Checks an `n x n` table of sums against `n I`. `cell(a, b)` returns the sum.
fn check_gram<T: Scalar>(
    kind: CheckKind,
    n: usize,
    tol: f64,
    what: &str,
    cell: impl Fn(usize, usize) -> T + Sync,
) -> VerificationReport {
    let target = T::from_i64(n as i64);
    let bound = tol * n as f64;
    let rows: Vec<(f64, Option<Witness>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut worst = (f64::NEG_INFINITY, None);
            for b in 0..n {
                let s = cell(a, b);
                let diff = if a == b { s.sub(&target) } else { s };
                let res = diff.to_c64().norm();
                let bad = if T::EXACT { !diff.is_zero() } else { res > bound };
                if res > worst.0 || (bad && worst.1.is_none()) {
                    worst = (res, Some(Witness { row: a, col: b, residual: res, what: what.to_string() }));
                }
                if T::EXACT && bad {
                    let w = Witness { row: a, col: b, residual: res, what: what.to_string() };
                    return (f64::INFINITY, Some(w));
                }
            }
            worst
        })
        .collect();
    let failed = rows.iter().find(|(r, _)| r.is_infinite() && T::EXACT);
    let worst = rows
        .iter()
        .filter(|(_, w)| w.is_some())
        .max_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let (passed, witness) = if T::EXACT {
        (failed.is_none(), failed.and_then(|f| f.1.clone()))
    } else {
        let w = worst.and_then(|w| w.1.clone());
        (w.as_ref().is_none_or(|w| w.residual <= bound), w)
    };
    VerificationReport {
        kind,
        mode: mode_of::<T>(),
        passed,
        worst_pair: witness,
        tolerance: (!T::EXACT).then_some(tol),
    }
}

/// `sum_x W(a,x)/W(b,x) = n δ_ab` for every ordered pair of rows.
pub fn is_type_ii<T: Scalar>(w: &LabeledMatrix<T>, tol: f64) -> Result<VerificationReport> {
    let n = w.size();
    let mut inv = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            inv.push(w.get(i, j).inv().ok_or(Error::ZeroEntry { row: i, col: j })?);
        }
    }
    Ok(check_gram(CheckKind::TypeIi, n, tol, "type II row sum", |a, b| {
        (0..n).fold(T::zero(), |acc, x| acc.add(&w.get(a, x).mul(&inv[b * n + x])))
    }))
}

/// Unimodular entries and `W W* = n I`.
pub fn is_complex_hadamard<T: Scalar>(w: &LabeledMatrix<T>, tol: f64) -> VerificationReport {
    let n = w.size();
    for i in 0..n {
        for j in 0..n {
            let e = w.get(i, j);
            if !e.is_unimodular(tol) {
                return VerificationReport {
                    kind: CheckKind::ComplexHadamard,
                    mode: mode_of::<T>(),
                    passed: false,
                    worst_pair: Some(Witness {
                        row: i,
                        col: j,
                        residual: (e.to_c64().norm() - 1.0).abs(),
                        what: "entry not unimodular".into(),
                    }),
                    tolerance: (!T::EXACT).then_some(tol),
                };
            }
        }
    }
    // unimodular entries always have their conjugate in the field
    let conj: Vec<T> = w.entries().iter().map(|e| e.conj().expect("unimodular")).collect();
    check_gram(CheckKind::ComplexHadamard, n, tol, "W W* entry", |a, b| {
        (0..n).fold(T::zero(), |acc, x| acc.add(&w.get(a, x).mul(&conj[b * n + x])))
    })
}

/// One value of the quadruple-product multiset.
#[derive(Clone, Debug, Serialize)]
pub struct FingerprintEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_polynomial: Option<Vec<String>>,
    pub re: f64,
    pub im: f64,
}

/// Multiset of `W(a,b) W(c,d) conj(W(a,d)) conj(W(c,b))` over `a < c`, `b < d`,
/// together with the conjugate of each value.
///
/// Swapping `b` and `d` conjugates a product, so the conjugates are what make
/// the multiset invariant under column permutations. Row permutations and
/// unimodular diagonal scalings leave it unchanged as well.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub size: usize,
    pub exact: bool,
    pub entries: Vec<FingerprintEntry>,
}

pub fn fingerprint<T: Scalar>(w: &LabeledMatrix<T>) -> Fingerprint {
    let n = w.size();
    let conj: Vec<Option<T>> = w.entries().iter().map(Scalar::conj).collect();
    let exact = T::EXACT && conj.iter().all(Option::is_some);
    let rows: Vec<Vec<FingerprintEntry>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut memo: HashMap<String, Option<Vec<String>>> = HashMap::new();
            let mut out = Vec::new();
            for c in a + 1..n {
                for b in 0..n {
                    for d in b + 1..n {
                        let (value, poly) = if exact {
                            let q = w
                                .get(a, b)
                                .mul(w.get(c, d))
                                .mul(conj[a * n + d].as_ref().unwrap())
                                .mul(conj[c * n + b].as_ref().unwrap());
                            let key = q.exact_key().unwrap();
                            let poly = memo
                                .entry(key)
                                .or_insert_with(|| q.minimal_polynomial().map(|p| p.iter().map(format_rational).collect()))
                                .clone();
                            (q.to_c64(), poly)
                        } else {
                            let q = w.get(a, b).to_c64()
                                * w.get(c, d).to_c64()
                                * w.get(a, d).to_c64().conj()
                                * w.get(c, b).to_c64().conj();
                            (q, None)
                        };
                        for z in [value, value.conj()] {
                            out.push(FingerprintEntry { minimal_polynomial: poly.clone(), re: z.re, im: z.im });
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut entries: Vec<FingerprintEntry> = rows.into_iter().flatten().collect();
    entries.sort_by(|x, y| {
        (&x.minimal_polynomial, grid(x.re), grid(x.im)).cmp(&(&y.minimal_polynomial, grid(y.re), grid(y.im)))
    });
    Fingerprint { size: n, exact, entries }
}

fn grid(x: f64) -> i64 {
    (x / 1e-9).round() as i64
}

impl Fingerprint {
    /// Multiset equality: minimal polynomials must agree when both sides are
    /// exact, values must agree within `tol`.
    pub fn consistent_with(&self, other: &Fingerprint, tol: f64) -> bool {
        if self.size != other.size || self.entries.len() != other.entries.len() {
            return false;
        }
        let use_poly = self.exact && other.exact;
        let cell = tol.max(1e-12);
        let key = |e: &FingerprintEntry, di: i64, dj: i64| {
            let p = if use_poly { e.minimal_polynomial.clone() } else { None };
            (p, (e.re / cell).floor() as i64 + di, (e.im / cell).floor() as i64 + dj)
        };
        let mut pool: HashMap<_, Vec<Complex64>> = HashMap::new();
        for e in &other.entries {
            pool.entry(key(e, 0, 0)).or_default().push(Complex64::new(e.re, e.im));
        }
        'outer: for e in &self.entries {
            let z = Complex64::new(e.re, e.im);
            for di in -1..=1 {
                for dj in -1..=1 {
                    if let Some(bucket) = pool.get_mut(&key(e, di, dj)) {
                        if let Some(pos) = bucket.iter().position(|u| (u - z).norm() <= tol) {
                            bucket.swap_remove(pos);
                            continue 'outer;
                        }
                    }
                }
            }
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_two_hadamard() {
        let h = LabeledMatrix::new(2, vec![c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]);
        assert!(is_complex_hadamard(&h, DEFAULT_TOL).passed);
        assert!(is_type_ii(&h, DEFAULT_TOL).unwrap().passed);
    }

    #[test]
    fn all_ones_fails_with_witness() {
        let j = LabeledMatrix::new(3, vec![c(1., 0.); 9]);
        let r = is_type_ii(&j, DEFAULT_TOL).unwrap();
        assert!(!r.passed);
        let w = r.worst_pair.unwrap();
        assert_ne!(w.row, w.col);
        assert!(!is_complex_hadamard(&j, DEFAULT_TOL).passed);
    }

    #[test]
    fn zero_entry_is_an_error() {
        let z = LabeledMatrix::new(2, vec![c(1., 0.), c(0., 0.), c(1., 0.), c(1., 0.)]);
        assert_eq!(is_type_ii(&z, DEFAULT_TOL), Err(Error::ZeroEntry { row: 0, col: 1 }));
    }
}
