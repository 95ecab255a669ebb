//! Dense square matrices tagged with where they came from.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Free-form metadata: graph family, solution case, family id and so on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Provenance(pub BTreeMap<String, String>);

impl Provenance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledMatrix<T> {
    n: usize,
    data: Vec<T>,
    pub provenance: Provenance,
}

impl<T: Clone> LabeledMatrix<T> {
    /// Row-major entries; panics unless `data.len() == n * n`.
    pub fn new(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n, "expected {} entries", n * n);
        LabeledMatrix { n, data, provenance: Provenance::new() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(n, data)
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> LabeledMatrix<U> {
        LabeledMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone()).with_provenance(self.provenance.clone())
    }

    /// Rows and columns reordered: entry `(i, j)` becomes `(p[i], q[j])`.
    pub fn permuted(&self, p: &[usize], q: &[usize]) -> Self {
        let mut data = self.data.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                data[p[i] * self.n + q[j]] = self.get(i, j).clone();
            }
        }
        LabeledMatrix { n: self.n, data, provenance: self.provenance.clone() }
    }
}

impl<T: Scalar> LabeledMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    /// `W*`, or `None` when some entry's conjugate leaves its field.
    pub fn conj_transpose(&self) -> Option<Self> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).conj()?);
            }
        }
        Some(Self::new(n, data))
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.n, o.n);
        Self::from_fn(n * m, |i, j| self.get(i / m, j / m).mul(o.get(i % m, j % m)))
    }

    pub fn to_c64(&self) -> LabeledMatrix<num_complex::Complex64> {
        self.map(Scalar::to_c64)
    }
}

impl LabeledMatrix<i64> {
    pub fn int_mul(&self, o: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * o.get(k, j)).sum())
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}
