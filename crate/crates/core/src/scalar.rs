//! The scalar abstraction shared by exact and floating-point matrices.

use std::fmt::Debug;

use num_complex::{Complex, Complex64};
use num_traits::Float;

use crate::algebra::{Rational, TowerElement};

/// Field operations needed by the verifiers and builders.
///
/// Implemented for exact tower elements and for `Complex<F>` with `F: Float`.
pub trait Scalar: Clone + Debug + Send + Sync + 'static {
    /// True when equality and unimodularity are decided exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Complex conjugate; `None` only for exact values whose conjugate leaves the field.
    fn conj(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// `|u| = 1`; `tol` is ignored when `EXACT`.
    fn is_unimodular(&self, tol: f64) -> bool;
    /// Distance-like comparison; exact types require equality.
    fn within(&self, o: &Self, tol: f64) -> bool;
    fn to_c64(&self) -> Complex64;
    /// Monic minimal polynomial over Q, for exact values.
    fn minimal_polynomial(&self) -> Option<Vec<Rational>> {
        None
    }
    /// A string identifying the exact value within its tower.
    fn exact_key(&self) -> Option<String> {
        None
    }
}

impl Scalar for TowerElement {
    const EXACT: bool = true;

    fn zero() -> Self {
        TowerElement::zero()
    }
    fn one() -> Self {
        TowerElement::one()
    }
    fn from_i64(n: i64) -> Self {
        TowerElement::from_i64(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn conj(&self) -> Option<Self> {
        TowerElement::conj(self)
    }
    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }
    fn is_unimodular(&self, _tol: f64) -> bool {
        TowerElement::is_unimodular(self)
    }
    fn within(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }
    fn to_c64(&self) -> Complex64 {
        self.embed_complex()
    }
    fn minimal_polynomial(&self) -> Option<Vec<Rational>> {
        Some(TowerElement::minimal_polynomial(self))
    }
    fn exact_key(&self) -> Option<String> {
        Some(format!("{self:?}"))
    }
}

impl<F: Float + Debug + Send + Sync + 'static> Scalar for Complex<F> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(F::zero(), F::zero())
    }
    fn one() -> Self {
        Complex::new(F::one(), F::zero())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(F::from(n).unwrap(), F::zero())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex::inv(self))
    }
    fn conj(&self) -> Option<Self> {
        Some(Complex::conj(self))
    }
    fn is_zero(&self) -> bool {
        self.re == F::zero() && self.im == F::zero()
    }
    fn is_unimodular(&self, tol: f64) -> bool {
        (self.norm() - F::one()).abs() <= F::from(tol).unwrap()
    }
    fn within(&self, o: &Self, tol: f64) -> bool {
        (self - o).norm() <= F::from(tol).unwrap()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

/// `serde(with = ...)` adapter writing a `Complex64` as `{"re": .., "im": ..}`.
pub mod serde_c64 {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }
}
