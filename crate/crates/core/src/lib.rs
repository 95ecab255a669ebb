pub mod algebra;
pub mod covers;
pub mod error;
pub mod graphs;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod srg_hadamard;
pub mod verify;

pub use algebra::{Rational, Tower, TowerElement};
pub use error::{Error, Result};
pub use num_complex::Complex;

/// A matrix over an exact quadratic tower.
pub type ExactMatrix = matrix::LabeledMatrix<TowerElement>;
/// A floating-point complex matrix.
pub type ComplexMatrix<F = f64> = matrix::LabeledMatrix<Complex<F>>;
pub type IntMatrix = matrix::LabeledMatrix<i64>;
