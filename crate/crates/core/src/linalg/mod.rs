//! Matrices and polynomials over finite fields, tridiagonal Toeplitz
//! constructors and their closed-form spectra.

pub mod matrix;
pub mod poly;
pub mod tridiag;

pub use matrix::{MatrixError, MatrixOverField};
pub use poly::{dickson_eval, DensePolynomial};
pub use tridiag::{
    char_poly_value, eigen_spectrum, eigen_spectrum_in, spectrum_context, BlockDecomposition,
    SpectrumError, SpectrumMultiset, TridiagKind, TridiagonalSpec,
};
