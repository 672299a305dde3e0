//! Linear codes with small hulls built from tridiagonal Toeplitz matrices over
//! finite fields.
//!
//! The crate builds derivative codes `(I | f_1(A) | .. | f_{t-1}(A))` and power
//! codes `(I | T^k)`, decides LCD / one-dimensional-hull status from the closed
//! form spectrum of `A`, and checks every decision against the Gram matrix of
//! the generator.

pub mod galois;
pub mod linalg;
pub mod codes;
pub mod enumerate;
pub mod constructions;
pub mod parse;
pub mod tables;
pub mod search;
