//! Exact Gaussian-rational coefficients and sparse multivariate polynomials.

mod gaussian;
mod monomial;
mod polynomial;

pub use gaussian::GaussianRational;
pub use monomial::Monomial;
pub use polynomial::{Degree, Polynomial};
