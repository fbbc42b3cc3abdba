//! Exact symbolic toolkit for Yagzhev-form polynomial maps `F = x + H` over
//! the Gaussian rationals: polynomial arithmetic, Jacobians and Hessians,
//! potential conversion, coordinate irreducibility and seeded instance
//! generation.

pub mod calculus;
pub mod error;
pub mod irreducibility;
pub mod poly;
pub mod text;
pub mod yagzhev;

pub use error::{Error, Result};
pub use poly::{Degree, GaussianRational, Monomial, Polynomial};
