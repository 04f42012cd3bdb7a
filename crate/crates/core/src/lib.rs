//! Bivariate poly-analytic complex Hermite polynomials.
//!
//! The polynomials `H_{m,n,m',n'}(z, w)` are built exactly over ℚ(i,√2) by
//! four independent constructions, and their algebraic, spectral, integral
//! and generating-function identities are checked either exactly or by
//! Gauss–Hermite quadrature.

pub mod error;
pub mod exactring;

pub use error::{Error, Result};
pub mod bchp;
pub mod cli;
pub mod numerics;
pub mod operators;
pub mod uchp;
pub mod verify;

pub use uchp::mehler::Variant;
