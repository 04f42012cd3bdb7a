//! Quadrature, Hermite functions, Fourier–Wigner transforms and the
//! integral identities checked with them.

pub mod hermite_fn;
pub mod intrep;
pub mod kahan;
pub mod moyal;
pub mod ortho;
pub mod quadrature;
pub mod wigner;
