//! Exact arithmetic: rationals, the coefficient field ℚ(i,√2), sparse
//! polynomials in conjugate variable pairs, and multi-indices.

mod coeff;
mod json;
mod multi_index;
mod poly;
mod rational;

pub use coeff::CoeffQi2;
pub use multi_index::MultiIndex4;
pub use poly::{Exp, Poly, Poly2, Poly4, Var, VARS2, VARS4};
pub use rational::{binomial, factorial, Rational};
