//! Real and complex Hermite functions.
//!
//! Every function here has the form `e^{−|y|²/2} P(y)` on `ℝ` or `ℝ²`; the
//! quadrature code works with the polynomial cofactor `P` and handles the
//! Gaussian analytically.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::uchp::uchp_value;

/// Physicist Hermite values `H_0(x), …, H_n(x)`.
pub fn real_hermite_values(x: f64, n: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    if n >= 1 {
        h.push(2.0 * x);
    }
    for k in 1..n {
        h.push(2.0 * x * h[k] - 2.0 * k as f64 * h[k - 1]);
    }
    h
}

/// Hermite function values `h_k(x) = e^{−x²/2} H_k(x)` for `k ≤ n`, by the
/// recurrence applied to the functions themselves so nothing overflows
/// before the Gaussian is attached.
pub fn real_hermite_fn_values(x: f64, n: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push((-0.5 * x * x).exp());
    if n >= 1 {
        h.push(2.0 * x * h[0]);
    }
    for k in 1..n {
        h.push(2.0 * x * h[k] - 2.0 * k as f64 * h[k - 1]);
    }
    h
}

/// A Hermite function on `ℝ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hermite2 {
    /// `h_{m,n}(t₁ + i t₂) = e^{−|t|²/2} H_{m,n}(t₁ + i t₂)`.
    Complex(u32, u32),
    /// `h_a(t₁) h_b(t₂)` with real Hermite functions.
    Tensor(u32, u32),
}

impl Hermite2 {
    /// Polynomial part `P` with `f(t) = e^{−|t|²/2} P(t)`.
    pub fn cofactor(self, t: [f64; 2]) -> Complex64 {
        match self {
            Hermite2::Complex(m, n) => {
                let u = Complex64::new(t[0], t[1]);
                uchp_value(m, n, u, u.conj())
            }
            Hermite2::Tensor(a, b) => {
                let ha = real_hermite_values(t[0], a as usize)[a as usize];
                let hb = real_hermite_values(t[1], b as usize)[b as usize];
                Complex64::new(ha * hb, 0.0)
            }
        }
    }

    pub fn eval(self, t: [f64; 2]) -> Complex64 {
        (-0.5 * (t[0] * t[0] + t[1] * t[1])).exp() * self.cofactor(t)
    }

    /// `∫_{ℝ²} |f|²`.
    pub fn norm_sqr(self) -> f64 {
        let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
        match self {
            Hermite2::Complex(m, n) => std::f64::consts::PI * fact(m) * fact(n),
            Hermite2::Tensor(a, b) => {
                std::f64::consts::PI * 2f64.powi((a + b) as i32) * fact(a) * fact(b)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(real_hermite_values(0.5, 3), vec![1.0, 1.0, -1.0, -5.0]);
        let h = real_hermite_fn_values(0.5, 3);
        let g = (-0.125f64).exp();
        for (a, b) in h.iter().zip([1.0, 1.0, -1.0, -5.0]) {
            assert!((a - g * b).abs() < 1e-15);
        }
    }

    #[test]
    fn finite_far_out() {
        for x in [-40.0, -25.5, 0.0, 17.0, 40.0] {
            assert!(real_hermite_fn_values(x, 60).iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn complex_matches_polynomial() {
        let f = Hermite2::Complex(1, 1);
        let t = [0.3, -0.4];
        let want = (0.25f64 - 1.0) * (-0.125f64).exp();
        assert!((f.eval(t) - Complex64::new(want, 0.0)).norm() < 1e-15);
    }
}
