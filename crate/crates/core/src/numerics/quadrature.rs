//! Gauss–Hermite rules for the weight `e^{−t²}` and their tensor products.
//!
//! Nodes come from the symmetric tridiagonal Jacobi matrix (Golub–Welsch),
//! are polished by Newton steps on the orthonormal recurrence and then
//! symmetrized; weights use the Christoffel function, which is more accurate
//! than squared eigenvector components for the outer nodes.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A rule `∫_ℝ f(t) e^{−t²} dt ≈ Σ w_i f(t_i)`, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Orthonormal Hermite values `p_0(x), …, p_n(x)` for the weight `e^{−x²}`.
fn orthonormal_values(x: f64, n: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(PI.powf(-0.25));
    if n >= 1 {
        p.push(2f64.sqrt() * x * p[0]);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * p[k] - (kf / (kf + 1.0)).sqrt() * p[k - 1];
        p.push(next);
    }
    p
}

pub fn gauss_hermite(n: usize) -> Result<QuadGrid> {
    if n == 0 {
        return Err(Error::Domain("a Gauss–Hermite rule needs at least one node".into()));
    }
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k, k - 1)] = b;
        jac[(k - 1, k)] = b;
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let p = orthonormal_values(*x, n);
            let dp = (2.0 * n as f64).sqrt() * p[n - 1];
            if dp == 0.0 {
                break;
            }
            *x -= p[n] / dp;
        }
    }
    for i in 0..n / 2 {
        let a = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -a;
        nodes[n - 1 - i] = a;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let p = orthonormal_values(x, n - 1);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    for i in 0..n / 2 {
        let w = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(QuadGrid { nodes, weights })
}

impl QuadGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The same rule for the weight `e^{−a t²}`.
    pub fn for_weight(&self, a: f64) -> QuadGrid {
        let s = a.sqrt();
        QuadGrid {
            nodes: self.nodes.iter().map(|t| t / s).collect(),
            weights: self.weights.iter().map(|w| w / s).collect(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut s = super::kahan::NeumaierSum::new();
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            s.add(w * f(*t));
        }
        s.value()
    }

    /// Tensor rule on `ℂ ≅ ℝ²` for `∫ f(z) e^{−a|z|²} dλ(z)`, row-major in
    /// `(Re z, Im z)`.
    pub fn plane(&self, a: f64) -> Vec<(Complex64, f64)> {
        let g = self.for_weight(a);
        let mut out = Vec::with_capacity(g.len() * g.len());
        for (x, wx) in g.nodes.iter().zip(&g.weights) {
            for (y, wy) in g.nodes.iter().zip(&g.weights) {
                out.push((Complex64::new(*x, *y), wx * wy));
            }
        }
        out
    }
}
