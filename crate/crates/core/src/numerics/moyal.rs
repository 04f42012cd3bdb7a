//! The Moyal identity `⟨V_2(f,g), V_2(φ,ψ)⟩ = ⟨f,φ⟩ ⟨ψ,g⟩` for Hermite
//! functions on `ℝ²`, with `⟨a, b⟩ = ∫ a conj(b)`.
//!
//! For Hermite functions `V_2(f,g)(p,q)` is `e^{−(|p|²+|q|²)/4}` times a
//! polynomial, so the outer integral over `ℝ⁴` uses a Gauss–Hermite rule for
//! `e^{−(|p|²+|q|²)/2}` and the scaled transform
//! `e^{(|p|²+|q|²)/4} V_2(f,g)(p,q)` at its nodes.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::hermite_fn::Hermite2;
use super::kahan::ComplexSum;
use super::quadrature::{gauss_hermite, QuadGrid};
use crate::error::Result;

/// `⟨f, g⟩_{L²(ℝ²)}`.
pub fn inner2(f: Hermite2, g: Hermite2, grid: &QuadGrid) -> Complex64 {
    let mut s = ComplexSum::new();
    for (y1, w1) in grid.nodes.iter().zip(&grid.weights) {
        for (y2, w2) in grid.nodes.iter().zip(&grid.weights) {
            s.add(w1 * w2 * f.cofactor([*y1, *y2]) * g.cofactor([*y1, *y2]).conj());
        }
    }
    s.value()
}

/// Scaled transforms `e^{(|p|²+|q|²)/4} V_2(f, g)(p, q)` for every pair of
/// `funcs` at one phase-space point.
fn scaled_transforms(funcs: &[Hermite2], p: [f64; 2], q: [f64; 2], inner: &QuadGrid) -> Vec<Complex64> {
    let k = funcs.len();
    let mut acc = vec![ComplexSum::new(); k * k];
    let mut plus = vec![Complex64::new(0.0, 0.0); k];
    let mut minus = vec![Complex64::new(0.0, 0.0); k];
    for (y1, w1) in inner.nodes.iter().zip(&inner.weights) {
        for (y2, w2) in inner.nodes.iter().zip(&inner.weights) {
            let yp = [y1 + p[0] / 2.0, y2 + p[1] / 2.0];
            let ym = [y1 - p[0] / 2.0, y2 - p[1] / 2.0];
            for (i, f) in funcs.iter().enumerate() {
                plus[i] = f.cofactor(yp);
                minus[i] = f.cofactor(ym).conj();
            }
            let phase = Complex64::from_polar(w1 * w2, y1 * q[0] + y2 * q[1]);
            for i in 0..k {
                let a = phase * plus[i];
                for j in 0..k {
                    acc[i * k + j].add(a * minus[j]);
                }
            }
        }
    }
    let scale = ((q[0] * q[0] + q[1] * q[1]) / 4.0).exp() / (2.0 * PI);
    acc.iter().map(|s| s.value() * scale).collect()
}

/// Both sides of the Moyal identity for every quadruple drawn from `funcs`.
pub struct MoyalTable {
    pub funcs: Vec<Hermite2>,
    lhs: HashMap<[usize; 4], Complex64>,
    inner: Vec<Complex64>,
}

impl MoyalTable {
    /// `outer_nodes` per phase-space dimension, `inner_nodes` per dimension
    /// for each transform.
    pub fn new(funcs: &[Hermite2], outer_nodes: usize, inner_nodes: usize) -> Result<Self> {
        let k = funcs.len();
        let inner = gauss_hermite(inner_nodes)?;
        let outer = gauss_hermite(outer_nodes)?.for_weight(0.5);
        let mut points = Vec::new();
        for (a, wa) in outer.nodes.iter().zip(&outer.weights) {
            for (b, wb) in outer.nodes.iter().zip(&outer.weights) {
                for (c, wc) in outer.nodes.iter().zip(&outer.weights) {
                    for (d, wd) in outer.nodes.iter().zip(&outer.weights) {
                        points.push(([*a, *b], [*c, *d], wa * wb * wc * wd));
                    }
                }
            }
        }
        let values: Vec<Vec<Complex64>> = points
            .par_iter()
            .map(|(p, q, _)| scaled_transforms(funcs, *p, *q, &inner))
            .collect();
        let mut lhs = HashMap::new();
        for fi in 0..k {
            for gi in 0..k {
                for pi in 0..k {
                    for si in 0..k {
                        let mut s = ComplexSum::new();
                        for ((_, _, w), v) in points.iter().zip(&values) {
                            s.add(*w * v[fi * k + gi] * v[pi * k + si].conj());
                        }
                        lhs.insert([fi, gi, pi, si], s.value());
                    }
                }
            }
        }
        let inner_products = (0..k * k)
            .map(|ij| inner2(funcs[ij / k], funcs[ij % k], &inner))
            .collect();
        Ok(MoyalTable {
            funcs: funcs.to_vec(),
            lhs,
            inner: inner_products,
        })
    }

    /// `(⟨V(f,g), V(φ,ψ)⟩, ⟨f,φ⟩⟨ψ,g⟩)` for indices into `funcs`.
    pub fn sides(&self, f: usize, g: usize, phi: usize, psi: usize) -> (Complex64, Complex64) {
        let k = self.funcs.len();
        let rhs = self.inner[f * k + phi] * self.inner[psi * k + g];
        (self.lhs[&[f, g, phi, psi]], rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let funcs = [Hermite2::Complex(0, 0), Hermite2::Complex(1, 0), Hermite2::Complex(0, 1)];
        let t = MoyalTable::new(&funcs, 8, 24).unwrap();
        let (l, r) = t.sides(0, 0, 0, 0);
        assert!((r - Complex64::new(PI * PI, 0.0)).norm() < 1e-12);
        assert!((l - r).norm() < 1e-9);
        let (l, r) = t.sides(1, 0, 2, 0);
        assert!(l.norm() < 1e-9 && r.norm() < 1e-12);
        let (l, r) = t.sides(1, 0, 1, 0);
        assert!(r.norm() > 1.0 && (l - r).norm() < 1e-9);
    }
}
