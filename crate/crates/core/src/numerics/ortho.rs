//! Orthogonality integrals for `H_{m,n}` on `ℂ` and `H_M` on `ℂ²`.
//!
//! The bivariate integral against `e^{−2(|z|²+|w|²)}` is computed through
//! the change of variables `(z, w) ↦ (ξ, ξ̃)`, whose real Jacobian is 4 and
//! which turns the weight into `e^{−|ξ|²−|ξ̃|²}`. A direct four-dimensional
//! rule is kept as an independent cross-check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::kahan::ComplexSum;
use super::quadrature::{gauss_hermite, QuadGrid};
use crate::bchp::bchp_value;
use crate::error::Result;
use crate::exactring::MultiIndex4;
use crate::uchp::uchp_values;

/// `(π²/4) M!`.
pub fn bchp_norm_sqr(m: MultiIndex4) -> f64 {
    PI * PI / 4.0 * m.factorial_f64()
}

/// `π m! n!`.
pub fn uchp_norm_sqr(m: u32, n: u32) -> f64 {
    PI * MultiIndex4::new(m, n, 0, 0).factorial_f64()
}

/// UCHP values `H_{j,k}(a, b)` with `j, k ≤ max` at every node of a plane
/// rule; `conjugate_args` evaluates at `(ū, u)` instead of `(u, ū)`.
struct PlaneTable {
    weights: Vec<f64>,
    values: Vec<Vec<Vec<Complex64>>>,
}

impl PlaneTable {
    fn new(grid: &QuadGrid, max: usize, conjugate_args: bool) -> Self {
        let plane = grid.plane(1.0);
        let values = plane
            .iter()
            .map(|(u, _)| {
                if conjugate_args {
                    uchp_values(u.conj(), *u, max, max)
                } else {
                    uchp_values(*u, u.conj(), max, max)
                }
            })
            .collect();
        PlaneTable {
            weights: plane.iter().map(|(_, w)| *w).collect(),
            values,
        }
    }

    /// `∫ H_{a} conj(H_{b}) e^{−|u|²} dλ`.
    fn inner(&self, a: (u32, u32), b: (u32, u32)) -> Complex64 {
        let mut s = ComplexSum::new();
        for (w, v) in self.weights.iter().zip(&self.values) {
            s.add(*w * v[a.0 as usize][a.1 as usize] * v[b.0 as usize][b.1 as usize].conj());
        }
        s.value()
    }
}

/// `∫_ℂ H_{m,n}(u, ū) conj(H_{j,k}(u, ū)) e^{−|u|²} dλ(u)`.
pub fn uchp_ortho_integral(mn: (u32, u32), jk: (u32, u32), nodes: usize) -> Result<Complex64> {
    let grid = gauss_hermite(nodes)?;
    let max = mn.0.max(mn.1).max(jk.0).max(jk.1) as usize;
    Ok(PlaneTable::new(&grid, max, false).inner(mn, jk))
}

/// Gram matrix of `H_{m,n}` over the given index pairs.
pub fn uchp_gram(indices: &[(u32, u32)], nodes: usize) -> Result<Vec<Vec<Complex64>>> {
    let grid = gauss_hermite(nodes)?;
    let max = indices.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    let t = PlaneTable::new(&grid, max, false);
    Ok(indices
        .par_iter()
        .map(|&a| indices.iter().map(|&b| t.inner(a, b)).collect())
        .collect())
}

/// `∫_{ℂ²} H_M conj(H_N) e^{−2(|z|²+|w|²)} dλ` by the factorized rule.
pub fn ortho_integral(m: MultiIndex4, n: MultiIndex4, nodes: usize) -> Result<Complex64> {
    Ok(bchp_gram(&[m, n], nodes)?[0][1])
}

/// Gram matrix of `H_M` over the given multi-indices by the factorized rule:
/// `¼ ⟨H_{m,n}, H_{j,k}⟩_ξ · ⟨H_{m',n'}(η̄, η), H_{j',k'}(η̄, η)⟩_η`.
pub fn bchp_gram(indices: &[MultiIndex4], nodes: usize) -> Result<Vec<Vec<Complex64>>> {
    let grid = gauss_hermite(nodes)?;
    let max = indices
        .iter()
        .map(|m| m.m.max(m.n).max(m.mp).max(m.np))
        .max()
        .unwrap_or(0) as usize;
    let first = PlaneTable::new(&grid, max, false);
    let second = PlaneTable::new(&grid, max, true);
    Ok(indices
        .par_iter()
        .map(|a| {
            indices
                .iter()
                .map(|b| {
                    0.25 * first.inner((a.m, a.n), (b.m, b.n)) * second.inner((a.mp, a.np), (b.mp, b.np))
                })
                .collect()
        })
        .collect())
}

/// The same integral by a plain tensor rule in `(Re z, Im z, Re w, Im w)`.
pub fn ortho_integral_direct(m: MultiIndex4, n: MultiIndex4, nodes: usize) -> Result<Complex64> {
    let plane = gauss_hermite(nodes)?.plane(2.0);
    let mut s = ComplexSum::new();
    for (z, wz) in &plane {
        for (w, ww) in &plane {
            s.add(wz * ww * bchp_value(m, *z, *w) * bchp_value(n, *z, *w).conj());
        }
    }
    Ok(s.value())
}
