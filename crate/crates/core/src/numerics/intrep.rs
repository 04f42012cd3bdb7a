//! Integral representations of `H_M` over `ℂ²`.
//!
//! With `⟨a, b⟩ = a b̄`, the kernel is
//! `E(u,v|X,Y) = exp(−μ|u|² − μ'|v|² + α⟨u,X⟩ − β conj⟨u,X⟩ + α'⟨v,Y⟩ − β' conj⟨v,Y⟩)`
//! with `μ = αβ > 0`, `μ' = α'β' > 0`. The Gaussian part is absorbed into a
//! tensor Gauss–Hermite rule on `ℂ²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kahan::ComplexSum;
use super::quadrature::gauss_hermite;
use crate::error::{Error, Result};
use crate::exactring::MultiIndex4;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which representation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum IntRepForm {
    /// `H_M(z, w)` from monomials `u^m ū^n v^{m'} v̄^{n'}` and the kernel at
    /// `X = z + iw`, `Y = z̄ + iw̄`.
    Plain {
        alpha: Complex64,
        beta: Complex64,
        alpha_p: Complex64,
        beta_p: Complex64,
    },
    /// `H_M(z/√2, w/√2)` from the auxiliary monomials in `(u, v)` and the
    /// kernel with primed parameters equal to unprimed, at `X = z`, `Y = w`.
    Aux { alpha: Complex64, beta: Complex64 },
    /// The `α = −β = i` case of [`IntRepForm::Aux`] written out directly.
    Special,
}

impl IntRepForm {
    pub fn id(&self) -> &'static str {
        match self {
            IntRepForm::Plain { .. } => "IntRep0",
            IntRepForm::Aux { .. } => "IntRep",
            IntRepForm::Special => "IntReppc",
        }
    }

    /// Point at which the representation reproduces `H_M`.
    pub fn target(&self, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
        match self {
            IntRepForm::Plain { .. } => (z, w),
            _ => {
                let s = 2f64.sqrt();
                (z / s, w / s)
            }
        }
    }
}

fn positive_product(a: Complex64, b: Complex64) -> Result<f64> {
    let mu = a * b;
    if mu.im.abs() > 1e-12 * mu.norm() || mu.re <= 0.0 {
        return Err(Error::Domain(format!("αβ = {mu} must be real and positive")));
    }
    Ok(mu.re)
}

/// One quadrature node: the combined weight times kernel, and the four
/// bases whose powers form the monomial.
struct Node {
    wk: Complex64,
    base: [Complex64; 4],
}

/// Values of the representation for each multi-index in `ms` at `(z, w)`,
/// with `nodes` Gauss–Hermite nodes per real dimension.
pub fn integral_rep(
    form: IntRepForm,
    ms: &[MultiIndex4],
    z: Complex64,
    w: Complex64,
    nodes: usize,
) -> Result<Vec<Complex64>> {
    let grid = gauss_hermite(nodes)?;
    let (alpha, beta, alpha_p, beta_p) = match form {
        IntRepForm::Plain {
            alpha,
            beta,
            alpha_p,
            beta_p,
        } => (alpha, beta, alpha_p, beta_p),
        IntRepForm::Aux { alpha, beta } => (alpha, beta, alpha, beta),
        IntRepForm::Special => (I, -I, I, -I),
    };
    let mu = positive_product(alpha, beta)?;
    let mu_p = positive_product(alpha_p, beta_p)?;
    let (x, y) = match form {
        IntRepForm::Plain { .. } => (z + I * w, z.conj() + I * w.conj()),
        _ => (z, w),
    };
    let pu = grid.plane(mu);
    let pv = grid.plane(mu_p);
    let mut pts = Vec::with_capacity(pu.len() * pv.len());
    for (u, wu) in &pu {
        for (v, wv) in &pv {
            let (ub, vb) = (u.conj(), v.conj());
            let expo = match form {
                IntRepForm::Special => 2.0 * I * ((u * x.conj()).re + (v * y.conj()).re),
                _ => {
                    alpha * u * x.conj() - beta * ub * x + alpha_p * v * y.conj() - beta_p * vb * y
                }
            };
            let base = match form {
                IntRepForm::Plain { .. } => [*u, ub, *v, vb],
                _ => [u + I * v, ub - I * vb, ub + I * vb, u - I * v],
            };
            pts.push(Node {
                wk: wu * wv * expo.exp(),
                base,
            });
        }
    }
    let gauss = (z.norm_sqr() + w.norm_sqr()).exp();
    let s2 = 2f64.sqrt();
    Ok(ms
        .par_iter()
        .map(|m| {
            let mut s = ComplexSum::new();
            for p in &pts {
                let mono = p.base[0].powu(m.m) * p.base[1].powu(m.n) * p.base[2].powu(m.mp) * p.base[3].powu(m.np);
                s.add(p.wk * mono);
            }
            let integral = s.value();
            match form {
                IntRepForm::Plain { .. } => {
                    let sign = if (m.m + m.mp) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * mu * mu_p * alpha.powu(m.m) * beta.powu(m.n) * alpha_p.powu(m.mp) * beta_p.powu(m.np)
                        / (PI * PI)
                        * gauss
                        * gauss
                        * integral
                }
                IntRepForm::Aux { .. } => {
                    mu * mu * (-alpha).powu(m.m + m.np) * beta.powu(m.mp + m.n) / (PI * PI * s2.powi(m.abs() as i32))
                        * gauss
                        * integral
                }
                IntRepForm::Special => {
                    (-I).powu(m.abs()) / (PI * PI * s2.powi(m.abs() as i32)) * gauss * integral
                }
            }
        })
        .collect())
}
