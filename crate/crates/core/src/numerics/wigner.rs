//! Fourier–Wigner transforms of Hermite functions and the two
//! Fourier–Wigner realizations of `H_M`.
//!
//! `V_d(f, g)(p, q) = (2π)^{−d/2} ∫ e^{i⟨y,q⟩} f(y + p/2) conj(g(y − p/2)) dy`.
//! For `f = e^{−|·|²/2} P_f` and `g = e^{−|·|²/2} P_g` the Gaussian factors
//! combine to `e^{−|y|² − |p|²/4}`, so Gauss–Hermite applies to
//! `e^{i⟨y,q⟩} P_f(y + p/2) conj(P_g(y − p/2))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::hermite_fn::{real_hermite_values, Hermite2};
use super::kahan::ComplexSum;
use super::quadrature::QuadGrid;
use crate::exactring::MultiIndex4;
use crate::uchp::mehler::Variant;

/// `V_1(h_a, h_b)(p, q)` for real Hermite functions.
pub fn fourier_wigner1(a: u32, b: u32, p: f64, q: f64, grid: &QuadGrid) -> Complex64 {
    let mut s = ComplexSum::new();
    for (y, wt) in grid.nodes.iter().zip(&grid.weights) {
        let ha = real_hermite_values(y + p / 2.0, a as usize)[a as usize];
        let hb = real_hermite_values(y - p / 2.0, b as usize)[b as usize];
        s.add(Complex64::from_polar(wt * ha * hb, y * q));
    }
    s.value() * (-p * p / 4.0).exp() / (2.0 * PI).sqrt()
}

/// `V_2(f, g)(p, q)`.
pub fn fourier_wigner2(f: Hermite2, g: Hermite2, p: [f64; 2], q: [f64; 2], grid: &QuadGrid) -> Complex64 {
    let mut s = ComplexSum::new();
    for (y1, w1) in grid.nodes.iter().zip(&grid.weights) {
        for (y2, w2) in grid.nodes.iter().zip(&grid.weights) {
            let pf = f.cofactor([y1 + p[0] / 2.0, y2 + p[1] / 2.0]);
            let pg = g.cofactor([y1 - p[0] / 2.0, y2 - p[1] / 2.0]);
            let phase = Complex64::from_polar(w1 * w2, y1 * q[0] + y2 * q[1]);
            s.add(phase * pf * pg.conj());
        }
    }
    s.value() * (-(p[0] * p[0] + p[1] * p[1]) / 4.0).exp() / (2.0 * PI)
}

/// `V(f, g)(z; w) = V_2(f, g)((Re z, Re w); (Im z, Im w))`.
pub fn fourier_wigner_complex(f: Hermite2, g: Hermite2, z: Complex64, w: Complex64, grid: &QuadGrid) -> Complex64 {
    fourier_wigner2(f, g, [z.re, w.re], [z.im, w.im], grid)
}

/// `H_{m,n}(z, z̄)` through `(−1)^n √2/√2^{m+n} e^{|z|²/2} V_1(h_m, h_n)(√2 x, √2 y)`.
pub fn uchp_via_wigner(m: u32, n: u32, z: Complex64, grid: &QuadGrid) -> Complex64 {
    let s2 = 2f64.sqrt();
    let v = fourier_wigner1(m, n, s2 * z.re, s2 * z.im, grid);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    v * sign * s2 / s2.powi((m + n) as i32) * (z.norm_sqr() / 2.0).exp()
}

/// `H_M(z, w)` through `2 (−1)^{m'+n} e^{|z|²+|w|²} V(h_{m,n'}, g)(2z, 2w)`.
///
/// As printed `g = h_{m',n}`; the corrected second function is
/// `g = h_{n,m'}`.
pub fn bchp_via_wigner(m: MultiIndex4, z: Complex64, w: Complex64, variant: Variant, grid: &QuadGrid) -> Complex64 {
    let f = Hermite2::Complex(m.m, m.np);
    let g = match variant {
        Variant::AsPrinted => Hermite2::Complex(m.mp, m.n),
        Variant::Corrected => Hermite2::Complex(m.n, m.mp),
    };
    let v = fourier_wigner_complex(f, g, 2.0 * z, 2.0 * w, grid);
    let sign = if (m.mp + m.n) % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * sign * (z.norm_sqr() + w.norm_sqr()).exp() * v
}

/// `H_M(z/√2, w/√2)` through
/// `(−1)^{n+n'}/√2^{|M|−2} e^{(|z|²+|w|²)/2} V^{m,n}_{m',n'}(z + iw, z̄ + iw̄)`
/// with `V^{m,n}_{m',n'} = V_2(h_m ⊗ h_{m'}, h_n ⊗ h_{n'})`.
pub fn bchp_via_tensor_wigner(m: MultiIndex4, z: Complex64, w: Complex64, grid: &QuadGrid) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let xi = z + i * w;
    let xis = z.conj() + i * w.conj();
    let v = fourier_wigner_complex(
        Hermite2::Tensor(m.m, m.mp),
        Hermite2::Tensor(m.n, m.np),
        xi,
        xis,
        grid,
    );
    let sign = if (m.n + m.np) % 2 == 0 { 1.0 } else { -1.0 };
    let s2 = 2f64.sqrt();
    v * sign / s2.powi(m.abs() as i32 - 2) * ((z.norm_sqr() + w.norm_sqr()) / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bchp::bchp_value;
    use crate::numerics::quadrature::gauss_hermite;
    use crate::uchp::uchp_value;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ground_state_at_origin() {
        let g = gauss_hermite(40).unwrap();
        let f = Hermite2::Complex(0, 0);
        let v = fourier_wigner2(f, f, [0.0; 2], [0.0; 2], &g);
        assert!((v - c(0.5, 0.0)).norm() < 1e-14);
        let t = Hermite2::Tensor(0, 0);
        let v = fourier_wigner2(t, t, [0.0; 2], [0.0; 2], &g);
        assert!((v - c(0.5, 0.0)).norm() < 1e-14);
        let h = bchp_via_wigner(MultiIndex4::ZERO, c(0.0, 0.0), c(0.0, 0.0), Variant::AsPrinted, &g);
        assert!((h - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn tensor_law() {
        let g = gauss_hermite(40).unwrap();
        let (p, q) = ([0.4, -0.7], [1.1, 0.3]);
        for (a, b, cc, d) in [(0, 0, 0, 0), (1, 2, 0, 1), (2, 1, 2, 2)] {
            let v2 = fourier_wigner2(Hermite2::Tensor(a, b), Hermite2::Tensor(cc, d), p, q, &g);
            let v1 = fourier_wigner1(a, cc, p[0], q[0], &g) * fourier_wigner1(b, d, p[1], q[1], &g);
            assert!((v2 - v1).norm() < 1e-12, "{a}{b}{cc}{d}");
        }
    }

    #[test]
    fn univariate_realization() {
        let g = gauss_hermite(40).unwrap();
        for z in [c(0.0, 0.0), c(0.6, -0.3), c(-1.1, 0.8)] {
            for m in 0..4 {
                for n in 0..4 {
                    let want = uchp_value(m, n, z, z.conj());
                    let got = uchp_via_wigner(m, n, z, &g);
                    assert!((got - want).norm() < 1e-10 * want.norm().max(1.0), "({m},{n}) at {z}");
                }
            }
        }
    }

    #[test]
    fn bivariate_realizations() {
        let g = gauss_hermite(40).unwrap();
        let (z, w) = (c(0.5, -0.2), c(-0.3, 0.6));
        let s2 = 2f64.sqrt();
        for m in MultiIndex4::cube(2) {
            let want = bchp_value(m, z, w);
            let got = bchp_via_wigner(m, z, w, Variant::Corrected, &g);
            assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "{m}: {got} vs {want}");
            let want2 = bchp_value(m, z / s2, w / s2);
            let got2 = bchp_via_tensor_wigner(m, z, w, &g);
            assert!((got2 - want2).norm() < 1e-9 * want2.norm().max(1.0), "{m}: {got2} vs {want2}");
        }
    }
}
