//! Known values checked against independently computed oracles.

use std::f64::consts::PI;

use bchp::bchp::{bchp, bchp_value, BchpTable, Route};
use bchp::exactring::{CoeffQi2, MultiIndex4, Poly4, Rational};
use bchp::numerics::ortho::{bchp_norm_sqr, ortho_integral_direct, uchp_norm_sqr};
use bchp::numerics::quadrature::gauss_hermite;
use bchp::uchp::uchp_value;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn choose(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn fact(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `H_{m,n}(a, b) = Σ_k (−1)^k k! C(m,k) C(n,k) a^{m−k} b^{n−k}`, summed in
/// floating point.
fn uchp_oracle(m: u32, n: u32, a: Complex64, b: Complex64) -> Complex64 {
    (0..=m.min(n))
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * fact(k) * choose(m, k) * choose(n, k) * a.powu(m - k) * b.powu(n - k)
        })
        .sum()
}

#[test]
fn first_order_polynomial() {
    let want = &Poly4::z() + &Poly4::w().scale(&CoeffQi2::i());
    for route in Route::ALL {
        assert_eq!(bchp(MultiIndex4::new(1, 0, 0, 0), route), want, "{route}");
    }
    assert_eq!(bchp(MultiIndex4::ZERO, Route::Compose), Poly4::one());
}

#[test]
fn pure_analytic_products() {
    let xi = &Poly4::z() + &Poly4::w().scale(&CoeffQi2::i());
    let xs = &Poly4::zbar() + &Poly4::wbar().scale(&CoeffQi2::i());
    for m in 0..4 {
        for mp in 0..4 {
            assert_eq!(*BchpTable::global().get(MultiIndex4::new(m, 0, mp, 0)), &xi.pow(m) * &xs.pow(mp));
        }
    }
}

#[test]
fn point_values() {
    assert!((bchp_value(MultiIndex4::new(1, 1, 0, 0), c(0.0, 0.0), c(0.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-15);
    assert!(bchp_value(MultiIndex4::new(1, 0, 0, 1), c(1.0, 0.0), c(0.0, 1.0)).norm() < 1e-15);
    let one = bchp_value(MultiIndex4::ZERO, c(0.3, -2.0), c(1.5, 0.25));
    assert_eq!(one, c(1.0, 0.0));
}

#[test]
fn factorized_values_against_explicit_sum() {
    let i = c(0.0, 1.0);
    for (z, w) in [(c(0.4, -0.7), c(1.1, 0.2)), (c(-1.3, 0.5), c(0.0, -0.6))] {
        let (xi, xib) = (z + i * w, z.conj() - i * w.conj());
        let (xs, xt) = (z.conj() + i * w.conj(), z - i * w);
        for m in MultiIndex4::cube(3) {
            let want = uchp_oracle(m.m, m.n, xi, xib) * uchp_oracle(m.mp, m.np, xs, xt);
            let got = bchp_value(m, z, w);
            assert!((got - want).norm() < 1e-11 * want.norm().max(1.0), "{m}: {got} vs {want}");
        }
    }
}

#[test]
fn uchp_values_against_explicit_sum() {
    let z = c(0.8, -0.45);
    for m in 0..8 {
        for n in 0..8 {
            let want = uchp_oracle(m, n, z, z.conj());
            let got = uchp_value(m, n, z, z.conj());
            assert!((got - want).norm() < 1e-11 * want.norm().max(1.0), "({m},{n})");
        }
    }
}

#[test]
fn exact_evaluation_at_gaussian_rationals() {
    let half = CoeffQi2::from_rational(Rational::new(1, 2).unwrap());
    let z = CoeffQi2::gaussian_int(1, -1);
    let w = &half * &CoeffQi2::i();
    for m in MultiIndex4::cube(2) {
        let exact = BchpTable::global().get(m).eval_exact_at(&z, &w).to_complex();
        let float = bchp_value(m, c(1.0, -1.0), c(0.0, 0.5));
        assert!((exact - float).norm() < 1e-12 * exact.norm().max(1.0), "{m}");
    }
}

#[test]
fn norm_constants() {
    assert!((bchp_norm_sqr(MultiIndex4::ZERO) - PI * PI / 4.0).abs() < 1e-15);
    assert!((bchp_norm_sqr(MultiIndex4::new(2, 1, 3, 0)) - PI * PI / 4.0 * 12.0).abs() < 1e-12);
    assert!((uchp_norm_sqr(3, 2) - PI * 12.0).abs() < 1e-12);
    // the plain four-dimensional rule reproduces the constant too
    let m = MultiIndex4::new(1, 0, 1, 1);
    let v = ortho_integral_direct(m, m, 10).unwrap();
    assert!((v.re - bchp_norm_sqr(m)).abs() < 1e-10 && v.im.abs() < 1e-10);
}

#[test]
fn gauss_hermite_small_rules() {
    let g = gauss_hermite(2).unwrap();
    let r = 0.5f64.sqrt();
    assert!((g.nodes[0] + r).abs() < 1e-15 && (g.nodes[1] - r).abs() < 1e-15);
    for w in &g.weights {
        assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
    }
    let g = gauss_hermite(3).unwrap();
    assert_eq!(g.nodes[1], 0.0);
    assert!((g.weights[1] - 2.0 * PI.sqrt() / 3.0).abs() < 1e-15);
    assert!((g.nodes[2] - 1.5f64.sqrt()).abs() < 1e-15);
    assert!(gauss_hermite(0).is_err());
}
