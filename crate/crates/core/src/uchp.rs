//! Univariate complex Hermite polynomials `H_{m,n}(u, ū)` and the real
//! (physicist) Hermite polynomials.
//!
//! The operational formula `H_{m,n} = e^{−∂_u ∂_ū}(u^m ū^n)` is the canonical
//! construction; the Rodrigues and real-Hermite expansions are independent
//! routes used to cross-check it.

pub mod mehler;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::exactring::{factorial, CoeffQi2, Poly2, Rational};

const U: usize = 0;
const UBAR: usize = 1;

/// `Σ_k (−1)^k/k! ∂_u^k ∂_ū^k (u^m ū^n)`.
pub fn uchp_operational(m: u32, n: u32) -> Poly2 {
    let mono = Poly2::monomial([m, n], CoeffQi2::one());
    let mut acc = Poly2::zero();
    let mut term = mono;
    let mut k: i64 = 0;
    while !term.is_zero() {
        let c = (&Rational::from_int(if k % 2 == 0 { 1 } else { -1 })) / &factorial(k as u32);
        acc = &acc + &term.scale_rational(&c);
        term = term.diff(U).diff(UBAR);
        k += 1;
    }
    acc
}

/// `(−1)^{m+n} e^{uū} ∂_ū^m ∂_u^n e^{−uū}`, carried out on the polynomial
/// cofactor of the Gaussian: `∂_u(P e^{−uū}) = (∂_u P − ū P) e^{−uū}`.
pub fn uchp_rodrigues(m: u32, n: u32) -> Poly2 {
    let mut p = Poly2::one();
    for _ in 0..n {
        p = &p.diff(U) - &p.mul_var(UBAR);
    }
    for _ in 0..m {
        p = &p.diff(UBAR) - &p.mul_var(U);
    }
    if (m + n) % 2 == 1 {
        -p
    } else {
        p
    }
}

/// Dense polynomial in one real variable with rational coefficients,
/// lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPoly(pub Vec<Rational>);

impl RealPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `P(q)` for a two-variable polynomial `q`.
    pub fn compose(&self, q: &Poly2) -> Poly2 {
        self.0.iter().rev().fold(Poly2::zero(), |acc, c| {
            &(&acc * q) + &Poly2::constant(CoeffQi2::from_rational(c.clone()))
        })
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }
}

/// Physicist Hermite polynomial by `H_{n+1} = 2x H_n − 2n H_{n−1}`.
pub fn real_hermite(n: u32) -> RealPoly {
    let mut prev = vec![Rational::one()];
    if n == 0 {
        return RealPoly(prev);
    }
    let mut cur = vec![Rational::zero(), Rational::from_int(2)];
    for k in 1..n {
        let mut next = vec![Rational::zero(); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] = &next[j + 1] + &(c * &Rational::from_int(2));
        }
        let two_k = Rational::from_int(2 * k as i64);
        for (j, c) in prev.iter().enumerate() {
            next[j] = &next[j] - &(c * &two_k);
        }
        prev = cur;
        cur = next;
    }
    RealPoly(cur).trim()
}

/// Physicist Hermite polynomial by Rodrigues: `(−1)^n e^{x²} dⁿ/dxⁿ e^{−x²}`,
/// using `d(P e^{−x²}) = (P′ − 2xP) e^{−x²}`.
pub fn real_hermite_rodrigues(n: u32) -> RealPoly {
    let mut p = vec![Rational::one()];
    for _ in 0..n {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            if j > 0 {
                next[j - 1] = &next[j - 1] + &(c * &Rational::from_int(j as i64));
            }
            next[j + 1] = &next[j + 1] - &(c * &Rational::from_int(2));
        }
        p = next;
    }
    if n % 2 == 1 {
        p = p.iter().map(|c| -c).collect();
    }
    RealPoly(p).trim()
}

/// Double sum over real Hermite polynomials in `x = Re u`, `y = Im u`:
/// `(1/2)^{m+n} m! n! Σ_{j≤m,k≤n} (−1)^k i^{j+k} H_{m+n−j−k}(x) H_{j+k}(y) / (j! k! (m−j)! (n−k)!)`.
pub fn uchp_from_real(m: u32, n: u32) -> Poly2 {
    let half = Rational::new(1, 2).expect("nonzero");
    // x = (u + ū)/2, y = (u − ū)/(2i) = −i(u − ū)/2
    let x = (&Poly2::u() + &Poly2::ubar()).scale_rational(&half);
    let y = (&Poly2::u() - &Poly2::ubar()).scale(&CoeffQi2::gaussian(Rational::zero(), -&half));
    let hx: Vec<Poly2> = (0..=m + n).map(|k| real_hermite(k).compose(&x)).collect();
    let hy: Vec<Poly2> = (0..=m + n).map(|k| real_hermite(k).compose(&y)).collect();
    let mut acc = Poly2::zero();
    for j in 0..=m {
        for k in 0..=n {
            let denom = &(&factorial(j) * &factorial(k)) * &(&factorial(m - j) * &factorial(n - k));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = CoeffQi2::i_pow(j + k).scale(&(&Rational::from_int(sign) / &denom));
            let t = &hx[(m + n - j - k) as usize] * &hy[(j + k) as usize];
            acc = &acc + &t.scale(&c);
        }
    }
    let pre = &half.pow(m + n) * &(&factorial(m) * &factorial(n));
    acc.scale_rational(&pre)
}

/// Build-once cache of `H_{m,n}`, shared across threads.
#[derive(Default)]
pub struct UchpTable {
    cache: RwLock<HashMap<(u32, u32), Arc<Poly2>>>,
}

impl UchpTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table.
    pub fn global() -> &'static UchpTable {
        static TABLE: OnceLock<UchpTable> = OnceLock::new();
        TABLE.get_or_init(UchpTable::new)
    }

    pub fn get(&self, m: u32, n: u32) -> Arc<Poly2> {
        if let Some(p) = self.cache.read().expect("uchp cache poisoned").get(&(m, n)) {
            return Arc::clone(p);
        }
        let p = Arc::new(uchp_operational(m, n));
        let mut w = self.cache.write().expect("uchp cache poisoned");
        Arc::clone(w.entry((m, n)).or_insert(p))
    }
}

/// Values `H_{j,k}(a, b)` for `j ≤ max_m`, `k ≤ max_n`, with `a`, `b`
/// independent (`b` need not be the conjugate of `a`).
///
/// Uses `H_{0,k} = b^k` and `H_{j+1,k} = a H_{j,k} − k H_{j,k−1}`.
pub fn uchp_values(a: Complex64, b: Complex64, max_m: usize, max_n: usize) -> Vec<Vec<Complex64>> {
    let mut t = vec![vec![Complex64::new(0.0, 0.0); max_n + 1]; max_m + 1];
    let mut p = Complex64::new(1.0, 0.0);
    for k in 0..=max_n {
        t[0][k] = p;
        p *= b;
    }
    for j in 0..max_m {
        for k in 0..=max_n {
            let mut v = a * t[j][k];
            if k > 0 {
                v -= (k as f64) * t[j][k - 1];
            }
            t[j + 1][k] = v;
        }
    }
    t
}

/// Single value `H_{m,n}(a, b)`.
pub fn uchp_value(m: u32, n: u32, a: Complex64, b: Complex64) -> Complex64 {
    uchp_values(a, b, m as usize, n as usize)[m as usize][n as usize]
}
