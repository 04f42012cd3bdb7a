//! Bivariate complex Hermite polynomials
//! `H_{m,n,m',n'}(z,w) = H_{m,n}(ξ, ξ̄) · H_{m',n'}(ξ*, ξ̃)`.
//!
//! The product form is the reference construction. The Rodrigues, operational
//! and binomial-connection constructions are independent and are compared
//! against it exactly.

pub mod genfun;
pub mod identities;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{CoeffQi2, MultiIndex4, Poly4, Rational};
use crate::operators::{make_a, Aux, LinOp};
use crate::uchp::{uchp_values, UchpTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Compose,
    Rodrigues,
    Operational,
    Binomial,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Compose, Route::Rodrigues, Route::Operational, Route::Binomial];

    pub fn name(self) -> &'static str {
        match self {
            Route::Compose => "compose",
            Route::Rodrigues => "rodrigues",
            Route::Operational => "operational",
            Route::Binomial => "binomial",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown route `{s}` (compose|rodrigues|operational|binomial)")))
    }
}

pub fn bchp(m: MultiIndex4, route: Route) -> Poly4 {
    match route {
        Route::Compose => bchp_compose(m),
        Route::Rodrigues => bchp_rodrigues(m),
        Route::Operational => bchp_operational(m),
        Route::Binomial => bchp_binomial(m),
    }
}

/// `H_{m,n}(ξ, ξ̄) · H_{m',n'}(ξ*, ξ̃)`.
pub fn bchp_compose(m: MultiIndex4) -> Poly4 {
    let t = UchpTable::global();
    let a = t.get(m.m, m.n).subst2(&Poly4::xi(), &Poly4::xi_bar());
    let b = t.get(m.mp, m.np).subst2(&Poly4::xi_star(), &Poly4::xi_tilde());
    &a * &b
}

/// `(−1)^{|M|} e^{2(|z|²+|w|²)} A_ξ̄^m A_ξ^n A_ξ̃^{m'} A_ξ*^{n'} e^{−2(|z|²+|w|²)}`.
pub fn bchp_rodrigues(m: MultiIndex4) -> Poly4 {
    let op = LinOp::Compose(vec![
        make_a(Aux::XiBar).pow(m.m),
        make_a(Aux::Xi).pow(m.n),
        make_a(Aux::XiTilde).pow(m.mp),
        make_a(Aux::XiStar).pow(m.np),
    ]);
    let p = op
        .apply_weighted(&Poly4::one())
        .expect("A-operators act on weighted polynomials");
    if m.abs() % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `e^{−(A_ξ A_ξ̄ + A_ξ* A_ξ̃)} (ξ^m ξ̄^n ξ*^{m'} ξ̃^{n'})`.
pub fn bchp_operational(m: MultiIndex4) -> Poly4 {
    let d = LinOp::sum(
        LinOp::compose(make_a(Aux::Xi), make_a(Aux::XiBar)),
        LinOp::compose(make_a(Aux::XiStar), make_a(Aux::XiTilde)),
    );
    let mono = &(&Poly4::xi().pow(m.m) * &Poly4::xi_bar().pow(m.n))
        * &(&Poly4::xi_star().pow(m.mp) * &Poly4::xi_tilde().pow(m.np));
    d.exp_neg()
        .try_apply(&mono)
        .expect("the operator lowers degree")
}

/// `H_{j,k}(√2 x, √2 x̄)` as a [`Poly4`] in the pair `(z, z̄)` (`second = false`)
/// or `(w, w̄)` (`second = true`).
fn scaled_uchp(j: u32, k: u32, second: bool, cache: &mut HashMap<(u32, u32, bool), Poly4>) -> Poly4 {
    cache
        .entry((j, k, second))
        .or_insert_with(|| {
            let s = Poly4::constant(CoeffQi2::sqrt2());
            let (a, b) = if second {
                (&s * &Poly4::w(), &s * &Poly4::wbar())
            } else {
                (&s * &Poly4::z(), &s * &Poly4::zbar())
            };
            UchpTable::global().get(j, k).subst2(&a, &b)
        })
        .clone()
}

/// `2^{−|M|/2} Σ_{J≤M} (−1)^{k+k'} i^{|J|} C(M,J)
///  H_{m+n'−j−k', m'+n−j'−k}(√2z) H_{j+k', j'+k}(√2w)`.
pub fn bchp_binomial(m: MultiIndex4) -> Poly4 {
    let mut cache = HashMap::new();
    let mut acc = Poly4::zero();
    for j in m.below() {
        let (jj, k, jp, kp) = (j.m, j.n, j.mp, j.np);
        let a1 = (m.m + m.np).checked_sub(jj + kp);
        let a2 = (m.mp + m.n).checked_sub(jp + k);
        let (Some(a1), Some(a2)) = (a1, a2) else {
            unreachable!("J ≤ M keeps the indices nonnegative");
        };
        let sign = if (k + kp) % 2 == 0 { 1 } else { -1 };
        let c = CoeffQi2::i_pow(j.abs())
            .scale(&(&m.binomial(j).expect("J ≤ M") * &Rational::from_int(sign)));
        let left = scaled_uchp(a1, a2, false, &mut cache);
        let right = scaled_uchp(jj + kp, jp + k, true, &mut cache);
        acc = &acc + &(&left * &right).scale(&c);
    }
    let norm = CoeffQi2::sqrt2_pow(m.abs()).inv().expect("nonzero");
    acc.scale(&norm)
}

/// Build-once cache of reference polynomials.
#[derive(Default)]
pub struct BchpTable {
    cache: RwLock<HashMap<MultiIndex4, Arc<Poly4>>>,
}

impl BchpTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static BchpTable {
        static TABLE: OnceLock<BchpTable> = OnceLock::new();
        TABLE.get_or_init(BchpTable::new)
    }

    pub fn get(&self, m: MultiIndex4) -> Arc<Poly4> {
        if let Some(p) = self.cache.read().expect("bchp cache poisoned").get(&m) {
            return Arc::clone(p);
        }
        let p = Arc::new(bchp_compose(m));
        let mut w = self.cache.write().expect("bchp cache poisoned");
        Arc::clone(w.entry(m).or_insert(p))
    }
}

/// Numeric `H_M(z, w)` through the product form, with UCHP values from the
/// three-term recurrence.
pub fn bchp_value(m: MultiIndex4, z: Complex64, w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let (xi, xib, xis, xit) = (z + i * w, z.conj() - i * w.conj(), z.conj() + i * w.conj(), z - i * w);
    crate::uchp::uchp_value(m.m, m.n, xi, xib) * crate::uchp::uchp_value(m.mp, m.np, xis, xit)
}

/// `H_M` values at one point for every `M ≤ (max, max, max, max)`, indexed
/// `[m][n][m'][n']`; built from two UCHP tables.
pub struct BchpGrid {
    pub first: Vec<Vec<Complex64>>,
    pub second: Vec<Vec<Complex64>>,
}

impl BchpGrid {
    pub fn new(z: Complex64, w: Complex64, max: usize) -> Self {
        let i = Complex64::new(0.0, 1.0);
        BchpGrid {
            first: uchp_values(z + i * w, z.conj() - i * w.conj(), max, max),
            second: uchp_values(z.conj() + i * w.conj(), z - i * w, max, max),
        }
    }

    pub fn get(&self, m: MultiIndex4) -> Complex64 {
        self.first[m.m as usize][m.n as usize] * self.second[m.mp as usize][m.np as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::MultiIndex4 as M;

    #[test]
    fn compose_examples() {
        assert_eq!(bchp_compose(M::ZERO), Poly4::one());
        assert_eq!(bchp_compose(M::new(1, 0, 1, 0)), &Poly4::xi() * &Poly4::xi_star());
        assert_eq!(bchp_compose(M::new(1, 0, 0, 1)), &Poly4::z().pow(2) + &Poly4::w().pow(2));
        assert_eq!(
            bchp_compose(M::new(1, 1, 0, 0)),
            &(&Poly4::xi() * &Poly4::xi_bar()) - &Poly4::one()
        );
    }

    #[test]
    fn other_routes_small() {
        assert_eq!(bchp_rodrigues(M::new(1, 0, 0, 0)), Poly4::xi());
        assert_eq!(bchp_rodrigues(M::new(0, 1, 0, 0)), Poly4::xi_bar());
        assert_eq!(bchp_operational(M::new(1, 1, 0, 0)), bchp_compose(M::new(1, 1, 0, 0)));
        assert_eq!(bchp_operational(M::new(1, 0, 1, 0)), &Poly4::xi() * &Poly4::xi_star());
        assert_eq!(bchp_binomial(M::ZERO), Poly4::one());
        assert_eq!(bchp_binomial(M::new(1, 0, 0, 0)), Poly4::xi());
        assert_eq!(bchp_binomial(M::new(1, 1, 0, 0)), bchp_compose(M::new(1, 1, 0, 0)));
    }

    #[test]
    fn routes_agree_small_cube() {
        for m in M::cube(2) {
            let c = bchp_compose(m);
            for r in [Route::Rodrigues, Route::Operational, Route::Binomial] {
                assert_eq!(bchp(m, r), c, "{r} at {m}");
            }
        }
    }

    #[test]
    fn symmetries_and_degree() {
        for m in M::up_to_total(6) {
            let h = BchpTable::global().get(m);
            assert_eq!(h.conj(), bchp_compose(M::new(m.n, m.m, m.np, m.mp)), "conj {m}");
            assert_eq!(h.swap_pairs(), bchp_compose(M::new(m.mp, m.np, m.m, m.n)), "swap {m}");
            assert_eq!(h.total_degree(), Some(m.abs()));
        }
        for r in 0..5 {
            for s in 0..5 {
                let v = BchpTable::global().get(M::new(r, s, 0, 0)).coeff(&[0, 0, 0, 0]);
                let want = if r == s {
                    crate::exactring::factorial(r).to_f64() * if r % 2 == 0 { 1.0 } else { -1.0 }
                } else {
                    0.0
                };
                assert_eq!(v.to_complex().re, want);
            }
        }
    }

    #[test]
    fn leading_part() {
        for m in M::cube(2) {
            let lead = &(&Poly4::xi().pow(m.m) * &Poly4::xi_bar().pow(m.n))
                * &(&Poly4::xi_star().pow(m.mp) * &Poly4::xi_tilde().pow(m.np));
            assert_eq!(bchp_compose(m).leading_part(), lead);
        }
    }

    #[test]
    fn numeric_value_matches_polynomial() {
        let (z, w) = (Complex64::new(0.3, -0.7), Complex64::new(-0.5, 0.2));
        let g = BchpGrid::new(z, w, 3);
        for m in M::cube(3) {
            let exact = BchpTable::global().get(m).eval_complex(z, w);
            assert!((bchp_value(m, z, w) - exact).norm() < 1e-12);
            assert!((g.get(m) - exact).norm() < 1e-12);
        }
    }
}
