//! Linear operators on [`Poly4`]: the auxiliary derivations `A_•`, raising
//! and lowering combinations, Euler-type operators, and their action on
//! polynomials carrying the Gaussian `e^{−2(|z|²+|w|²)}`.
//!
//! Operators are extensional: a [`LinOp`] is a tree of generators that is
//! interpreted by [`LinOp::apply`]. Equality of two operators is decided on
//! the monomial basis up to a degree bound by [`op_equal`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{factorial, CoeffQi2, MultiIndex4, Poly4, Rational, Var};

/// The four auxiliary variables `ξ = z+iw`, `ξ̄ = z̄−iw̄`, `ξ* = z̄+iw̄`, `ξ̃ = z−iw`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Aux {
    Xi,
    XiBar,
    XiStar,
    XiTilde,
}

impl Aux {
    pub const ALL: [Aux; 4] = [Aux::Xi, Aux::XiBar, Aux::XiStar, Aux::XiTilde];

    pub fn poly(self) -> Poly4 {
        match self {
            Aux::Xi => Poly4::xi(),
            Aux::XiBar => Poly4::xi_bar(),
            Aux::XiStar => Poly4::xi_star(),
            Aux::XiTilde => Poly4::xi_tilde(),
        }
    }

    /// The variable paired with this one in the same univariate factor:
    /// `ξ ↔ ξ̄`, `ξ* ↔ ξ̃`.
    pub fn partner(self) -> Aux {
        match self {
            Aux::Xi => Aux::XiBar,
            Aux::XiBar => Aux::Xi,
            Aux::XiStar => Aux::XiTilde,
            Aux::XiTilde => Aux::XiStar,
        }
    }

    /// Slot of `M = (m, n, m', n')` whose index counts this variable.
    pub fn slot(self) -> usize {
        match self {
            Aux::Xi => 0,
            Aux::XiBar => 1,
            Aux::XiStar => 2,
            Aux::XiTilde => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Aux::Xi => "xi",
            Aux::XiBar => "xibar",
            Aux::XiStar => "xistar",
            Aux::XiTilde => "xitilde",
        }
    }
}

impl fmt::Display for Aux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinOp {
    Zero,
    Identity,
    MulVar(Var),
    MulPoly(Poly4),
    Diff(Var),
    Scale(CoeffQi2, Box<LinOp>),
    Sum(Vec<LinOp>),
    /// `ops[0] ∘ ops[1] ∘ …`; the last operator acts first.
    Compose(Vec<LinOp>),
    Pow(Box<LinOp>, u32),
    /// `e^{−D}` for a degree-lowering `D`, as a terminating series.
    ExpNeg(Box<LinOp>),
    /// `p ↦ conj(T(conj p))`.
    Conj(Box<LinOp>),
}

impl LinOp {
    pub fn scale(self, c: CoeffQi2) -> LinOp {
        LinOp::Scale(c, Box::new(self))
    }

    pub fn then(self, outer: LinOp) -> LinOp {
        LinOp::Compose(vec![outer, self])
    }

    pub fn compose(outer: LinOp, inner: LinOp) -> LinOp {
        LinOp::Compose(vec![outer, inner])
    }

    pub fn sum(a: LinOp, b: LinOp) -> LinOp {
        LinOp::Sum(vec![a, b])
    }

    pub fn sub(a: LinOp, b: LinOp) -> LinOp {
        LinOp::Sum(vec![a, b.scale(CoeffQi2::from_int(-1))])
    }

    pub fn pow(self, k: u32) -> LinOp {
        LinOp::Pow(Box::new(self), k)
    }

    pub fn exp_neg(self) -> LinOp {
        LinOp::ExpNeg(Box::new(self))
    }

    pub fn conj(self) -> LinOp {
        LinOp::Conj(Box::new(self))
    }

    /// `u ∂/∂v`.
    pub fn coupled_euler(u: Var, v: Var) -> LinOp {
        LinOp::compose(LinOp::MulVar(u), LinOp::Diff(v))
    }

    /// `x ∂/∂x`.
    pub fn euler(x: Var) -> LinOp {
        Self::coupled_euler(x, x)
    }

    pub fn apply(&self, p: &Poly4) -> Poly4 {
        self.try_apply(p).expect("operator application failed")
    }

    pub fn try_apply(&self, p: &Poly4) -> Result<Poly4> {
        if p.is_zero() {
            return Ok(Poly4::zero());
        }
        Ok(match self {
            LinOp::Zero => Poly4::zero(),
            LinOp::Identity => p.clone(),
            LinOp::MulVar(v) => p.mul_var(v.index()),
            LinOp::MulPoly(q) => q * p,
            LinOp::Diff(v) => p.diff(v.index()),
            LinOp::Scale(c, t) => t.try_apply(p)?.scale(c),
            LinOp::Sum(ts) => {
                let mut acc = Poly4::zero();
                for t in ts {
                    acc = &acc + &t.try_apply(p)?;
                }
                acc
            }
            LinOp::Compose(ts) => {
                let mut acc = p.clone();
                for t in ts.iter().rev() {
                    acc = t.try_apply(&acc)?;
                }
                acc
            }
            LinOp::Pow(t, k) => {
                let mut acc = p.clone();
                for _ in 0..*k {
                    acc = t.try_apply(&acc)?;
                }
                acc
            }
            LinOp::ExpNeg(d) => {
                let deg = p.total_degree().unwrap_or(0);
                d.check_degree_lowering(deg)?;
                let mut acc = Poly4::zero();
                let mut term = p.clone();
                let mut k = 0u32;
                while !term.is_zero() {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let c = &Rational::from_int(sign) / &factorial(k);
                    acc = &acc + &term.scale_rational(&c);
                    term = d.try_apply(&term)?;
                    k += 1;
                }
                acc
            }
            LinOp::Conj(t) => t.try_apply(&p.conj())?.conj(),
        })
    }

    /// Probes every monomial of total degree `≤ bound` and fails unless the
    /// image has strictly smaller total degree.
    pub fn check_degree_lowering(&self, bound: u32) -> Result<()> {
        for e in monomials_up_to(bound) {
            let d: u32 = e.iter().sum();
            let img = self.try_apply(&Poly4::monomial(e, CoeffQi2::one()))?;
            if let Some(di) = img.total_degree() {
                if di >= d {
                    return Err(Error::Operator(format!(
                        "exponential of an operator that does not lower degree (monomial {e:?})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action on `P · e^{−2(|z|²+|w|²)}`, returning the new polynomial cofactor.
    ///
    /// Only multiplications, derivatives and their linear combinations and
    /// products are allowed.
    pub fn apply_weighted(&self, p: &Poly4) -> Result<Poly4> {
        if p.is_zero() {
            return Ok(Poly4::zero());
        }
        Ok(match self {
            LinOp::Zero => Poly4::zero(),
            LinOp::Identity => p.clone(),
            LinOp::MulVar(v) => p.mul_var(v.index()),
            LinOp::MulPoly(q) => q * p,
            // ∂_z e^{−2(z z̄ + w w̄)} = −2 z̄ e^{…}
            LinOp::Diff(v) => &p.diff(v.index()) - &p.mul_var(v.conj().index()).scale(&CoeffQi2::from_int(2)),
            LinOp::Scale(c, t) => t.apply_weighted(p)?.scale(c),
            LinOp::Sum(ts) => {
                let mut acc = Poly4::zero();
                for t in ts {
                    acc = &acc + &t.apply_weighted(p)?;
                }
                acc
            }
            LinOp::Compose(ts) => {
                let mut acc = p.clone();
                for t in ts.iter().rev() {
                    acc = t.apply_weighted(&acc)?;
                }
                acc
            }
            LinOp::Pow(t, k) => {
                let mut acc = p.clone();
                for _ in 0..*k {
                    acc = t.apply_weighted(&acc)?;
                }
                acc
            }
            LinOp::ExpNeg(_) | LinOp::Conj(_) => {
                return Err(Error::Operator(
                    "weighted action is defined only for differential polynomials".into(),
                ))
            }
        })
    }
}

/// A polynomial times the fixed Gaussian `e^{−2(|z|²+|w|²)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPoly {
    pub cofactor: Poly4,
}

impl WeightedPoly {
    pub fn gaussian() -> Self {
        WeightedPoly {
            cofactor: Poly4::one(),
        }
    }
}

pub fn weighted_apply(t: &LinOp, f: &WeightedPoly) -> Result<WeightedPoly> {
    Ok(WeightedPoly {
        cofactor: t.apply_weighted(&f.cofactor)?,
    })
}

fn half() -> CoeffQi2 {
    CoeffQi2::from_rational(Rational::new(1, 2).expect("nonzero"))
}

fn half_i() -> CoeffQi2 {
    CoeffQi2::gaussian(Rational::zero(), Rational::new(1, 2).expect("nonzero"))
}

/// `A_ξ = ½(∂_z − i∂_w)`, `A_ξ* = ½(∂_z̄ − i∂_w̄)`, `A_ξ̄ = ½(∂_z̄ + i∂_w̄)`, `A_ξ̃ = ½(∂_z + i∂_w)`.
pub fn make_a(which: Aux) -> LinOp {
    let (x, y, sign) = match which {
        Aux::Xi => (Var::Z, Var::W, -1),
        Aux::XiStar => (Var::Zbar, Var::Wbar, -1),
        Aux::XiBar => (Var::Zbar, Var::Wbar, 1),
        Aux::XiTilde => (Var::Z, Var::W, 1),
    };
    let iy = if sign > 0 { half_i() } else { -half_i() };
    LinOp::Sum(vec![
        LinOp::Diff(x).scale(half()),
        LinOp::Diff(y).scale(iy),
    ])
}

/// Multiplication by an auxiliary variable.
pub fn mul_aux(which: Aux) -> LinOp {
    LinOp::MulPoly(which.poly())
}

/// `a − A_{partner(a)}`; raises the index counting `a` by one.
pub fn raising(which: Aux) -> LinOp {
    LinOp::sub(mul_aux(which), make_a(which.partner()))
}

/// `A_a`; lowers the index counting `a`, with that index as factor.
pub fn lowering(which: Aux) -> LinOp {
    make_a(which)
}

/// `Δ = ∂_z∂_z̄ + ∂_w∂_w̄`.
pub fn laplacian() -> LinOp {
    LinOp::Sum(vec![
        LinOp::compose(LinOp::Diff(Var::Z), LinOp::Diff(Var::Zbar)),
        LinOp::compose(LinOp::Diff(Var::W), LinOp::Diff(Var::Wbar)),
    ])
}

/// `□ = ∂_z∂_w̄ − ∂_w∂_z̄`.
pub fn box_op() -> LinOp {
    LinOp::sub(
        LinOp::compose(LinOp::Diff(Var::Z), LinOp::Diff(Var::Wbar)),
        LinOp::compose(LinOp::Diff(Var::W), LinOp::Diff(Var::Zbar)),
    )
}

/// `L_a = a A_a − A_a A_{partner(a)}`.
pub fn build_l(which: Aux) -> LinOp {
    LinOp::sub(
        LinOp::compose(mul_aux(which), make_a(which)),
        LinOp::compose(make_a(which), make_a(which.partner())),
    )
}

/// The second-order operators written in `z, w` coordinates with
/// Laplacian, box, Euler and coupled-Euler terms; the barred/tilded ones are
/// the operator conjugates of the first two.
pub fn build_s(which: Aux) -> LinOp {
    let i = CoeffQi2::i();
    let quarter = CoeffQi2::from_rational(Rational::new(-1, 4).expect("nonzero"));
    let s = |box_sign: i64, e1: Var, e2: Var, f: (Var, Var), g: (Var, Var)| {
        LinOp::Sum(vec![
            laplacian(),
            box_op().scale(i.scale(&Rational::from_int(box_sign))),
            LinOp::Sum(vec![LinOp::euler(e1), LinOp::euler(e2)]).scale(CoeffQi2::from_int(-2)),
            LinOp::sub(LinOp::coupled_euler(f.0, f.1), LinOp::coupled_euler(g.0, g.1))
                .scale(CoeffQi2::gaussian_int(0, 2)),
        ])
        .scale(quarter.clone())
    };
    match which {
        Aux::Xi => s(1, Var::Z, Var::W, (Var::Z, Var::W), (Var::W, Var::Z)),
        Aux::XiStar => s(
            -1,
            Var::Zbar,
            Var::Wbar,
            (Var::Zbar, Var::Wbar),
            (Var::Wbar, Var::Zbar),
        ),
        Aux::XiBar => build_s(Aux::Xi).conj(),
        Aux::XiTilde => build_s(Aux::XiStar).conj(),
    }
}

/// All exponent quadruples with total degree `≤ bound`, graded then lexicographic.
pub fn monomials_up_to(bound: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for d in 0..=bound {
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    out.push([a, b, c, d - a - b - c]);
                }
            }
        }
    }
    out
}

/// Outcome of an operator comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct OpVerdict {
    pub pass: bool,
    pub monomials_checked: usize,
    /// First monomial (in graded order) where the operators differ, with `(T−U)` of it.
    pub witness: Option<([u32; 4], Poly4)>,
}

/// Applies `T − U` to every monomial of total degree `≤ bound`.
pub fn op_equal(t: &LinOp, u: &LinOp, bound: u32) -> OpVerdict {
    let monos = monomials_up_to(bound);
    let residues: Vec<Option<([u32; 4], Poly4)>> = monos
        .par_iter()
        .map(|e| {
            let m = Poly4::monomial(*e, CoeffQi2::one());
            let r = &t.apply(&m) - &u.apply(&m);
            (!r.is_zero()).then_some((*e, r))
        })
        .collect();
    let witness = residues.into_iter().flatten().next();
    OpVerdict {
        pass: witness.is_none(),
        monomials_checked: monos.len(),
        witness,
    }
}

/// Operator products realizing `H_M` from a simple seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Realization {
    /// `(ξ*−A_ξ̃)^{m'} (ξ̃−A_ξ*)^{n'} H_{m,n,0,0}`
    FromMn,
    /// `(ξ−A_ξ̄)^m (ξ̄−A_ξ)^n H_{0,0,m',n'}`
    FromMpNp,
    /// `(ξ−A_ξ̄)^m (ξ̄−A_ξ)^n (ξ*−A_ξ̃)^{m'} (ξ̃−A_ξ*)^{n'} · 1`
    FromOne,
    /// `(ξ−A_ξ̄)^m (ξ*−A_ξ̃)^{m'} (ξ̄^n ξ̃^{n'})`
    FromBarMonomial,
    /// `(ξ̄−A_ξ)^n (ξ̃−A_ξ*)^{n'} (ξ^m ξ*^{m'})`
    FromMonomial,
    /// `(ξ*−A_ξ̃)^{m'} (ξ̃−A_ξ*)^{n'} (ξ−A_ξ̄)^m (ξ̄−A_ξ)^n · 1`
    FromOneReordered,
    /// `(ξ−A_ξ̄)^m (ξ*−A_ξ̃)^{m'} (ξ̄−A_ξ)^n (ξ̃−A_ξ*)^{n'} · 1`
    FromOneInterleaved,
}

impl Realization {
    pub const ALL: [Realization; 7] = [
        Realization::FromMn,
        Realization::FromMpNp,
        Realization::FromOne,
        Realization::FromBarMonomial,
        Realization::FromMonomial,
        Realization::FromOneReordered,
        Realization::FromOneInterleaved,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Realization::FromMn => "newrealiz1a",
            Realization::FromMpNp => "newrealiz2a",
            Realization::FromOne => "newrealiz3",
            Realization::FromBarMonomial => "newrealiz2",
            Realization::FromMonomial => "newrealiz1",
            Realization::FromOneReordered => "realiz4a",
            Realization::FromOneInterleaved => "realiz4",
        }
    }
}

/// `(ξ* − i A_ξ̃)`: the third factor of the all-raising chain as it is
/// printed, with a stray `i`.
fn misprinted_star_raising() -> LinOp {
    LinOp::sub(
        mul_aux(Aux::XiStar),
        make_a(Aux::XiTilde).scale(CoeffQi2::i()),
    )
}

/// Applies one of the operator-product realizations. `as_printed` only
/// changes [`Realization::FromOne`], whose printed form carries a stray `i`.
pub fn realization_chain(m: MultiIndex4, which: Realization, as_printed: bool) -> Poly4 {
    let r = |a: Aux, k: u32| raising(a).pow(k);
    let apply = |ops: Vec<LinOp>, seed: Poly4| LinOp::Compose(ops).apply(&seed);
    let aux_pow = |a: Aux, k: u32| a.poly().pow(k);
    match which {
        Realization::FromMn => apply(
            vec![r(Aux::XiStar, m.mp), r(Aux::XiTilde, m.np)],
            crate::bchp::bchp_compose(MultiIndex4::new(m.m, m.n, 0, 0)),
        ),
        Realization::FromMpNp => apply(
            vec![r(Aux::Xi, m.m), r(Aux::XiBar, m.n)],
            crate::bchp::bchp_compose(MultiIndex4::new(0, 0, m.mp, m.np)),
        ),
        Realization::FromOne => {
            let star = if as_printed {
                misprinted_star_raising().pow(m.mp)
            } else {
                r(Aux::XiStar, m.mp)
            };
            apply(
                vec![r(Aux::Xi, m.m), r(Aux::XiBar, m.n), star, r(Aux::XiTilde, m.np)],
                Poly4::one(),
            )
        }
        Realization::FromBarMonomial => apply(
            vec![r(Aux::Xi, m.m), r(Aux::XiStar, m.mp)],
            &aux_pow(Aux::XiBar, m.n) * &aux_pow(Aux::XiTilde, m.np),
        ),
        Realization::FromMonomial => apply(
            vec![r(Aux::XiBar, m.n), r(Aux::XiTilde, m.np)],
            &aux_pow(Aux::Xi, m.m) * &aux_pow(Aux::XiStar, m.mp),
        ),
        Realization::FromOneReordered => apply(
            vec![r(Aux::XiStar, m.mp), r(Aux::XiTilde, m.np), r(Aux::Xi, m.m), r(Aux::XiBar, m.n)],
            Poly4::one(),
        ),
        Realization::FromOneInterleaved => apply(
            vec![r(Aux::Xi, m.m), r(Aux::XiStar, m.mp), r(Aux::XiBar, m.n), r(Aux::XiTilde, m.np)],
            Poly4::one(),
        ),
    }
}

/// The raising operator attached to each index slot as it is printed: the
/// third and fourth are interchanged relative to [`raising`].
pub fn raising_as_printed(slot: usize) -> LinOp {
    match slot {
        0 => raising(Aux::Xi),
        1 => raising(Aux::XiBar),
        2 => raising(Aux::XiTilde),
        _ => raising(Aux::XiStar),
    }
}
