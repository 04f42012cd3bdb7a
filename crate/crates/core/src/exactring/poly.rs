//! Sparse multivariate polynomials over ℚ(i,√2) in conjugate variable pairs.
//!
//! Variables come in pairs `(x, x̄)` at positions `(2k, 2k+1)`. The conjugate
//! of each variable is treated as an independent formal variable; only
//! [`Poly::conj`] links the two members of a pair.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::CoeffQi2;
use super::rational::Rational;

pub type Exp<const N: usize> = [u32; N];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<Exp<N>, CoeffQi2>,
}

/// Polynomial in `(z, z̄, w, w̄)`.
pub type Poly4 = Poly<4>;
/// Polynomial in `(u, ū)`.
pub type Poly2 = Poly<2>;

/// Variables of a [`Poly4`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z = 0,
    Zbar = 1,
    W = 2,
    Wbar = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z, Var::Zbar, Var::W, Var::Wbar];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn conj(self) -> Var {
        match self {
            Var::Z => Var::Zbar,
            Var::Zbar => Var::Z,
            Var::W => Var::Wbar,
            Var::Wbar => Var::W,
        }
    }

    pub fn name(self) -> &'static str {
        VARS4[self.index()]
    }
}

pub const VARS4: [&str; 4] = ["z", "zbar", "w", "wbar"];
pub const VARS2: [&str; 2] = ["u", "ubar"];

pub(crate) fn var_names<const N: usize>() -> &'static [&'static str] {
    match N {
        4 => &VARS4,
        2 => &VARS2,
        _ => &[],
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(CoeffQi2::one())
    }

    pub fn constant(c: CoeffQi2) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: Exp<N>, c: CoeffQi2) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// The `k`-th variable.
    pub fn var(k: usize) -> Self {
        let mut e = [0; N];
        e[k] = 1;
        Self::monomial(e, CoeffQi2::one())
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exp<N>, CoeffQi2)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp<N>, c: &CoeffQi2) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp<N>, &CoeffQi2)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp<N>) -> CoeffQi2 {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    /// The homogeneous part of top total degree.
    pub fn leading_part(&self) -> Self {
        match self.total_degree() {
            None => Self::zero(),
            Some(d) => Poly {
                terms: self
                    .terms
                    .iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() == d)
                    .map(|(e, c)| (*e, c.clone()))
                    .collect(),
            },
        }
    }

    pub fn scale(&self, c: &CoeffQi2) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.scale(r))).collect(),
        }
    }

    /// Multiplies by the `k`-th variable.
    pub fn mul_var(&self, k: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[k] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Formal partial derivative in the `k`-th variable.
    pub fn diff(&self, k: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[k] > 0)
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[k] -= 1;
                    (e2, c.scale(&Rational::from_int(e[k] as i64)))
                })
                .collect(),
        }
    }

    /// Swaps the members of every conjugate pair, leaving coefficients alone.
    pub fn swap_pairs(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (swap_exp(e), c.clone()))
                .collect(),
        }
    }

    /// Complex conjugate: swaps pairs and conjugates coefficients.
    pub fn conj(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (swap_exp(e), c.conj()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation with every variable given independently.
    pub fn eval_exact(&self, vals: &[CoeffQi2; N]) -> CoeffQi2 {
        let tables: Vec<Vec<CoeffQi2>> = (0..N)
            .map(|k| power_table(&vals[k], self.degree_in(k)))
            .collect();
        let mut acc = CoeffQi2::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..N {
                if e[k] > 0 {
                    t = &t * &tables[k][e[k] as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Floating evaluation with every variable given independently.
    ///
    /// Nested Horner in lexicographic exponent order: the innermost variable
    /// is the last one.
    pub fn eval_complex_vars(&self, vals: &[Complex64; N]) -> Complex64 {
        let terms: Vec<(Exp<N>, Complex64)> =
            self.terms.iter().map(|(e, c)| (*e, c.to_complex())).collect();
        horner(&terms, 0, vals)
    }

    /// Substitutes a polynomial for each variable.
    pub fn subst<const M: usize>(&self, images: &[Poly<M>; N]) -> Poly<M> {
        let tables: Vec<Vec<Poly<M>>> = (0..N)
            .map(|k| {
                let mut t = vec![Poly::<M>::one()];
                for j in 0..self.degree_in(k) as usize {
                    let next = &t[j] * &images[k];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc: HashMap<Exp<M>, CoeffQi2> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = Poly::<M>::constant(c.clone());
            for k in 0..N {
                if e[k] > 0 {
                    t = &t * &tables[k][e[k] as usize];
                }
            }
            for (e2, c2) in t.terms {
                *acc.entry(e2).or_default() += &c2;
            }
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Exp<N>, CoeffQi2>) -> Self {
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Exp<N>, CoeffQi2> =
            HashMap::with_capacity(self.terms.len() * o.terms.len() / 2 + 1);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for k in 0..N {
                    e[k] += e2[k];
                }
                let prod = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Self::from_map(acc)
    }
}

impl Poly4 {
    pub fn z() -> Self {
        Self::var(0)
    }
    pub fn zbar() -> Self {
        Self::var(1)
    }
    pub fn w() -> Self {
        Self::var(2)
    }
    pub fn wbar() -> Self {
        Self::var(3)
    }

    /// `ξ = z + iw`.
    pub fn xi() -> Self {
        &Self::z() + &Self::w().scale(&CoeffQi2::i())
    }
    /// `ξ̄ = z̄ − iw̄`.
    pub fn xi_bar() -> Self {
        &Self::zbar() - &Self::wbar().scale(&CoeffQi2::i())
    }
    /// `ξ* = z̄ + iw̄`.
    pub fn xi_star() -> Self {
        &Self::zbar() + &Self::wbar().scale(&CoeffQi2::i())
    }
    /// `ξ̃ = z − iw`.
    pub fn xi_tilde() -> Self {
        &Self::z() - &Self::w().scale(&CoeffQi2::i())
    }

    /// Evaluation at a genuine point `(z, w)` of ℂ²; `z̄, w̄` are conjugates.
    pub fn eval_complex(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.eval_complex_vars(&[z, z.conj(), w, w.conj()])
    }

    pub fn eval_exact_at(&self, z: &CoeffQi2, w: &CoeffQi2) -> CoeffQi2 {
        self.eval_exact(&[z.clone(), z.conj(), w.clone(), w.conj()])
    }
}

impl Poly2 {
    pub fn u() -> Self {
        Self::var(0)
    }
    pub fn ubar() -> Self {
        Self::var(1)
    }

    pub fn eval_complex(&self, u: Complex64) -> Complex64 {
        self.eval_complex_vars(&[u, u.conj()])
    }

    /// Substitutes `u ↦ a`, `ū ↦ b`; the images need not be conjugate.
    pub fn subst2(&self, a: &Poly4, b: &Poly4) -> Poly4 {
        self.subst(&[a.clone(), b.clone()])
    }
}

fn swap_exp<const N: usize>(e: &Exp<N>) -> Exp<N> {
    let mut out = *e;
    for k in (0..N - N % 2).step_by(2) {
        out.swap(k, k + 1);
    }
    out
}

fn power_table(x: &CoeffQi2, deg: u32) -> Vec<CoeffQi2> {
    let mut t = Vec::with_capacity(deg as usize + 1);
    t.push(CoeffQi2::one());
    for j in 0..deg as usize {
        let next = &t[j] * x;
        t.push(next);
    }
    t
}

/// Terms sorted lexicographically; groups on variable `k` and recurses.
fn horner<const N: usize>(terms: &[(Exp<N>, Complex64)], k: usize, vals: &[Complex64; N]) -> Complex64 {
    if terms.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if k == N {
        return terms.iter().map(|(_, c)| *c).sum();
    }
    // groups are ascending in e[k]; evaluate from the top group down
    let mut groups: Vec<(u32, &[(Exp<N>, Complex64)])> = Vec::new();
    let mut start = 0;
    for i in 1..=terms.len() {
        if i == terms.len() || terms[i].0[k] != terms[start].0[k] {
            groups.push((terms[start].0[k], &terms[start..i]));
            start = i;
        }
    }
    let x = vals[k];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut deg = groups.last().map(|g| g.0).unwrap_or(0);
    for (d, g) in groups.iter().rev() {
        while deg > *d {
            acc *= x;
            deg -= 1;
        }
        acc += horner(g, k + 1, vals);
    }
    while deg > 0 {
        acc *= x;
        deg -= 1;
    }
    acc
}

impl<const N: usize> Add<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, o: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<const N: usize> Sub<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, o: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<const N: usize> Mul<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, o: &Poly<N>) -> Poly<N> {
        self.mul_ref(o)
    }
}

impl<const N: usize> Add for Poly<N> {
    type Output = Poly<N>;
    fn add(self, o: Poly<N>) -> Poly<N> {
        &self + &o
    }
}

impl<const N: usize> Sub for Poly<N> {
    type Output = Poly<N>;
    fn sub(self, o: Poly<N>) -> Poly<N> {
        &self - &o
    }
}

impl<const N: usize> Mul for Poly<N> {
    type Output = Poly<N>;
    fn mul(self, o: Poly<N>) -> Poly<N> {
        self.mul_ref(&o)
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<const N: usize> Neg for Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        -&self
    }
}

/// Pretty form, e.g. `(1)·z·zbar + (-1)`.
impl<const N: usize> fmt::Display for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = var_names::<N>();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for k in 0..N {
                let name = names.get(k).copied().unwrap_or("x");
                match e[k] {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    p => write!(f, "·{name}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn i() -> CoeffQi2 {
        CoeffQi2::i()
    }

    fn arb_poly4(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly4> {
        let term = (
            prop::array::uniform4(0..=max_deg),
            -5i64..5,
            -5i64..5,
            -2i64..2,
        );
        prop::collection::vec(term, 0..max_terms).prop_map(move |ts| {
            Poly4::from_terms(ts.into_iter().filter(|(e, ..)| e.iter().sum::<u32>() <= max_deg).map(
                |(e, a, b, c)| {
                    (
                        e,
                        CoeffQi2::new(
                            Rational::from_int(a),
                            Rational::from_int(b),
                            Rational::from_int(c),
                            Rational::zero(),
                        ),
                    )
                },
            ))
        })
    }

    fn arb_poly2(max_deg: u32) -> impl Strategy<Value = Poly2> {
        prop::collection::vec(((0..=max_deg), (0..=max_deg), -4i64..4, -4i64..4), 0..6).prop_map(
            move |ts| {
                Poly2::from_terms(
                    ts.into_iter()
                        .filter(|(a, b, ..)| a + b <= max_deg)
                        .map(|(a, b, re, im)| ([a, b], CoeffQi2::gaussian_int(re, im))),
                )
            },
        )
    }

    #[test]
    fn small_products() {
        let p = &Poly4::xi() * &Poly4::xi_tilde();
        assert_eq!(p, &Poly4::z().pow(2) + &Poly4::w().pow(2));
        assert_eq!(Poly4::xi().conj(), Poly4::xi_bar());
        let q = &(&Poly4::z() * &Poly4::zbar()) - &Poly4::one();
        assert_eq!(&q + &Poly4::one(), &Poly4::z() * &Poly4::zbar());
    }

    #[test]
    fn derivatives() {
        let p = &Poly4::z().pow(2) * &Poly4::zbar();
        assert_eq!(p.diff(0), (&Poly4::z() * &Poly4::zbar()).scale(&CoeffQi2::from_int(2)));
        assert!(Poly4::z().pow(2).diff(2).is_zero());
        let q = &(&Poly4::z() * &Poly4::zbar()) - &Poly4::one();
        assert_eq!(q.diff(1), Poly4::z());
    }

    #[test]
    fn substitution_examples() {
        let u2 = Poly2::u().pow(2);
        let img = u2.subst2(&Poly4::xi(), &Poly4::xi_bar());
        let want = &(&Poly4::z().pow(2) + &(&Poly4::z() * &Poly4::w()).scale(&CoeffQi2::gaussian_int(0, 2)))
            - &Poly4::w().pow(2);
        assert_eq!(img, want);
        let uu = &Poly2::u() * &Poly2::ubar();
        let got = uu.subst2(&Poly4::xi(), &Poly4::xi_bar());
        let want = Poly4::z() * Poly4::zbar() + (Poly4::w() * Poly4::zbar()).scale(&i())
            - (Poly4::z() * Poly4::wbar()).scale(&i())
            + Poly4::w() * Poly4::wbar();
        assert_eq!(got, want);
        assert_eq!(Poly2::one().subst2(&Poly4::z(), &Poly4::w()), Poly4::one());
    }

    #[test]
    fn evaluation_examples() {
        let q = &(&Poly4::z() * &Poly4::zbar()) - &Poly4::one();
        let z = CoeffQi2::gaussian_int(1, 1);
        assert_eq!(q.eval_exact_at(&z, &CoeffQi2::from_int(7)), CoeffQi2::one());
        assert!(Poly4::xi().eval_exact_at(&CoeffQi2::zero(), &CoeffQi2::zero()).is_zero());
        let s = &Poly4::z().pow(2) + &Poly4::w().pow(2);
        assert!(s.eval_exact_at(&CoeffQi2::one(), &i()).is_zero());
        let v = q.eval_complex(Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0));
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        let v = Poly4::xi().eval_complex(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((v - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        assert_eq!(Poly4::one().eval_complex(Complex64::new(3.0, -2.0), Complex64::new(0.5, 1.0)), Complex64::new(1.0, 0.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conj_is_multiplicative(p in arb_poly4(3, 8), q in arb_poly4(3, 8)) {
            prop_assert_eq!((&p * &q).conj(), &p.conj() * &q.conj());
            prop_assert_eq!(p.conj().conj(), p.clone());
            prop_assert_eq!(p.conj().diff(0), p.diff(1).conj());
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!((&p * &q).total_degree().unwrap(),
                    p.total_degree().unwrap() + q.total_degree().unwrap());
            }
        }

        #[test]
        fn leibniz(p in arb_poly4(3, 6), q in arb_poly4(3, 6), k in 0usize..4) {
            prop_assert_eq!((&p * &q).diff(k), &(&p.diff(k) * &q) + &(&p * &q.diff(k)));
        }

        #[test]
        fn subst_is_homomorphism(p in arb_poly2(3), q in arb_poly2(2), a in arb_poly4(2, 3), b in arb_poly4(2, 3)) {
            let imgs = [a, b];
            prop_assert_eq!((&p * &q).subst(&imgs), &p.subst(&imgs) * &q.subst(&imgs));
        }

        #[test]
        fn complex_eval_matches_exact(p in arb_poly4(6, 12), zr in -8i64..=8, zi in -8i64..=8, wr in -8i64..=8, wi in -8i64..=8) {
            let z = CoeffQi2::gaussian_int(zr, zi);
            let w = CoeffQi2::gaussian_int(wr, wi);
            let exact = p.eval_exact_at(&z, &w).to_complex();
            let approx = p.eval_complex(z.to_complex(), w.to_complex());
            // relative to the sum of absolute term values, the natural conditioning scale
            let (az, aw) = (z.to_complex().norm(), w.to_complex().norm());
            let scale: f64 = p.terms().map(|(e, c)| {
                c.to_complex().norm() * az.powi((e[0] + e[1]) as i32) * aw.powi((e[2] + e[3]) as i32)
            }).sum();
            prop_assert!((exact - approx).norm() <= 1e-12 * scale.max(1.0),
                "exact {exact} approx {approx}");
        }
    }
}
