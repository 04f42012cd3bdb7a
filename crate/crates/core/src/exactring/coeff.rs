//! Exact scalars in ℚ(i,√2).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// `a + b·i + c·√2 + d·i·√2` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffQi2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl CoeffQi2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        CoeffQi2 { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        CoeffQi2 {
            b: Rational::one(),
            ..Self::default()
        }
    }

    pub fn sqrt2() -> Self {
        CoeffQi2 {
            c: Rational::one(),
            ..Self::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        CoeffQi2 {
            a: r,
            ..Self::default()
        }
    }

    /// Gaussian rational `re + im·i`.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        CoeffQi2 {
            a: re,
            b: im,
            ..Self::default()
        }
    }

    pub fn gaussian_int(re: i64, im: i64) -> Self {
        Self::gaussian(Rational::from_int(re), Rational::from_int(im))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Complex conjugation: `i ↦ −i`, `√2` fixed.
    pub fn conj(&self) -> Self {
        CoeffQi2 {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        CoeffQi2 {
            a: &self.a * r,
            b: &self.b * r,
            c: &self.c * r,
            d: &self.d * r,
        }
    }

    fn is_gaussian(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_rational() {
            return o.scale(&self.a);
        }
        if o.is_rational() {
            return self.scale(&o.a);
        }
        if self.is_gaussian() && o.is_gaussian() {
            return CoeffQi2 {
                a: &self.a * &o.a - &self.b * &o.b,
                b: &self.a * &o.b + &self.b * &o.a,
                ..Self::default()
            };
        }
        let two = Rational::from_int(2);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        CoeffQi2 {
            a: a * e - b * f + &two * &(c * g - d * h),
            b: a * f + b * e + &two * &(c * h + d * g),
            c: a * g + c * e - b * h - d * f,
            d: a * h + d * e + b * g + c * f,
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Write x = p + q√2 with p, q ∈ ℚ(i); then x⁻¹ = (p − q√2)/(p² − 2q²).
        let p = CoeffQi2::gaussian(self.a.clone(), self.b.clone());
        let q = CoeffQi2::gaussian(self.c.clone(), self.d.clone());
        let norm = &(&p * &p) - &(&(&q * &q) * &CoeffQi2::from_int(2));
        // norm ∈ ℚ(i), nonzero since √2 ∉ ℚ(i)
        let n2 = &norm.a * &norm.a + &norm.b * &norm.b;
        let ninv = CoeffQi2::gaussian(&norm.a / &n2, -(&norm.b / &n2));
        let conj2 = CoeffQi2::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d);
        Ok(&conj2 * &ninv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    /// `(√2)^k`.
    pub fn sqrt2_pow(k: u32) -> Self {
        let half = Rational::from_int(2).pow(k / 2);
        if k % 2 == 0 {
            Self::from_rational(half)
        } else {
            CoeffQi2 {
                c: half,
                ..Self::default()
            }
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let s = std::f64::consts::SQRT_2;
        Complex64::new(
            self.a.to_f64() + s * self.c.to_f64(),
            self.b.to_f64() + s * self.d.to_f64(),
        )
    }
}

impl From<i64> for CoeffQi2 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for CoeffQi2 {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Add<&CoeffQi2> for &CoeffQi2 {
    type Output = CoeffQi2;
    fn add(self, o: &CoeffQi2) -> CoeffQi2 {
        CoeffQi2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }
}

impl Sub<&CoeffQi2> for &CoeffQi2 {
    type Output = CoeffQi2;
    fn sub(self, o: &CoeffQi2) -> CoeffQi2 {
        CoeffQi2 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
            d: &self.d - &o.d,
        }
    }
}

impl Mul<&CoeffQi2> for &CoeffQi2 {
    type Output = CoeffQi2;
    fn mul(self, o: &CoeffQi2) -> CoeffQi2 {
        self.mul_ref(o)
    }
}

impl Add for CoeffQi2 {
    type Output = CoeffQi2;
    fn add(self, o: CoeffQi2) -> CoeffQi2 {
        &self + &o
    }
}

impl Sub for CoeffQi2 {
    type Output = CoeffQi2;
    fn sub(self, o: CoeffQi2) -> CoeffQi2 {
        &self - &o
    }
}

impl Mul for CoeffQi2 {
    type Output = CoeffQi2;
    fn mul(self, o: CoeffQi2) -> CoeffQi2 {
        self.mul_ref(&o)
    }
}

impl Neg for &CoeffQi2 {
    type Output = CoeffQi2;
    fn neg(self) -> CoeffQi2 {
        CoeffQi2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl Neg for CoeffQi2 {
    type Output = CoeffQi2;
    fn neg(self) -> CoeffQi2 {
        -&self
    }
}

impl AddAssign<&CoeffQi2> for CoeffQi2 {
    fn add_assign(&mut self, o: &CoeffQi2) {
        self.a += &o.a;
        self.b += &o.b;
        self.c += &o.c;
        self.d += &o.d;
    }
}

impl SubAssign<&CoeffQi2> for CoeffQi2 {
    fn sub_assign(&mut self, o: &CoeffQi2) {
        self.a -= &o.a;
        self.b -= &o.b;
        self.c -= &o.c;
        self.d -= &o.d;
    }
}

/// Human-readable form such as `3 - 2i + √2 + i√2`; rationals print as `p/q`
/// only when non-integral.
impl fmt::Display for CoeffQi2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.a, ""), (&self.b, "i"), (&self.c, "√2"), (&self.d, "i√2")];
        let mut first = true;
        for (r, unit) in parts {
            if r.is_zero() {
                continue;
            }
            let neg = r.signum() < 0;
            let abs = if neg { -r } else { r.clone() };
            let mag = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                abs.to_string()
            };
            let body = match (unit, mag.as_str()) {
                ("", m) => m.to_string(),
                (u, "1") => u.to_string(),
                (u, m) => format!("{m}{u}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffQi2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form: each part as a `"p/q"` string.
#[derive(Serialize, Deserialize)]
pub(crate) struct CoeffWire {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

impl From<&CoeffQi2> for CoeffWire {
    fn from(x: &CoeffQi2) -> Self {
        CoeffWire {
            a: x.a.to_string(),
            b: x.b.to_string(),
            c: x.c.to_string(),
            d: x.d.to_string(),
        }
    }
}

impl TryFrom<CoeffWire> for CoeffQi2 {
    type Error = Error;
    fn try_from(w: CoeffWire) -> Result<Self> {
        Ok(CoeffQi2 {
            a: w.a.parse()?,
            b: w.b.parse()?,
            c: w.c.parse()?,
            d: w.d.parse()?,
        })
    }
}
