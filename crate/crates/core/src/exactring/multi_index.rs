//! Multi-indices `M = (m, n, m', n')`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rational::{binomial, factorial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MultiIndex4 {
    pub m: u32,
    pub n: u32,
    pub mp: u32,
    pub np: u32,
}

impl MultiIndex4 {
    pub const ZERO: MultiIndex4 = MultiIndex4 { m: 0, n: 0, mp: 0, np: 0 };

    pub const fn new(m: u32, n: u32, mp: u32, np: u32) -> Self {
        MultiIndex4 { m, n, mp, np }
    }

    pub fn from_array(a: [u32; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [u32; 4] {
        [self.m, self.n, self.mp, self.np]
    }

    /// `|M|`.
    pub fn abs(self) -> u32 {
        self.m + self.n + self.mp + self.np
    }

    /// `M! = m!·n!·m'!·n'!`.
    pub fn factorial(self) -> Rational {
        self.to_array()
            .iter()
            .fold(Rational::one(), |acc, &k| &acc * &factorial(k))
    }

    /// `M!` as a float, for norms.
    pub fn factorial_f64(self) -> f64 {
        self.to_array()
            .iter()
            .map(|&k| (1..=k).map(f64::from).product::<f64>())
            .product()
    }

    /// Componentwise `J ≤ M`.
    pub fn dominates(self, j: MultiIndex4) -> bool {
        self.to_array().iter().zip(j.to_array()).all(|(a, b)| b <= *a)
    }

    /// `binom(M, J)`; `None` unless `J ≤ M`.
    pub fn binomial(self, j: MultiIndex4) -> Option<Rational> {
        if !self.dominates(j) {
            return None;
        }
        Some(
            self.to_array()
                .iter()
                .zip(j.to_array())
                .fold(Rational::one(), |acc, (&a, b)| &acc * &binomial(a, b)),
        )
    }

    /// Within-pair transpose: `(j,k,j',k') ↦ (k,j,k',j')`.
    pub fn transpose(self) -> Self {
        Self::new(self.n, self.m, self.np, self.mp)
    }

    pub fn checked_sub(self, j: MultiIndex4) -> Option<Self> {
        Some(Self::new(
            self.m.checked_sub(j.m)?,
            self.n.checked_sub(j.n)?,
            self.mp.checked_sub(j.mp)?,
            self.np.checked_sub(j.np)?,
        ))
    }

    pub fn add(self, j: MultiIndex4) -> Self {
        Self::new(self.m + j.m, self.n + j.n, self.mp + j.mp, self.np + j.np)
    }

    /// All `J ≤ self`, lexicographic.
    pub fn below(self) -> impl Iterator<Item = MultiIndex4> {
        let s = self;
        (0..=s.m).flat_map(move |a| {
            (0..=s.n).flat_map(move |b| {
                (0..=s.mp).flat_map(move |c| (0..=s.np).map(move |d| MultiIndex4::new(a, b, c, d)))
            })
        })
    }

    /// Every multi-index with each entry at most `max`, lexicographic.
    pub fn cube(max: u32) -> impl Iterator<Item = MultiIndex4> {
        MultiIndex4::new(max, max, max, max).below()
    }

    /// Every multi-index with `|M| ≤ total`, ordered by `|M|` then lexicographically.
    pub fn up_to_total(total: u32) -> Vec<MultiIndex4> {
        let mut out: Vec<_> = MultiIndex4::cube(total).filter(|m| m.abs() <= total).collect();
        out.sort_by_key(|m| (m.abs(), *m));
        out
    }
}

impl fmt::Display for MultiIndex4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m, self.n, self.mp, self.np)
    }
}

impl FromStr for MultiIndex4 {
    type Err = Error;

    /// Accepts `m,n,m',n'` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u32> = t
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("invalid multi-index `{s}`")))?;
        match parts.as_slice() {
            [a, b, c, d] => Ok(Self::new(*a, *b, *c, *d)),
            _ => Err(Error::Parse(format!("multi-index needs four entries: `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_laws() {
        let m = MultiIndex4::new(2, 1, 3, 0);
        assert_eq!(m.abs(), 6);
        assert_eq!(m.factorial(), Rational::from_int(12));
        assert_eq!(m.transpose(), MultiIndex4::new(1, 2, 0, 3));
        assert_eq!(m.binomial(MultiIndex4::new(1, 1, 1, 0)), Some(Rational::from_int(6)));
        assert_eq!(m.binomial(MultiIndex4::new(0, 0, 0, 1)), None);
        assert_eq!(m.below().count(), 3 * 2 * 4);
        assert_eq!(MultiIndex4::cube(3).count(), 256);
        assert_eq!(MultiIndex4::up_to_total(3).len(), 35);
        assert_eq!("(1,0,2,3)".parse::<MultiIndex4>().unwrap(), MultiIndex4::new(1, 0, 2, 3));
        assert!("1,2".parse::<MultiIndex4>().is_err());
    }
}
