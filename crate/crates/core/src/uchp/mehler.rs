//! Generating and Mehler-type bilinear kernels for `H_{m,n}`.
//!
//! Each kernel has a truncated-series side, summed directly from the
//! polynomial values, and a closed-form side. Where the published closed
//! form is misprinted both the printed and the corrected expressions are
//! available through [`Variant`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::uchp_values;
use crate::error::{Error, Result};
use crate::exactring::MultiIndex4;
use crate::numerics::kahan::ComplexSum;

/// Which reading of a closed form to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    AsPrinted,
    Corrected,
}

/// Evaluation point for every kernel. Unused fields are ignored.
///
/// Fixed indices live in `fixed`: kernels with fixed `(m, m')` read
/// `fixed.m` and `fixed.mp`; with fixed `(n, n')` they read `fixed.n` and
/// `fixed.np`, and so on by name.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenPoint {
    pub z: Complex64,
    pub w: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub up: Complex64,
    pub vp: Complex64,
    pub t: Complex64,
    pub fixed: MultiIndex4,
}

impl Default for GenPoint {
    fn default() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        GenPoint {
            z: zero,
            w: zero,
            u: zero,
            v: zero,
            up: zero,
            vp: zero,
            t: Complex64::new(1.0, 0.0),
            fixed: MultiIndex4::ZERO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MehlerKernel {
    /// `Σ u^m v^n/(m! n!) H_{m,n}(z)`.
    GenHmn,
    /// `Σ_n t^n/n! H_{m,n}(z) H_{n,m'}(w)`, `|t| = 1`.
    Genfct1hh,
    /// `Σ u^m v^n/(m! n!) H_{m,n}(z) H_{m,n}(w)`, `|uv| < 1`.
    Mehler2,
    /// `Σ u^m t^n/(m! n!) H_{m,n}(z) H_{m,n}(w̄, w)`, `|t| = 1`, `|u| < 1`.
    BilGen2,
    /// `Σ u^m t^n/(m! n!) H_{m,n}(z) H_{n,m'}(w)`, `|t| = 1`.
    BilGen1,
}

impl MehlerKernel {
    pub const ALL: [MehlerKernel; 5] = [
        MehlerKernel::GenHmn,
        MehlerKernel::Genfct1hh,
        MehlerKernel::Mehler2,
        MehlerKernel::BilGen2,
        MehlerKernel::BilGen1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MehlerKernel::GenHmn => "GenHmn",
            MehlerKernel::Genfct1hh => "genfct1hh",
            MehlerKernel::Mehler2 => "Mehler2",
            MehlerKernel::BilGen2 => "BilGen2",
            MehlerKernel::BilGen1 => "BilGen1",
        }
    }

    /// Whether the kernel is only valid for `t` on the unit circle.
    pub fn needs_unit_t(self) -> bool {
        matches!(
            self,
            MehlerKernel::Genfct1hh | MehlerKernel::BilGen2 | MehlerKernel::BilGen1
        )
    }

    /// Whether the printed closed form differs from the corrected one.
    pub fn has_erratum(self) -> bool {
        matches!(self, MehlerKernel::BilGen1)
    }

    pub fn series(self, p: &GenPoint, order: usize) -> Complex64 {
        let (z, w) = (p.z, p.w);
        let n1 = order;
        match self {
            MehlerKernel::GenHmn => {
                let h = uchp_values(z, z.conj(), n1, n1);
                double_sum(n1, n1, p.u, p.v, |m, n| h[m][n])
            }
            MehlerKernel::Genfct1hh => {
                let (m, mp) = (p.fixed.m as usize, p.fixed.mp as usize);
                let hz = uchp_values(z, z.conj(), m, n1);
                let hw = uchp_values(w, w.conj(), n1, mp);
                let one = Complex64::new(1.0, 0.0);
                double_sum(0, n1, one, p.t, |_, n| hz[m][n] * hw[n][mp])
            }
            MehlerKernel::Mehler2 => {
                let hz = uchp_values(z, z.conj(), n1, n1);
                let hw = uchp_values(w, w.conj(), n1, n1);
                double_sum(n1, n1, p.u, p.v, |m, n| hz[m][n] * hw[m][n])
            }
            MehlerKernel::BilGen2 => {
                let hz = uchp_values(z, z.conj(), n1, n1);
                let hw = uchp_values(w.conj(), w, n1, n1);
                double_sum(n1, n1, p.u, p.t, |m, n| hz[m][n] * hw[m][n])
            }
            MehlerKernel::BilGen1 => {
                let mp = p.fixed.mp as usize;
                let hz = uchp_values(z, z.conj(), n1, n1);
                let hw = uchp_values(w, w.conj(), n1, mp);
                double_sum(n1, n1, p.u, p.t, |m, n| hz[m][n] * hw[n][mp])
            }
        }
    }

    pub fn closed(self, p: &GenPoint, variant: Variant) -> Result<Complex64> {
        let (z, w, u, v, t) = (p.z, p.w, p.u, p.v, p.t);
        let (zb, wb) = (z.conj(), w.conj());
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            MehlerKernel::GenHmn => (-u * v + z * u + zb * v).exp(),
            MehlerKernel::Genfct1hh => {
                check_unit(t)?;
                let (m, mp) = (p.fixed.m, p.fixed.mp);
                (-t).powu(mp)
                    * super::uchp_value(m, mp, z - t * w, zb - t.conj() * wb)
                    * (t * w * zb).exp()
            }
            MehlerKernel::Mehler2 => {
                if (u * v).norm() >= 1.0 {
                    return Err(Error::Domain("Mehler kernel needs |uv| < 1".into()));
                }
                let d = one - u * v;
                (-(u * v * (z.norm_sqr() + w.norm_sqr()) - u * z * w - v * zb * wb) / d).exp() / d
            }
            MehlerKernel::BilGen2 => {
                check_unit(t)?;
                check_disc(u)?;
                let d = one - t * u;
                (-t * u * (z - t * w).norm_sqr() / d).exp() / d * (t * w * zb).exp()
            }
            MehlerKernel::BilGen1 => {
                check_unit(t)?;
                let mp = p.fixed.mp;
                match variant {
                    Variant::AsPrinted => {
                        (wb - t * zb + u).powu(mp) * (t * zb * w - u * t * (w - t.conj() * z)).exp()
                    }
                    Variant::Corrected => {
                        (-t * (zb - t.conj() * wb - u)).powu(mp) * (u * (z - t * w) + t * w * zb).exp()
                    }
                }
            }
        })
    }
}

impl fmt::Display for MehlerKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MehlerKernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MehlerKernel::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown kernel `{s}`")))
    }
}

pub(crate) fn check_unit(t: Complex64) -> Result<()> {
    if (t.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("t = {t} must lie on the unit circle")));
    }
    Ok(())
}

pub(crate) fn check_disc(u: Complex64) -> Result<()> {
    if u.norm() >= 1.0 {
        return Err(Error::Domain(format!("|u| = {} must be < 1", u.norm())));
    }
    Ok(())
}

/// `1/k!` for `k ≤ n`.
pub(crate) fn inv_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = 1.0;
    out.push(1.0);
    for k in 1..=n {
        f /= k as f64;
        out.push(f);
    }
    out
}

/// `(x^k/k!)_{k ≤ n}`.
pub(crate) fn scaled_powers(x: Complex64, n: usize) -> Vec<Complex64> {
    let inv = inv_factorials(n);
    let mut p = Complex64::new(1.0, 0.0);
    (0..=n)
        .map(|k| {
            let v = p * inv[k];
            p *= x;
            v
        })
        .collect()
}

/// `Σ_{m ≤ nm, n ≤ nn} a^m b^n/(m! n!) f(m, n)` in lexicographic order.
fn double_sum(
    nm: usize,
    nn: usize,
    a: Complex64,
    b: Complex64,
    f: impl Fn(usize, usize) -> Complex64,
) -> Complex64 {
    let pa = scaled_powers(a, nm);
    let pb = scaled_powers(b, nn);
    let mut s = ComplexSum::new();
    for (m, am) in pa.iter().enumerate() {
        for (n, bn) in pb.iter().enumerate() {
            s.add(am * bn * f(m, n));
        }
    }
    s.value()
}
