//! Generating functions of `H_{m,n,m',n'}`.
//!
//! Series sides are summed from the product form with UCHP values from the
//! three-term recurrence; closed sides are evaluated directly. Kernels with a
//! misprinted closed form (or, for [`GenFunKernel::G4`], a misprinted series)
//! expose both readings through [`Variant`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::BchpGrid;
use crate::error::{Error, Result};
use crate::numerics::kahan::ComplexSum;
use crate::uchp::mehler::{check_disc, check_unit, scaled_powers, GenPoint, Variant};
use crate::uchp::{uchp_value, uchp_values};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenFunKernel {
    /// `Σ_n t^n/n! H_{m,n,n,m'}`, `|t| = 1`.
    Gf4,
    /// `Σ u^m v^n/(m! n!) H_{m,n,m,n}`, `|uv| < 1`.
    G2,
    /// `Σ u^m t^n/(m! n!) H_{m,n,n,m}`, `|t| = 1`, `|u| < 1`.
    GenFct4,
    /// `Σ u^m/(m! n!) H_{m,n,n,m}`, `|u| < 1`.
    GenFct4pc,
    /// `Σ u^m t^n/(m! n!) H_{m,n,n,m'}`, `|t| = 1`.
    GenFct5,
    /// `Σ u^m v^n u'^{m'} v'^{n'}/(m! n! m'! n'!) H_{m,n,m',n'}`.
    G4,
    /// `Σ u^m u'^{m'}/(m! m'!) H_{m,n,m',n'}` with `(n, n')` fixed.
    PartialGF1,
    /// `Σ u^m v^n/(m! n!) H_{m,n,m',n'}` with `(m', n')` fixed.
    PartialGF2,
    /// `Σ (−1)^{k'} i^j u^j v^{j'} z^k w^{k'}/(j! k! j'! k'!)
    ///  H_{j'+m', k'+n'}(z̄, z) H_{j+m, k+n}(w, w̄)` with `M` fixed.
    TM,
}

impl GenFunKernel {
    pub const ALL: [GenFunKernel; 9] = [
        GenFunKernel::Gf4,
        GenFunKernel::G2,
        GenFunKernel::GenFct4,
        GenFunKernel::GenFct4pc,
        GenFunKernel::GenFct5,
        GenFunKernel::G4,
        GenFunKernel::PartialGF1,
        GenFunKernel::PartialGF2,
        GenFunKernel::TM,
    ];

    pub fn id(self) -> &'static str {
        match self {
            GenFunKernel::Gf4 => "gf-4",
            GenFunKernel::G2 => "GenFct3",
            GenFunKernel::GenFct4 => "GenFct4",
            GenFunKernel::GenFct4pc => "GenFct4pc",
            GenFunKernel::GenFct5 => "GenFct5",
            GenFunKernel::G4 => "GenFctHq1",
            GenFunKernel::PartialGF1 => "PartialGF1",
            GenFunKernel::PartialGF2 => "PartialGF2",
            GenFunKernel::TM => "T_M",
        }
    }

    pub fn needs_unit_t(self) -> bool {
        matches!(self, GenFunKernel::Gf4 | GenFunKernel::GenFct4 | GenFunKernel::GenFct5)
    }

    /// Whether the printed form differs from the corrected one.
    pub fn has_erratum(self) -> bool {
        !matches!(
            self,
            GenFunKernel::GenFct4 | GenFunKernel::GenFct4pc | GenFunKernel::PartialGF1
        )
    }

    /// Truncated series with every summation index `≤ order`.
    ///
    /// Only [`GenFunKernel::G4`] reads `variant`: the printed series pairs
    /// the parameters with `H_{m,m',n,n'}` instead of `H_{m,n,m',n'}`.
    pub fn series(self, p: &GenPoint, order: usize, variant: Variant) -> Complex64 {
        let f = p.fixed;
        let (fm, fn_, fmp, fnp) = (f.m as usize, f.n as usize, f.mp as usize, f.np as usize);
        let max = order.max(fm).max(fn_).max(fmp).max(fnp);
        let g = BchpGrid::new(p.z, p.w, max);
        let h = |m: usize, n: usize, mp: usize, np: usize| g.first[m][n] * g.second[mp][np];
        match self {
            GenFunKernel::Gf4 => {
                let pt = scaled_powers(p.t, order);
                sum1(order, |n| pt[n] * h(fm, n, n, fmp))
            }
            GenFunKernel::G2 => sum2(order, p.u, p.v, |m, n| h(m, n, m, n)),
            GenFunKernel::GenFct4 => sum2(order, p.u, p.t, |m, n| h(m, n, n, m)),
            GenFunKernel::GenFct4pc => sum2(order, p.u, ONE, |m, n| h(m, n, n, m)),
            GenFunKernel::GenFct5 => sum2(order, p.u, p.t, |m, n| h(m, n, n, fmp)),
            GenFunKernel::G4 => {
                let (pu, pv, pup, pvp) = (
                    scaled_powers(p.u, order),
                    scaled_powers(p.v, order),
                    scaled_powers(p.up, order),
                    scaled_powers(p.vp, order),
                );
                let mut s = ComplexSum::new();
                for m in 0..=order {
                    for n in 0..=order {
                        for mp in 0..=order {
                            for np in 0..=order {
                                let hv = match variant {
                                    Variant::Corrected => h(m, n, mp, np),
                                    Variant::AsPrinted => h(m, mp, n, np),
                                };
                                s.add(pu[m] * pv[n] * pup[mp] * pvp[np] * hv);
                            }
                        }
                    }
                }
                s.value()
            }
            GenFunKernel::PartialGF1 => sum2(order, p.u, p.up, |m, mp| h(m, fn_, mp, fnp)),
            GenFunKernel::PartialGF2 => sum2(order, p.u, p.v, |m, n| h(m, n, fmp, fnp)),
            GenFunKernel::TM => tm_series(p, order),
        }
    }

    pub fn closed(self, p: &GenPoint, variant: Variant) -> Result<Complex64> {
        let (z, w, u, v, t) = (p.z, p.w, p.u, p.v, p.t);
        let (zb, wb) = (z.conj(), w.conj());
        let f = p.fixed;
        let xi = z + I * w;
        let xib = zb - I * wb;
        let xis = zb + I * wb;
        let xit = z - I * w;
        // ζ = (z − t z̄) + i(w − t w̄)
        let zeta = (z - t * zb) + I * (w - t * wb);
        let quad = zb * zb + wb * wb;
        Ok(match self {
            GenFunKernel::Gf4 => {
                check_unit(t)?;
                let pre = match variant {
                    Variant::Corrected => (-t).powu(f.mp),
                    Variant::AsPrinted => (-t).powi(-(f.mp as i32)),
                };
                pre * uchp_value(f.m, f.mp, zeta, zeta.conj()) * (t * quad).exp()
            }
            GenFunKernel::G2 => {
                if (u * v).norm() >= 1.0 {
                    return Err(Error::Domain("needs |uv| < 1".into()));
                }
                let d = ONE - u * v;
                let re_zwb = (z * wb).re;
                let last = match variant {
                    Variant::Corrected => 2.0 * I * (u - v) * re_zwb,
                    Variant::AsPrinted => 2.0 * I * re_zwb,
                };
                let e = (u + v - 2.0 * u * v) * z.norm_sqr() - (u + v + 2.0 * u * v) * w.norm_sqr() + last;
                (e / d).exp() / d
            }
            GenFunKernel::GenFct4 => {
                check_unit(t)?;
                check_disc(u)?;
                let d = ONE - u * t;
                (t * quad).exp() / d * (-u * t / d * zeta.norm_sqr()).exp()
            }
            GenFunKernel::GenFct4pc => {
                check_disc(u)?;
                let d = ONE - u;
                let ims = z.im * z.im + w.im * w.im;
                (quad).exp() / d * (-4.0 * u / d * ims).exp()
            }
            GenFunKernel::GenFct5 => {
                check_unit(t)?;
                match variant {
                    Variant::Corrected => {
                        (xit - t * xib + t * u).powu(f.mp) * (t * quad + u * zeta).exp()
                    }
                    Variant::AsPrinted => {
                        (t * u + zeta).powu(f.mp) * (t * quad + u * zeta.conj()).exp()
                    }
                }
            }
            GenFunKernel::G4 => {
                let (up, vp) = (p.up, p.vp);
                (-u * v - up * vp).exp()
                    * (z * (u + vp) + zb * (v + up) + I * w * (u - vp) + I * wb * (up - v)).exp()
            }
            GenFunKernel::PartialGF1 => {
                let up = p.up;
                (xib - u).powu(f.n) * (xit - up).powu(f.np) * (u * xi + up * xis).exp()
            }
            GenFunKernel::PartialGF2 => match variant {
                Variant::Corrected => {
                    (-u * v + u * xi + v * xib).exp() * uchp_value(f.mp, f.np, xis, xit)
                }
                Variant::AsPrinted => {
                    (u * v - u * xi - v * xib).exp() * uchp_value(f.mp, f.np, xis, w - I * w)
                }
            },
            GenFunKernel::TM => match variant {
                Variant::Corrected => {
                    (I * u * w + z * wb - I * u * z + v * zb - w * z + v * w).exp()
                        * uchp_value(f.m, f.n, w - z, wb - I * u)
                        * uchp_value(f.mp, f.np, zb + w, z - v)
                }
                Variant::AsPrinted => tm_as_printed(p, f.n),
            },
        })
    }
}

/// Printed closed form of [`GenFunKernel::TM`],
/// `(−1)^{|M|} i^k e^{uξ + vξ*} H_M(z, w)`, for a chosen phase exponent `k`.
pub fn tm_as_printed(p: &GenPoint, k: u32) -> Complex64 {
    let (z, w) = (p.z, p.w);
    let xi = z + I * w;
    let xis = z.conj() + I * w.conj();
    let sign = if p.fixed.abs() % 2 == 0 { 1.0 } else { -1.0 };
    sign * I.powu(k) * (p.u * xi + p.v * xis).exp() * super::bchp_value(p.fixed, z, w)
}

fn tm_series(p: &GenPoint, order: usize) -> Complex64 {
    let (z, w, u, v) = (p.z, p.w, p.u, p.v);
    let f = p.fixed;
    let (m, n, mp, np) = (f.m as usize, f.n as usize, f.mp as usize, f.np as usize);
    let hz = uchp_values(z.conj(), z, order + mp, order + np);
    let hw = uchp_values(w, w.conj(), order + m, order + n);
    let pj = scaled_powers(I * u, order);
    let pjp = scaled_powers(v, order);
    let pk = scaled_powers(z, order);
    let pkp = scaled_powers(-w, order);
    let mut s = ComplexSum::new();
    for j in 0..=order {
        for k in 0..=order {
            let a = pj[j] * pk[k] * hw[j + m][k + n];
            for jp in 0..=order {
                for kp in 0..=order {
                    s.add(a * pjp[jp] * pkp[kp] * hz[jp + mp][kp + np]);
                }
            }
        }
    }
    s.value()
}

fn sum1(order: usize, f: impl Fn(usize) -> Complex64) -> Complex64 {
    let mut s = ComplexSum::new();
    for n in 0..=order {
        s.add(f(n));
    }
    s.value()
}

fn sum2(order: usize, a: Complex64, b: Complex64, f: impl Fn(usize, usize) -> Complex64) -> Complex64 {
    let pa = scaled_powers(a, order);
    let pb = scaled_powers(b, order);
    let mut s = ComplexSum::new();
    for (m, am) in pa.iter().enumerate() {
        for (n, bn) in pb.iter().enumerate() {
            s.add(am * bn * f(m, n));
        }
    }
    s.value()
}

impl fmt::Display for GenFunKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for GenFunKernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GenFunKernel::ALL
            .into_iter()
            .find(|k| k.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown generating function `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::MultiIndex4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point(fixed: MultiIndex4) -> GenPoint {
        GenPoint {
            z: c(0.3, -0.2),
            w: c(-0.25, 0.15),
            u: c(0.2, 0.1),
            v: c(-0.15, 0.2),
            up: c(0.1, -0.2),
            vp: c(0.25, 0.05),
            t: Complex64::from_polar(1.0, 0.9),
            fixed,
        }
    }

    #[test]
    fn corrected_forms_match_series() {
        for fixed in [MultiIndex4::ZERO, MultiIndex4::new(1, 2, 2, 1), MultiIndex4::new(2, 0, 1, 1)] {
            let p = point(fixed);
            for k in GenFunKernel::ALL {
                let order = if matches!(k, GenFunKernel::G4 | GenFunKernel::TM) { 14 } else { 30 };
                let s = k.series(&p, order, Variant::Corrected);
                let cf = k.closed(&p, Variant::Corrected).unwrap();
                assert!((s - cf).norm() < 1e-8 * cf.norm().max(1.0), "{k} {fixed}: {s} vs {cf}");
            }
        }
    }

    #[test]
    fn printed_forms_fail_where_misprinted() {
        let p = point(MultiIndex4::new(1, 2, 2, 1));
        for k in GenFunKernel::ALL {
            let order = if matches!(k, GenFunKernel::G4 | GenFunKernel::TM) { 14 } else { 30 };
            let s = k.series(&p, order, Variant::AsPrinted);
            let cf = k.closed(&p, Variant::AsPrinted).unwrap();
            let ok = (s - cf).norm() < 1e-8 * cf.norm().max(1.0);
            assert_eq!(ok, !k.has_erratum(), "{k}: {s} vs {cf}");
        }
    }

    #[test]
    fn roundtrip_names() {
        for k in GenFunKernel::ALL {
            assert_eq!(k.id().parse::<GenFunKernel>().unwrap(), k);
        }
    }
}
