//! Dual volume of movable curve classes, their Zariski-type decomposition and
//! the associated bodies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::AnyPolytope;
use crate::scalar::{Number, Real, RealScalar, Scalar};

use super::body::no_body_divisor;
use super::{classify_curve, intersect, CurveClass, CurvePositivity, DivisorClass, HnData};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualVolume {
    #[serde(rename = "M")]
    pub m: Number,
    /// Minimiser of `u ↦ ((A_u·α)^r / vol(A_u))^{1/(r-1)}` with `A_u = χ - u f`.
    pub u_star: Number,
    /// Set when the minimiser lies outside the nef cone and was found numerically.
    pub nonnef: bool,
    pub classification: CurvePositivity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZariskiDecomposition {
    /// The divisor `L` with `vol(L) = M(α)`.
    pub divisor: DivisorClass,
    pub u_star: Number,
    pub nonnef: bool,
}

/// `vol(χ - u f)` rounded to `f64` from a full-precision body, so the
/// search below sees no more noise than the final rounding.
fn vol_at(x: &HnData, u: f64) -> Result<f64> {
    let d = DivisorClass::new(Number::from_int(1), Number::Approx(-Real::from_f64(u)));
    Ok(volume_real(x, &d)?.to_f64())
}

fn golden_section(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<f64> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let scale = lo.abs().max(hi.abs()).max(1.0);
    for _ in 0..200 {
        if hi - lo <= rel_tol * scale {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `M(α) = inf ((A·α)^r / vol(A))^{1/(r-1)}` over big divisors `A`.
pub fn dual_volume(x: &HnData, alpha: &CurveClass) -> Result<DualVolume> {
    let class = classify_curve(alpha, x);
    match class {
        CurvePositivity::Effective | CurvePositivity::None => return Err(Error::NotMovable),
        CurvePositivity::MovableBoundary => return Err(Error::MNotPositive),
        _ => {}
    }
    let r = x.rank();
    let e = (r - 1) as u32;
    let s = alpha.s().expect("positive dual volume forces c1 > 0");
    let u_nef = s.clone() / Number::from_int(e as i64);
    if u_nef <= x.sigma_num(r) {
        let m = alpha.c1.powi(r as u32).nth_root(e) * (x.degree_num() - Number::from_int(r as i64) * u_nef.clone());
        return Ok(DualVolume {
            m,
            u_star: u_nef,
            nonnef: false,
            classification: class,
        });
    }
    let c1 = alpha.c1.to_f64();
    let (sf, d) = (s.to_f64(), x.degree().to_f64());
    let g = |u: f64| -> Result<f64> {
        let pairing = c1 * (d - sf - u);
        Ok((pairing.powi(r as i32) / vol_at(x, u)?).powf(1.0 / e as f64))
    };
    let u = golden_section(g, x.sigma_at(r).to_f64(), x.sigma_at(2).to_f64(), 1e-12)?;
    // The objective can be flat to third order at a breakpoint, where the
    // f64 search stalls a few digits short; compare those candidates in Real.
    let mut best: Option<(Real, Number)> = None;
    let candidates =
        std::iter::once(Number::Approx(Real::from_f64(u))).chain((2..=r).map(|k| Number::Exact(x.sigma_at(k).clone())));
    for u in candidates {
        let Some(m) = m_at(x, alpha, &u)? else { continue };
        if best.as_ref().is_none_or(|(b, _)| m < *b) {
            best = Some((m, u));
        }
    }
    let (m, u_star) = best.ok_or(Error::MNotPositive)?;
    Ok(DualVolume {
        m: Number::Approx(m),
        u_star,
        nonnef: true,
        classification: class,
    })
}

/// `((A_u·α)^r / vol(A_u))^{1/(r-1)}`, or `None` when `A_u` is not big.
fn m_at(x: &HnData, alpha: &CurveClass, u: &Number) -> Result<Option<Real>> {
    let r = x.rank();
    let a_u = DivisorClass::new(Number::from_int(1), -u.clone());
    let vol = volume_real(x, &a_u)?;
    if vol <= Real::zero() {
        return Ok(None);
    }
    let pairing = intersect(&a_u, alpha, x).to_real();
    Ok(Some((pairing.powi(r as u32) / vol).nth_root((r - 1) as u32)))
}

fn volume_real(x: &HnData, d: &DivisorClass) -> Result<Real> {
    let body = no_body_divisor(x, d, None)?;
    let fact: i64 = (1..=x.rank() as i64).product();
    Ok(Real::from_i64(fact) * body.volume().to_real())
}

/// The divisor `L = λ·A_{u*}` with `vol(L) = M(α)`.
pub fn movable_zariski(x: &HnData, alpha: &CurveClass) -> Result<ZariskiDecomposition> {
    let dv = dual_volume(x, alpha)?;
    let r = x.rank();
    let base = DivisorClass::new(Number::from_int(1), -dv.u_star.clone());
    let lambda = if dv.nonnef {
        let vol = volume_real(x, &base)?;
        Number::Approx((dv.m.to_real() / vol).nth_root(r as u32))
    } else {
        alpha.c1.nth_root((r - 1) as u32)
    };
    Ok(ZariskiDecomposition {
        divisor: base.scale(&lambda),
        u_star: dv.u_star,
        nonnef: dv.nonnef,
    })
}

/// Body of a curve class: the body of its positive part.
pub fn no_body_curve(x: &HnData, alpha: &CurveClass) -> Result<AnyPolytope> {
    let z = movable_zariski(x, alpha)?;
    no_body_divisor(x, &z.divisor, None)
}
