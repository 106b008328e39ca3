//! Bodies of divisor classes with respect to a linear flag adapted to the
//! Harder–Narasimhan filtration, and their decomposition into slices along
//! the first coordinate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::AnyPolytope;
use crate::scalar::Number;

use super::{DivisorClass, DivisorPositivity, HnData};

/// Permutation of `1..=r` in one-line notation choosing the flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPermutation(Vec<usize>);

impl FlagPermutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let r = one_line.len();
        let mut seen = vec![false; r];
        for &w in &one_line {
            if w == 0 || w > r || seen[w - 1] {
                return Err(Error::InvalidInput(format!(
                    "{one_line:?} is not a permutation of 1..={r}"
                )));
            }
            seen[w - 1] = true;
        }
        Ok(FlagPermutation(one_line))
    }

    /// The cycle `[2, 3, ..., r, 1]`.
    pub fn standard(r: usize) -> Self {
        FlagPermutation((2..=r).chain(std::iter::once(1)).collect())
    }

    pub fn identity(r: usize) -> Self {
        FlagPermutation((1..=r).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ω(i)` with 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

fn ensure_rank(x: &HnData, omega: &FlagPermutation) -> Result<()> {
    if omega.len() != x.rank() {
        return Err(Error::LengthMismatch {
            expected: x.rank(),
            found: omega.len(),
        });
    }
    Ok(())
}

/// Body of `D = xχ + yf` in `R^r` (coordinates `ν_1, ..., ν_r`).
///
/// Requires `x > 0`; fails with `NotEffective` past the pseudo-effective cone.
pub fn no_body_divisor(x: &HnData, d: &DivisorClass, omega: Option<&FlagPermutation>) -> Result<AnyPolytope> {
    let r = x.rank();
    let standard;
    let omega = match omega {
        Some(w) => w,
        None => {
            standard = FlagPermutation::standard(r);
            &standard
        }
    };
    ensure_rank(x, omega)?;
    if d.x.signum() != std::cmp::Ordering::Greater {
        return Err(Error::InvalidInput(
            "body needs a positive coefficient of the tautological class".into(),
        ));
    }
    let t = d.t().expect("x > 0");
    if t > x.sigma_num(1) {
        return Err(Error::NotEffective {
            t: t.to_f64(),
            sigma1: x.sigma_num(1).to_f64(),
        });
    }
    let zero = || Number::from_int(0);
    let unit = |k: usize, v: i64| -> Vec<Number> {
        (0..r)
            .map(|j| if j == k { Number::from_int(v) } else { zero() })
            .collect()
    };
    let mut hs: Vec<(Vec<Number>, Number)> = (0..r).map(|k| (unit(k, -1), zero())).collect();
    let mut simplex = vec![Number::from_int(1); r];
    simplex[0] = zero();
    hs.push((simplex, d.x.clone()));
    let top = x.sigma_num(omega.at(r));
    let mut slanted = vec![Number::from_int(1)];
    for i in 2..=r {
        slanted.push(top.clone() - x.sigma_num(omega.at(i - 1)));
    }
    hs.push((slanted, d.x.clone() * top + d.y.clone()));
    AnyPolytope::from_number_halfspaces(r, &hs)
}

/// `vol(D) = r! · vol(Δ(D))`.
pub fn vol_divisor(x: &HnData, d: &DivisorClass) -> Result<Number> {
    let body = no_body_divisor(x, d, None)?;
    let r = x.rank();
    let fact: i64 = (1..=r as i64).product();
    Ok(Number::from_int(fact) * body.volume())
}

#[derive(Clone, Debug)]
pub struct Slice {
    /// 1-based; the final slice has index `r`.
    pub index: usize,
    pub lo: Number,
    pub hi: Number,
    pub body: AnyPolytope,
}

#[derive(Clone, Debug)]
pub struct SliceDecomposition {
    pub body: AnyPolytope,
    /// Slabs between consecutive `a(σ_i - t)` followed by the final slice.
    pub slices: Vec<Slice>,
    /// The part of the body with `ν_1 >= a(σ_r - t)`.
    pub upper: AnyPolytope,
    /// The final slice `0 <= ν_1 <= a(σ_r - t)`.
    pub lower: AnyPolytope,
}

impl SliceDecomposition {
    pub fn new(x: &HnData, d: &DivisorClass) -> Result<Self> {
        let body = no_body_divisor(x, d, None)?;
        let r = x.rank();
        let a = d.x.clone();
        let t = d.t().expect("body exists");
        let cut = |i: usize| a.clone() * (x.sigma_num(i) - t.clone());
        let mut slices = Vec::with_capacity(r);
        for i in 1..r {
            let (lo, hi) = (cut(i + 1), cut(i));
            let piece = body.slab_or_empty(0, &lo, &hi)?;
            slices.push(Slice {
                index: i,
                lo,
                hi,
                body: piece,
            });
        }
        let (lo, hi) = (Number::from_int(0), cut(r));
        let lower = body.slab_or_empty(0, &lo, &hi)?;
        slices.push(Slice {
            index: r,
            lo,
            hi,
            body: lower.clone(),
        });
        let upper = body.slab_or_empty(0, &cut(r), &cut(1))?;
        Ok(SliceDecomposition {
            body,
            slices,
            upper,
            lower,
        })
    }

    /// Hull of the two pieces; reproduces the body when `D` is nef.
    pub fn glue(&self) -> Result<AnyPolytope> {
        if self.lower.is_empty() {
            return Ok(self.upper.clone());
        }
        if self.upper.is_empty() {
            return Ok(self.lower.clone());
        }
        self.upper.hull_union(&self.lower)
    }

    /// `slice_index,nu1_lo,nu1_hi,volume` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("slice_index,nu1_lo,nu1_hi,volume\n");
        for s in &self.slices {
            let vol = if s.body.is_empty() {
                Number::from_int(0)
            } else {
                s.body.volume()
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.index,
                s.lo.to_json_string(),
                s.hi.to_json_string(),
                vol.to_json_string()
            ));
        }
        out
    }
}

/// Positivity read off from the geometry of the body and its slices.
pub fn positivity_from_body(x: &HnData, d: &DivisorClass) -> Result<DivisorPositivity> {
    let dec = match SliceDecomposition::new(x, d) {
        Ok(dec) => dec,
        Err(Error::NotEffective { .. }) => return Ok(DivisorPositivity::None),
        Err(e) => return Err(e),
    };
    if dec.body.is_empty() {
        return Ok(DivisorPositivity::None);
    }
    let nef = dec.slices.iter().all(|s| !s.body.is_empty());
    if nef {
        return Ok(if dec.lower.is_full_dimensional() {
            DivisorPositivity::Ample
        } else {
            DivisorPositivity::Nef
        });
    }
    let t = d.t().expect("body exists");
    let level = d.x.clone() * (x.sigma_num(2) - t);
    if !dec.body.slab_or_empty(0, &level, &level)?.is_empty() {
        return Ok(DivisorPositivity::Movable);
    }
    Ok(if dec.body.is_full_dimensional() {
        DivisorPositivity::Big
    } else {
        DivisorPositivity::PseudoeffectiveBoundary
    })
}
