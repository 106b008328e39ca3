//! Projective bundles `X = P(E)` over a curve: numerical classes, positivity
//! cones and Newton–Okounkov bodies of divisors and curves.
//!
//! Divisors are written `x·χ + y·f` with `χ` the tautological class and `f`
//! the fiber; curves are written `c1·χ^{r-1} + c2·χ^{r-2}f`. The ring is
//! `f² = 0`, `χ^r = d`, `χ^{r-1}f = 1`.

mod blaschke;
mod body;
mod dual;
pub mod io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Number, Rational, Scalar};

pub use blaschke::{blaschke_closed_form, ClosedFormBlaschke};
pub use body::{no_body_divisor, positivity_from_body, vol_divisor, FlagPermutation, Slice, SliceDecomposition};
pub use dual::{dual_volume, movable_zariski, no_body_curve, DualVolume, ZariskiDecomposition};

/// One semistable quotient of the Harder–Narasimhan filtration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HnQuotient {
    pub rank: u32,
    pub slope: Number,
}

/// Harder–Narasimhan numerics of a bundle of rank `r >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HnData {
    quotients: Vec<(u32, Rational)>,
    sigma: Vec<Rational>,
    degree: Rational,
}

impl HnData {
    /// Quotients in filtration order: slopes must strictly increase.
    pub fn new(quotients: &[(u32, Rational)]) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::EmptyInput);
        }
        if quotients.iter().any(|(r, _)| *r == 0) {
            return Err(Error::InvalidInput("quotient ranks must be positive".into()));
        }
        if quotients.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(Error::InvalidInput(
                "slopes must be strictly increasing in filtration order".into(),
            ));
        }
        let r: u32 = quotients.iter().map(|(k, _)| k).sum();
        if r < 2 {
            return Err(Error::RankTooSmall(r as usize));
        }
        let mut sigma: Vec<Rational> = Vec::with_capacity(r as usize);
        for (k, mu) in quotients.iter().rev() {
            sigma.extend(std::iter::repeat_n(mu.clone(), *k as usize));
        }
        let degree = quotients.iter().fold(Rational::zero(), |acc, (k, mu)| {
            acc + &(mu.clone() * Rational::from_i64(*k as i64))
        });
        Ok(HnData {
            quotients: quotients.to_vec(),
            sigma,
            degree,
        })
    }

    /// HN data whose expanded slope vector is `sigma` (any order).
    pub fn from_sigma(sigma: &[Rational]) -> Result<Self> {
        let mut s = sigma.to_vec();
        s.sort();
        let mut q: Vec<(u32, Rational)> = Vec::new();
        for v in s {
            match q.last_mut() {
                Some((k, mu)) if *mu == v => *k += 1,
                _ => q.push((1, v)),
            }
        }
        Self::new(&q)
    }

    pub fn from_quotients(q: &[HnQuotient]) -> Result<Self> {
        let raw = q
            .iter()
            .map(|h| {
                h.slope
                    .as_exact()
                    .cloned()
                    .map(|s| (h.rank, s))
                    .ok_or_else(|| Error::InvalidInput("slopes must be exact rationals".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&raw)
    }

    pub fn quotients(&self) -> Vec<HnQuotient> {
        self.quotients
            .iter()
            .map(|(r, s)| HnQuotient {
                rank: *r,
                slope: Number::Exact(s.clone()),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// `σ_1 >= ... >= σ_r`.
    pub fn sigma(&self) -> &[Rational] {
        &self.sigma
    }

    /// `σ_i` with 1-based index.
    pub fn sigma_at(&self, i: usize) -> &Rational {
        &self.sigma[i - 1]
    }

    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn is_semistable(&self) -> bool {
        self.quotients.len() == 1
    }

    fn sigma_num(&self, i: usize) -> Number {
        Number::Exact(self.sigma_at(i).clone())
    }

    fn degree_num(&self) -> Number {
        Number::Exact(self.degree.clone())
    }
}

/// The divisor class `x·χ + y·f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub x: Number,
    pub y: Number,
}

impl DivisorClass {
    pub fn new(x: Number, y: Number) -> Self {
        DivisorClass { x, y }
    }

    /// `a·(χ - t·f)`.
    pub fn from_a_t(a: Number, t: Number) -> Self {
        let y = -(a.clone() * t);
        DivisorClass { x: a, y }
    }

    pub fn chi() -> Self {
        Self::new(Number::from_int(1), Number::from_int(0))
    }

    pub fn fiber() -> Self {
        Self::new(Number::from_int(0), Number::from_int(1))
    }

    pub fn a(&self) -> &Number {
        &self.x
    }

    /// `t = -y/x`, when `x != 0`.
    pub fn t(&self) -> Option<Number> {
        (!self.x.is_zero()).then(|| -(self.y.clone() / self.x.clone()))
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn scale(&self, k: &Number) -> DivisorClass {
        DivisorClass::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }
}

/// The curve class `c1·χ^{r-1} + c2·χ^{r-2}·f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveClass {
    pub c1: Number,
    pub c2: Number,
}

impl CurveClass {
    pub fn new(c1: Number, c2: Number) -> Self {
        CurveClass { c1, c2 }
    }

    /// `s = -c2/c1`, when `c1 != 0`.
    pub fn s(&self) -> Option<Number> {
        (!self.c1.is_zero()).then(|| -(self.c2.clone() / self.c1.clone()))
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass::new(self.c1.clone() + other.c1.clone(), self.c2.clone() + other.c2.clone())
    }

    pub fn scale(&self, k: &Number) -> CurveClass {
        CurveClass::new(self.c1.clone() * k.clone(), self.c2.clone() * k.clone())
    }
}

/// `D·α = x(c1·d + c2) + y·c1`.
pub fn intersect(d: &DivisorClass, alpha: &CurveClass, x: &HnData) -> Number {
    d.x.clone() * (alpha.c1.clone() * x.degree_num() + alpha.c2.clone()) + d.y.clone() * alpha.c1.clone()
}

/// `D^{r-1}` as a curve class: `(x^{r-1}, (r-1)·x^{r-2}·y)`.
pub fn divisor_power(d: &DivisorClass, x: &HnData) -> CurveClass {
    let r = x.rank() as u32;
    let c1 = d.x.powi(r - 1);
    let c2 = Number::from_int(r as i64 - 1) * d.x.powi(r - 2) * d.y.clone();
    CurveClass::new(c1, c2)
}

/// Generators of the positivity cones in `N^1(X)` and `N_1(X)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeTable {
    pub effective_divisors: [DivisorClass; 2],
    pub movable_divisors: [DivisorClass; 2],
    pub nef_divisors: [DivisorClass; 2],
    pub effective_curves: [CurveClass; 2],
    /// Movable curves; this cone coincides with the nef cone of curves.
    pub movable_curves: [CurveClass; 2],
    /// `(r-1)`-st powers of big and nef divisors.
    pub complete_intersection_curves: [CurveClass; 2],
}

pub fn cones(x: &HnData) -> ConeTable {
    let r = x.rank();
    let sig = |i: usize| x.sigma_num(i);
    let div = |t: Number| DivisorClass::new(Number::from_int(1), -t);
    let curve = |s: Number| CurveClass::new(Number::from_int(1), -s);
    let fiber_curve = CurveClass::new(Number::from_int(0), Number::from_int(1));
    let d = x.degree_num();
    ConeTable {
        effective_divisors: [DivisorClass::fiber(), div(sig(1))],
        movable_divisors: [DivisorClass::fiber(), div(sig(2))],
        nef_divisors: [DivisorClass::fiber(), div(sig(r))],
        effective_curves: [fiber_curve.clone(), curve(d.clone() - sig(r))],
        movable_curves: [fiber_curve.clone(), curve(d - sig(1))],
        complete_intersection_curves: [curve(Number::from_int(r as i64 - 1) * sig(r)), fiber_curve],
    }
}

/// Whether `(px, py)` lies in the cone spanned by two plane vectors.
pub fn in_plane_cone(g: [(&Number, &Number); 2], p: (&Number, &Number)) -> bool {
    let det = g[0].0.clone() * g[1].1.clone() - g[0].1.clone() * g[1].0.clone();
    if det.is_zero() {
        return false;
    }
    let lambda = (p.0.clone() * g[1].1.clone() - p.1.clone() * g[1].0.clone()) / det.clone();
    let mu = (g[0].0.clone() * p.1.clone() - g[0].1.clone() * p.0.clone()) / det;
    lambda.signum() != std::cmp::Ordering::Less && mu.signum() != std::cmp::Ordering::Less
}

impl ConeTable {
    pub fn divisor_in(cone: &[DivisorClass; 2], d: &DivisorClass) -> bool {
        in_plane_cone([(&cone[0].x, &cone[0].y), (&cone[1].x, &cone[1].y)], (&d.x, &d.y))
    }

    pub fn curve_in(cone: &[CurveClass; 2], c: &CurveClass) -> bool {
        in_plane_cone([(&cone[0].c1, &cone[0].c2), (&cone[1].c1, &cone[1].c2)], (&c.c1, &c.c2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorPositivity {
    Ample,
    Nef,
    Movable,
    Big,
    PseudoeffectiveBoundary,
    None,
}

impl DivisorPositivity {
    pub fn as_str(self) -> &'static str {
        match self {
            DivisorPositivity::Ample => "ample",
            DivisorPositivity::Nef => "nef",
            DivisorPositivity::Movable => "movable",
            DivisorPositivity::Big => "big",
            DivisorPositivity::PseudoeffectiveBoundary => "pseudoeffective-boundary",
            DivisorPositivity::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvePositivity {
    /// In the cone of `(r-1)`-st powers of big and nef divisors.
    CompleteIntersection,
    /// Movable with positive dual volume.
    Movable,
    /// Movable with vanishing dual volume.
    MovableBoundary,
    Effective,
    None,
}

impl CurvePositivity {
    pub fn as_str(self) -> &'static str {
        match self {
            CurvePositivity::CompleteIntersection => "complete-intersection",
            CurvePositivity::Movable => "movable",
            CurvePositivity::MovableBoundary => "movable-boundary",
            CurvePositivity::Effective => "effective",
            CurvePositivity::None => "none",
        }
    }

    /// Movable with positive dual volume.
    pub fn has_positive_volume(self) -> bool {
        matches!(self, CurvePositivity::CompleteIntersection | CurvePositivity::Movable)
    }
}

/// Finest positivity label of a divisor, by comparing `t` with the `σ_i`.
pub fn classify_divisor(d: &DivisorClass, x: &HnData) -> DivisorPositivity {
    use std::cmp::Ordering::*;
    match d.x.signum() {
        Less => DivisorPositivity::None,
        Equal => match d.y.signum() {
            Greater => DivisorPositivity::Nef,
            Equal => DivisorPositivity::PseudoeffectiveBoundary,
            Less => DivisorPositivity::None,
        },
        Greater => {
            let t = d.t().expect("x > 0");
            let r = x.rank();
            if t < x.sigma_num(r) {
                DivisorPositivity::Ample
            } else if t <= x.sigma_num(r) {
                DivisorPositivity::Nef
            } else if t <= x.sigma_num(2) {
                DivisorPositivity::Movable
            } else if t < x.sigma_num(1) {
                DivisorPositivity::Big
            } else if t <= x.sigma_num(1) {
                DivisorPositivity::PseudoeffectiveBoundary
            } else {
                DivisorPositivity::None
            }
        }
    }
}

/// Finest positivity label of a curve class, by comparing `s` with the `σ_i`.
pub fn classify_curve(alpha: &CurveClass, x: &HnData) -> CurvePositivity {
    use std::cmp::Ordering::*;
    match alpha.c1.signum() {
        Less => CurvePositivity::None,
        Equal => {
            if alpha.c2.signum() == Less {
                CurvePositivity::None
            } else {
                CurvePositivity::MovableBoundary
            }
        }
        Greater => {
            let s = alpha.s().expect("c1 > 0");
            let r = x.rank();
            let d = x.degree_num();
            let positive = s < d.clone() - x.sigma_num(2);
            let movable = s <= d.clone() - x.sigma_num(1);
            if positive && s <= Number::from_int(r as i64 - 1) * x.sigma_num(r) {
                CurvePositivity::CompleteIntersection
            } else if movable && positive {
                CurvePositivity::Movable
            } else if movable {
                CurvePositivity::MovableBoundary
            } else if s <= d - x.sigma_num(r) {
                CurvePositivity::Effective
            } else {
                CurvePositivity::None
            }
        }
    }
}
