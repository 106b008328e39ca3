//! Curve-class polytopes on complete toric varieties, read off from the
//! intersection numbers of the class with the invariant divisors.
//!
//! The facet of `P_α` with inner normal `u_i` has volume
//! `(α·D_i)·‖u_i‖ / (n-1)!`.

use serde::{Deserialize, Serialize};

use crate::area_measure::{AreaMeasure, Atom, Reconstruction, SolverOptions};
use crate::bundle::{intersect, no_body_curve, CurveClass, DivisorClass, HnData};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{Number, Rational, Real, Scalar};

/// Ray generators of a complete fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanData {
    dim: usize,
    rays: Vec<Vec<i64>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl FanData {
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rays.first().map(Vec::len).ok_or(Error::EmptyInput)?;
        for (i, u) in rays.iter().enumerate() {
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.len(),
                });
            }
            if u.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
                return Err(Error::InvalidInput(format!(
                    "ray {i} is not a primitive integer vector"
                )));
            }
            if rays[..i].contains(u) {
                return Err(Error::InvalidInput(format!("ray {i} is repeated")));
            }
        }
        let as_q: Vec<Vec<Rational>> = rays
            .iter()
            .map(|u| u.iter().map(|&x| Rational::from_i64(x)).collect())
            .collect();
        if rank(&as_q) < dim {
            return Err(Error::NotSpanning("fan rays do not span".into()));
        }
        Ok(FanData { dim, rays })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        FanData { dim: n, rays }
    }

    fn ray_norm(&self, i: usize) -> Number {
        let sq: i64 = self.rays[i].iter().map(|x| x * x).sum();
        Number::from_int(sq).nth_root(2)
    }
}

/// A curve class given by its intersection numbers with the invariant divisors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToricCurveClass {
    pub intersections: Vec<Number>,
}

impl ToricCurveClass {
    pub fn new(intersections: Vec<Number>) -> Self {
        ToricCurveClass { intersections }
    }

    pub fn add(&self, other: &ToricCurveClass) -> Result<ToricCurveClass> {
        if self.intersections.len() != other.intersections.len() {
            return Err(Error::LengthMismatch {
                expected: self.intersections.len(),
                found: other.intersections.len(),
            });
        }
        Ok(ToricCurveClass::new(
            self.intersections
                .iter()
                .zip(&other.intersections)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    fn is_zero(&self) -> bool {
        self.intersections.iter().all(Number::is_zero)
    }
}

fn check_lengths(fan: &FanData, alpha: &ToricCurveClass) -> Result<()> {
    if fan.rays.len() != alpha.intersections.len() {
        return Err(Error::LengthMismatch {
            expected: fan.rays.len(),
            found: alpha.intersections.len(),
        });
    }
    Ok(())
}

/// All intersections non-negative and the rays with positive ones span.
pub fn toric_movability(fan: &FanData, alpha: &ToricCurveClass) -> Result<bool> {
    check_lengths(fan, alpha)?;
    if alpha
        .intersections
        .iter()
        .any(|x| x.signum() == std::cmp::Ordering::Less)
    {
        return Ok(false);
    }
    let positive: Vec<Vec<Rational>> = fan
        .rays
        .iter()
        .zip(&alpha.intersections)
        .filter(|(_, x)| x.signum() == std::cmp::Ordering::Greater)
        .map(|(u, _)| u.iter().map(|&x| Rational::from_i64(x)).collect())
        .collect();
    Ok(rank(&positive) == fan.dim)
}

/// `Σ (α·D_i) u_i`; zero for a genuine curve class on a complete fan.
pub fn centering_residual(fan: &FanData, alpha: &ToricCurveClass) -> Result<Vec<Number>> {
    check_lengths(fan, alpha)?;
    let mut sum = vec![Number::from_int(0); fan.dim];
    for (u, a) in fan.rays.iter().zip(&alpha.intersections) {
        for (s, &uj) in sum.iter_mut().zip(u) {
            *s = s.clone() + a.clone() * Number::from_int(uj);
        }
    }
    Ok(sum)
}

/// Atoms in the inner normal directions with masses from the face-volume formula.
pub fn toric_measure(fan: &FanData, alpha: &ToricCurveClass) -> Result<AreaMeasure> {
    check_lengths(fan, alpha)?;
    let fact: i64 = (1..fan.dim as i64).product();
    let mut atoms = Vec::new();
    for (i, (u, a)) in fan.rays.iter().zip(&alpha.intersections).enumerate() {
        if a.is_zero() {
            continue;
        }
        let mass = a.clone() * fan.ray_norm(i) / Number::from_int(fact);
        let dir: Vec<Number> = u.iter().map(|&x| Number::from_int(-x)).collect();
        atoms.push(Atom::new(&dir, mass)?);
    }
    AreaMeasure::new(fan.dim, atoms)
}

fn check_centered(fan: &FanData, alpha: &ToricCurveClass, tol: f64) -> Result<()> {
    let sum = centering_residual(fan, alpha)?;
    let exact = sum.iter().all(|x| x.as_exact().is_some());
    let residual = sum.iter().map(|x| x.to_f64() * x.to_f64()).sum::<f64>().sqrt();
    let scale = alpha.intersections.iter().map(|x| x.to_f64().abs()).fold(1.0, f64::max);
    let ok = if exact {
        sum.iter().all(Number::is_zero)
    } else {
        residual <= tol * scale
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotCentered { residual })
    }
}

/// Reconstructs `P_α` in canonical position.
pub fn toric_curve_polytope(fan: &FanData, alpha: &ToricCurveClass, tol: f64) -> Result<Reconstruction> {
    if !toric_movability(fan, alpha)? {
        return Err(Error::NotMovable);
    }
    check_centered(fan, alpha, tol)?;
    toric_measure(fan, alpha)?.reconstruct_with(&SolverOptions::with_tolerance(tol))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToricBlaschkeReport {
    pub distance: f64,
    /// Distance divided by the diameter of `P_{α+β}`.
    pub relative_distance: f64,
    /// Largest relative facet-volume mismatch of the Blaschke sum against `P_{α+β}`.
    pub facet_residual: f64,
    pub pass: bool,
}

/// Compares `P_α # P_β` with `P_{α+β}`.
pub fn toric_blaschke_check(
    fan: &FanData,
    alpha: &ToricCurveClass,
    beta: &ToricCurveClass,
    tol: f64,
) -> Result<ToricBlaschkeReport> {
    let sum_class = alpha.add(beta)?;
    let p = toric_curve_polytope(fan, alpha, tol)?;
    let mu_sum = if beta.is_zero() {
        AreaMeasure::of_polytope(&p.polytope)?
    } else {
        let q = toric_curve_polytope(fan, beta, tol)?;
        AreaMeasure::of_polytope(&p.polytope)?.add(&AreaMeasure::of_polytope(&q.polytope)?)?
    };
    let blaschke = mu_sum.reconstruct(tol)?;
    let direct = toric_curve_polytope(fan, &sum_class, tol)?;
    let distance = blaschke.polytope.hausdorff_distance(&direct.polytope)?.to_f64();
    let diameter = direct.polytope.diameter().to_f64();
    let relative_distance = distance / diameter;
    let facet_residual = toric_measure(fan, &sum_class)?.relative_residual(&blaschke.polytope)?;
    Ok(ToricBlaschkeReport {
        distance,
        relative_distance,
        facet_residual,
        pass: relative_distance <= 1e-6,
    })
}

/// Fan of `P(O(a_1) ⊕ ... ⊕ O(a_r))` over the projective line, with the
/// bundle divisor class of each invariant divisor.
#[derive(Clone, Debug)]
pub struct SplittingFan {
    pub fan: FanData,
    pub divisors: Vec<DivisorClass>,
    pub hn: HnData,
}

pub fn splitting_bundle_fan(a: &[i64]) -> Result<SplittingFan> {
    let r = a.len();
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(r + 2);
    let mut divisors = Vec::with_capacity(r + 2);
    let chi_minus = |ak: i64| DivisorClass::new(Number::from_int(1), Number::from_int(-ak));
    for j in 0..r - 1 {
        let mut u = vec![0; r];
        u[j] = 1;
        rays.push(u);
        divisors.push(chi_minus(a[j]));
    }
    let mut last = vec![-1; r];
    last[r - 1] = 0;
    rays.push(last);
    divisors.push(chi_minus(a[r - 1]));
    let mut up = vec![0; r];
    up[r - 1] = 1;
    rays.push(up);
    divisors.push(DivisorClass::fiber());
    let mut twisted: Vec<i64> = a[..r - 1].iter().map(|ak| ak - a[r - 1]).collect();
    twisted.push(-1);
    rays.push(twisted);
    divisors.push(DivisorClass::fiber());
    let hn = HnData::from_sigma(&a.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>())?;
    Ok(SplittingFan {
        fan: FanData::new(rays)?,
        divisors,
        hn,
    })
}

impl SplittingFan {
    /// Intersection numbers of a bundle curve class with the invariant divisors.
    pub fn toric_class(&self, alpha: &CurveClass) -> ToricCurveClass {
        ToricCurveClass::new(self.divisors.iter().map(|d| intersect(d, alpha, &self.hn)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub bundle_volume: f64,
    pub toric_volume: f64,
    /// Sorted facet volumes of the bundle body.
    pub bundle_facets: Vec<f64>,
    pub toric_facets: Vec<f64>,
    pub volume_residual: f64,
    pub facet_residual: f64,
    pub pass: bool,
}

fn sorted_facet_volumes(mu: &AreaMeasure) -> Vec<f64> {
    let mut v: Vec<f64> = mu.atoms().iter().map(|a| a.mass.to_f64()).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Body of a curve class on a split bundle against the toric reconstruction:
/// equal volumes and equal multisets of facet volumes.
pub fn bridge_check(a: &[i64], alpha: &CurveClass, tol: f64) -> Result<BridgeReport> {
    let split = splitting_bundle_fan(a)?;
    let body = no_body_curve(&split.hn, alpha)?;
    let toric = toric_curve_polytope(&split.fan, &split.toric_class(alpha), tol)?;
    let bundle_volume = body.volume().to_f64();
    let toric_volume = Real::to_f64(&toric.polytope.volume());
    let bundle_facets = sorted_facet_volumes(&AreaMeasure::of_any(&body)?);
    let toric_facets = sorted_facet_volumes(&AreaMeasure::of_polytope(&toric.polytope)?);
    let volume_residual = (bundle_volume - toric_volume).abs() / bundle_volume;
    let facet_residual = if bundle_facets.len() == toric_facets.len() {
        bundle_facets
            .iter()
            .zip(&toric_facets)
            .map(|(x, y)| (x - y).abs() / x.max(*y))
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let pass = volume_residual <= 1e-6 && facet_residual <= 1e-6;
    Ok(BridgeReport {
        bundle_volume,
        toric_volume,
        bundle_facets,
        toric_facets,
        volume_residual,
        facet_residual,
        pass,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToricInput {
    pub rays: Vec<Vec<i64>>,
    pub intersections: Vec<Number>,
}

impl ToricInput {
    pub fn parse(&self) -> Result<(FanData, ToricCurveClass)> {
        Ok((
            FanData::new(self.rays.clone())?,
            ToricCurveClass::new(self.intersections.clone()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Polytope;

    fn class(v: &[i64]) -> ToricCurveClass {
        ToricCurveClass::new(v.iter().map(|&x| Number::from_int(x)).collect())
    }

    #[test]
    fn movability_examples() {
        let p2 = FanData::projective_space(2);
        assert!(toric_movability(&p2, &class(&[1, 1, 1])).unwrap());
        assert!(toric_movability(&p2, &class(&[1, 1, 0])).unwrap());
        assert!(!toric_movability(&p2, &class(&[1, 0, 0])).unwrap());
        assert!(!toric_movability(&p2, &class(&[2, 2, -1])).unwrap());
        assert!(matches!(
            toric_movability(&p2, &class(&[1, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fan_validation() {
        assert!(FanData::new(vec![vec![2, 0], vec![0, 1], vec![-1, -1]]).is_err());
        assert!(FanData::new(vec![vec![1, 0], vec![1, 0], vec![-1, 0]]).is_err());
        assert!(matches!(
            FanData::new(vec![vec![1, 0], vec![-1, 0]]),
            Err(Error::NotSpanning(_))
        ));
    }

    #[test]
    fn line_class_gives_standard_triangle() {
        let p2 = FanData::projective_space(2);
        let rec = toric_curve_polytope(&p2, &class(&[1, 1, 1]), 1e-10).unwrap();
        let tri = Polytope::<Real>::simplex(2, Real::from_i64(1)).unwrap();
        let d = rec.polytope.hausdorff_distance(&tri.canonical_position()).unwrap();
        assert!(d.to_f64() < 1e-9);
    }

    #[test]
    fn scaling_law() {
        let p3 = FanData::projective_space(3);
        let one = toric_curve_polytope(&p3, &class(&[1, 1, 1, 1]), 1e-10).unwrap();
        let four = toric_curve_polytope(&p3, &class(&[4, 4, 4, 4]), 1e-10).unwrap();
        let scaled = one.polytope.scale(&Real::from_i64(2)).unwrap().canonical_position();
        assert!(four.polytope.hausdorff_distance(&scaled).unwrap().to_f64() < 1e-9);
    }

    #[test]
    fn uncentered_class_is_rejected() {
        let p2 = FanData::projective_space(2);
        assert!(matches!(
            toric_curve_polytope(&p2, &class(&[2, 1, 1]), 1e-10),
            Err(Error::NotCentered { .. })
        ));
    }

    #[test]
    fn blaschke_equality_and_zero_class() {
        let p2 = FanData::projective_space(2);
        let rep = toric_blaschke_check(&p2, &class(&[1, 1, 1]), &class(&[1, 1, 1]), 1e-10).unwrap();
        assert!(rep.pass, "{rep:?}");
        let p3 = FanData::projective_space(3);
        let rep = toric_blaschke_check(&p3, &class(&[1, 1, 1, 1]), &class(&[0, 0, 0, 0]), 1e-10).unwrap();
        assert!(rep.distance < 1e-9);
    }

    #[test]
    fn splitting_fans() {
        let s = splitting_bundle_fan(&[0, 0]).unwrap();
        let mut rays = s.fan.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(splitting_bundle_fan(&[0, 0, 0]).unwrap().fan.rays().len(), 5);
        let f1 = splitting_bundle_fan(&[0, 1]).unwrap();
        let alpha = CurveClass::new(Number::from_int(1), Number::from_int(1));
        let t = f1.toric_class(&alpha);
        assert_eq!(t, class(&[2, 1, 1, 1]));
        assert!(centering_residual(&f1.fan, &t).unwrap().iter().all(Number::is_zero));
        assert!(matches!(splitting_bundle_fan(&[3]), Err(Error::RankTooSmall(1))));
    }

    #[test]
    fn hirzebruch_bridge() {
        let alpha = CurveClass::new(Number::from_int(1), Number::from_int(1));
        let rep = bridge_check(&[0, 1], &alpha, 1e-10).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.bundle_volume - 1.5).abs() < 1e-12);
        let expect = [1.0, 1.0, 2f64.sqrt(), 2.0];
        for (x, y) in rep.bundle_facets.iter().zip(expect) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
