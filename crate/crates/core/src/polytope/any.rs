//! A polytope whose numeric mode is chosen at run time.

use crate::error::Result;
use crate::scalar::{exact_nth_root, precision_bits, Number, NumericMode, Rational, Real, RealScalar, Scalar};

use super::Polytope;

#[derive(Clone, Debug)]
pub enum AnyPolytope {
    Exact(Polytope<Rational>),
    Approx(Polytope<Real>),
}

impl From<Polytope<Rational>> for AnyPolytope {
    fn from(p: Polytope<Rational>) -> Self {
        AnyPolytope::Exact(p)
    }
}

impl From<Polytope<Real>> for AnyPolytope {
    fn from(p: Polytope<Real>) -> Self {
        AnyPolytope::Approx(p)
    }
}

impl AnyPolytope {
    pub fn mode(&self) -> NumericMode {
        match self {
            AnyPolytope::Exact(_) => NumericMode::Exact,
            AnyPolytope::Approx(_) => NumericMode::Approx,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyPolytope::Exact(p) => p.dim(),
            AnyPolytope::Approx(p) => p.dim(),
        }
    }

    pub fn affine_dim(&self) -> Option<usize> {
        match self {
            AnyPolytope::Exact(p) => p.affine_dim(),
            AnyPolytope::Approx(p) => p.affine_dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            AnyPolytope::Exact(p) => p.is_empty(),
            AnyPolytope::Approx(p) => p.is_empty(),
        }
    }

    /// The body over high-precision floats (converting if exact).
    pub fn to_real(&self) -> Result<Polytope<Real>> {
        match self {
            AnyPolytope::Exact(p) => p.convert(),
            AnyPolytope::Approx(p) => Ok(p.clone()),
        }
    }

    pub fn volume(&self) -> Number {
        match self {
            AnyPolytope::Exact(p) => Number::Exact(p.volume()),
            AnyPolytope::Approx(p) => Number::Approx(p.volume()),
        }
    }

    /// Volume together with an absolute rounding bound (zero in exact mode).
    pub fn volume_with_error(&self) -> (Number, f64) {
        let v = self.volume();
        let bound = match self {
            AnyPolytope::Exact(_) => 0.0,
            AnyPolytope::Approx(p) => {
                let ulp = 2f64.powi(-(precision_bits() as i32) + 8);
                v.to_f64().abs() * ulp * (p.dim() as f64 + 1.0) * p.vertices().len() as f64
            }
        };
        (v, bound)
    }

    /// Facet measure, exact when it is rational.
    pub fn facet_volume(&self, index: usize) -> Result<Number> {
        match self {
            AnyPolytope::Exact(p) => {
                let sq = p.facet_volume_sq(index)?;
                Ok(match exact_nth_root(&sq, 2) {
                    Some(root) => Number::Exact(root),
                    None => Number::Approx(sq.to_approx().sqrt()),
                })
            }
            AnyPolytope::Approx(p) => Ok(Number::Approx(p.facet_volume(index)?)),
        }
    }

    pub fn canonical_position(&self) -> AnyPolytope {
        match self {
            AnyPolytope::Exact(p) => AnyPolytope::Exact(p.canonical_position()),
            AnyPolytope::Approx(p) => AnyPolytope::Approx(p.canonical_position()),
        }
    }

    /// Hausdorff distance; exact inputs stay exact until the final square root.
    pub fn hausdorff_distance(&self, other: &AnyPolytope) -> Result<Real> {
        match (self, other) {
            (AnyPolytope::Exact(a), AnyPolytope::Exact(b)) => a.hausdorff_distance(b),
            _ => self.to_real()?.hausdorff_distance(&other.to_real()?),
        }
    }

    pub fn minkowski_sum(&self, other: &AnyPolytope) -> Result<AnyPolytope> {
        match (self, other) {
            (AnyPolytope::Exact(a), AnyPolytope::Exact(b)) => Ok(AnyPolytope::Exact(a.minkowski_sum(b)?)),
            _ => Ok(AnyPolytope::Approx(self.to_real()?.minkowski_sum(&other.to_real()?)?)),
        }
    }

    pub fn contains(&self, other: &AnyPolytope) -> Result<bool> {
        match (self, other) {
            (AnyPolytope::Exact(a), AnyPolytope::Exact(b)) => Ok(a.contains(b)),
            _ => Ok(self.to_real()?.contains(&other.to_real()?)),
        }
    }

    pub fn diameter(&self) -> Real {
        match self {
            AnyPolytope::Exact(p) => p.diameter(),
            AnyPolytope::Approx(p) => p.diameter(),
        }
    }

    pub fn slab(&self, axis: usize, lo: &Number, hi: &Number) -> Result<AnyPolytope> {
        match (self, lo, hi) {
            (AnyPolytope::Exact(p), Number::Exact(l), Number::Exact(h)) => Ok(AnyPolytope::Exact(p.slab(axis, l, h)?)),
            _ => Ok(AnyPolytope::Approx(self.to_real()?.slab(
                axis,
                &lo.to_real(),
                &hi.to_real(),
            )?)),
        }
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        match self {
            AnyPolytope::Exact(p) => p
                .vertices()
                .iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect(),
            AnyPolytope::Approx(p) => p
                .vertices()
                .iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }
}

impl AnyPolytope {
    /// Polytope from halfspaces given as numbers; exact when every entry is exact.
    pub fn from_number_halfspaces(dim: usize, hs: &[(Vec<Number>, Number)]) -> Result<AnyPolytope> {
        let exact = hs
            .iter()
            .all(|(n, o)| o.as_exact().is_some() && n.iter().all(|x| x.as_exact().is_some()));
        if exact {
            let hs: Vec<super::Halfspace<Rational>> = hs
                .iter()
                .map(|(n, o)| {
                    super::Halfspace::new(
                        n.iter().map(|x| x.as_exact().cloned().expect("exact")).collect(),
                        o.as_exact().cloned().expect("exact"),
                    )
                })
                .collect();
            Ok(AnyPolytope::Exact(Polytope::from_halfspaces(dim, &hs)?))
        } else {
            let hs: Vec<super::Halfspace<Real>> = hs
                .iter()
                .map(|(n, o)| super::Halfspace::new(n.iter().map(Number::to_real).collect(), o.to_real()))
                .collect();
            Ok(AnyPolytope::Approx(Polytope::from_halfspaces(dim, &hs)?))
        }
    }

    /// `self ∩ {lo <= x_axis <= hi}`, empty when `lo > hi`.
    pub fn slab_or_empty(&self, axis: usize, lo: &Number, hi: &Number) -> Result<AnyPolytope> {
        if lo > hi {
            return Ok(match self {
                AnyPolytope::Exact(p) => AnyPolytope::Exact(Polytope::empty(p.dim())),
                AnyPolytope::Approx(p) => AnyPolytope::Approx(Polytope::empty(p.dim())),
            });
        }
        self.slab(axis, lo, hi)
    }

    pub fn hull_union(&self, other: &AnyPolytope) -> Result<AnyPolytope> {
        match (self, other) {
            (AnyPolytope::Exact(a), AnyPolytope::Exact(b)) => Ok(AnyPolytope::Exact(a.hull_union(b)?)),
            _ => Ok(AnyPolytope::Approx(self.to_real()?.hull_union(&other.to_real()?)?)),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim())
    }

    /// Same point set up to tolerance.
    pub fn same_as(&self, other: &AnyPolytope) -> Result<bool> {
        match (self, other) {
            (AnyPolytope::Exact(a), AnyPolytope::Exact(b)) => Ok(a.same_as(b)),
            _ => Ok(self.to_real()?.same_as(&other.to_real()?)),
        }
    }

    pub fn scale(&self, lambda: &Number) -> Result<AnyPolytope> {
        match (self, lambda) {
            (AnyPolytope::Exact(p), Number::Exact(l)) => Ok(AnyPolytope::Exact(p.scale(l)?)),
            _ => Ok(AnyPolytope::Approx(self.to_real()?.scale(&lambda.to_real())?)),
        }
    }
}
