//! Volumes of polytopes and their facets from the pulling triangulation.

use crate::error::{Error, Result};
use crate::linalg::{det, norm_sq, sub};
use crate::scalar::{RealScalar, Scalar};

use super::Polytope;

pub(crate) fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

impl<S: Scalar> Polytope<S> {
    /// Lebesgue volume; 0 for lower-dimensional or empty bodies.
    pub fn volume(&self) -> S {
        if !self.is_full_dimensional() {
            return S::zero();
        }
        let n = self.dim();
        let v = self.vertices();
        let total = self
            .lattice()
            .simplices(n, 0)
            .iter()
            .map(|s| {
                let edges: Vec<Vec<S>> = s[1..].iter().map(|&i| sub(&v[i], &v[s[0]])).collect();
                det(&edges).abs()
            })
            .fold(S::zero(), |acc, x| acc + &x);
        total / &S::from_i64(factorial(n))
    }

    /// Facet volume divided by the length of the stored facet normal.
    ///
    /// This ratio stays rational for rational polytopes, so
    /// `sum_i weight_i * normal_i = 0` can be checked exactly.
    pub fn facet_weight(&self, index: usize) -> Result<S> {
        let facet = self.facets().get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.facets().len(),
        })?;
        let n = self.dim();
        let a = &facet.halfspace.normal;
        let (k, ak) = a
            .iter()
            .enumerate()
            .map(|(j, x)| (j, x.abs()))
            .fold(
                (0, S::zero()),
                |(bj, bx), (j, x)| if x > bx { (j, x) } else { (bj, bx) },
            );
        if n == 1 {
            return Ok(if self.affine_dim() == Some(0) || self.is_full_dimensional() {
                S::one() / &ak
            } else {
                S::zero()
            });
        }
        let lat = self.lattice();
        let Some(id) = lat.find(n - 1, &facet.vertices) else {
            return Ok(S::zero());
        };
        let v = self.vertices();
        let drop = |p: &[S]| -> Vec<S> {
            p.iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, x)| x.clone())
                .collect()
        };
        let total = lat
            .simplices(n - 1, id)
            .iter()
            .map(|s| {
                let base = drop(&v[s[0]]);
                let edges: Vec<Vec<S>> = s[1..].iter().map(|&i| sub(&drop(&v[i]), &base)).collect();
                det(&edges).abs()
            })
            .fold(S::zero(), |acc, x| acc + &x);
        Ok(total / &S::from_i64(factorial(n - 1)) / &ak)
    }

    /// Square of the `(n-1)`-dimensional measure of a facet (exact for rationals).
    pub fn facet_volume_sq(&self, index: usize) -> Result<S> {
        let w = self.facet_weight(index)?;
        Ok(w.clone() * &w * &norm_sq(&self.facets()[index].halfspace.normal))
    }

    /// `(n-1)`-dimensional measure of a facet.
    pub fn facet_volume(&self, index: usize) -> Result<S::Approx> {
        Ok(self.facet_volume_sq(index)?.to_approx().sqrt())
    }
}
