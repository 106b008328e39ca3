//! Minkowski sums, slabs, affine maps and distances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{add, dot, independent_rows, norm_sq, solve, sub};
use crate::scalar::{RealScalar, Scalar};

use super::{Facet, Halfspace, Polytope};

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

impl<S: Scalar> Polytope<S> {
    /// `{p + q : p in self, q in other}`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.dim()));
        }
        let pts: Vec<Vec<S>> = self
            .vertices()
            .iter()
            .flat_map(|p| other.vertices().iter().map(move |q| add(p, q)))
            .collect();
        Self::hull_from_vertices(&pts)
    }

    /// Convex hull of the union of two polytopes.
    pub fn hull_union(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        let pts: Vec<Vec<S>> = self.vertices().iter().chain(other.vertices()).cloned().collect();
        if pts.is_empty() {
            return Ok(Self::empty(self.dim()));
        }
        Self::hull_from_vertices(&pts)
    }

    /// Intersection with further halfspaces.
    pub fn intersect_halfspaces(&self, extra: &[Halfspace<S>]) -> Result<Self> {
        if self.is_empty() {
            return Ok(Self::empty(self.dim()));
        }
        let mut hs = self.halfspaces();
        hs.extend_from_slice(extra);
        Self::from_halfspaces(self.dim(), &hs)
    }

    /// `self ∩ {lo <= x_axis <= hi}`.
    pub fn slab(&self, axis: usize, lo: &S, hi: &S) -> Result<Self> {
        if axis >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: axis,
                len: self.dim(),
            });
        }
        if lo > hi {
            return Err(Error::InvalidSlab {
                lo: lo.to_f64(),
                hi: hi.to_f64(),
            });
        }
        let mut e = vec![S::zero(); self.dim()];
        e[axis] = S::one();
        let upper = Halfspace::new(e.clone(), hi.clone());
        e[axis] = -S::one();
        let lower = Halfspace::new(e, -lo.clone());
        self.intersect_halfspaces(&[upper, lower])
    }

    /// `lambda * self`.
    pub fn scale(&self, lambda: &S) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        if lambda.sign_tol(&S::one()) == Ordering::Greater {
            let vertices = self
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x.clone() * lambda).collect())
                .collect();
            let facets = self
                .facets()
                .iter()
                .map(|f| Facet {
                    halfspace: Halfspace::new(f.halfspace.normal.clone(), f.halfspace.offset.clone() * lambda),
                    vertices: f.vertices.clone(),
                })
                .collect();
            return Ok(Self::raw_parts(self.dim(), self.affine_dim(), vertices, facets));
        }
        let pts: Vec<Vec<S>> = self
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.clone() * lambda).collect())
            .collect();
        Self::hull_from_vertices(&pts)
    }

    /// `self + v`.
    pub fn translate(&self, v: &[S]) -> Result<Self> {
        check_dims(self.dim(), v.len())?;
        let vertices = self.vertices().iter().map(|p| add(p, v)).collect();
        let facets = self
            .facets()
            .iter()
            .map(|f| Facet {
                halfspace: Halfspace::new(
                    f.halfspace.normal.clone(),
                    f.halfspace.offset.clone() + &dot(&f.halfspace.normal, v),
                ),
                vertices: f.vertices.clone(),
            })
            .collect();
        Ok(Self::raw_parts(self.dim(), self.affine_dim(), vertices, facets))
    }

    /// Coordinate-wise minimum and maximum over the vertices.
    pub fn bounding_box(&self) -> Option<(Vec<S>, Vec<S>)> {
        let first = self.vertices().first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in self.vertices() {
            for j in 0..v.len() {
                if v[j] < lo[j] {
                    lo[j] = v[j].clone();
                }
                if v[j] > hi[j] {
                    hi[j] = v[j].clone();
                }
            }
        }
        Some((lo, hi))
    }

    /// Translate so that the bounding box has its minimum corner at the origin.
    pub fn canonical_position(&self) -> Self {
        match self.bounding_box() {
            None => self.clone(),
            Some((lo, _)) => {
                let shift: Vec<S> = lo.into_iter().map(|x| -x).collect();
                self.translate(&shift).expect("matching dimension")
            }
        }
    }

    /// Whether every vertex of `other` lies in `self`.
    pub fn contains(&self, other: &Self) -> bool {
        other.vertices().iter().all(|v| self.contains_point(v))
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> S::Approx {
        let v = self.vertices();
        let mut best = S::zero();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = norm_sq(&sub(&v[i], &v[j]));
                if d > best {
                    best = d;
                }
            }
        }
        best.to_approx().sqrt()
    }

    /// Squared Euclidean distance from `x` to the polytope.
    ///
    /// Points within the containment tolerance of the boundary still get
    /// their true distance rather than zero.
    pub fn distance_sq_to_point(&self, x: &[S]) -> S {
        if self.is_empty() {
            return S::zero();
        }
        let strictly_inside = self.facets().iter().all(|f| f.halfspace.slack(x) >= S::zero());
        if strictly_inside {
            return S::zero();
        }
        let lat = self.lattice();
        let Some(top) = lat.top_dim() else {
            return S::zero();
        };
        // A full-dimensional body's nearest point to an outside x is on the boundary.
        let last = if top == self.dim() && top > 0 { top - 1 } else { top };
        let v = self.vertices();
        let mut best: Option<S> = None;
        for dim in 0..=last {
            for face in lat.level(dim) {
                let Some(p) = project_to_affine_hull(v, &face.vertices, x) else {
                    continue;
                };
                if dim > 0 && !self.contains_point(&p) {
                    continue;
                }
                let d = norm_sq(&sub(x, &p));
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best.unwrap_or_else(S::zero)
    }

    /// Squared Hausdorff distance between two convex polytopes.
    pub fn hausdorff_distance_sq(&self, other: &Self) -> Result<S> {
        check_dims(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyInput);
        }
        let directed = |a: &Self, b: &Self| {
            a.vertices()
                .iter()
                .map(|v| b.distance_sq_to_point(v))
                .fold(S::zero(), S::max_of)
        };
        Ok(S::max_of(directed(self, other), directed(other, self)))
    }

    pub fn hausdorff_distance(&self, other: &Self) -> Result<S::Approx> {
        Ok(self.hausdorff_distance_sq(other)?.to_approx().sqrt())
    }
}

/// Orthogonal projection of `x` onto the affine hull of the listed vertices.
fn project_to_affine_hull<S: Scalar>(v: &[Vec<S>], ids: &[usize], x: &[S]) -> Option<Vec<S>> {
    let base = &v[ids[0]];
    if ids.len() == 1 {
        return Some(base.clone());
    }
    let dirs: Vec<Vec<S>> = ids[1..].iter().map(|&i| sub(&v[i], base)).collect();
    let basis: Vec<Vec<S>> = independent_rows(&dirs).into_iter().map(|i| dirs[i].clone()).collect();
    let gram: Vec<Vec<S>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<S> = basis.iter().map(|a| dot(a, &sub(x, base))).collect();
    let c = solve(&gram, &rhs)?;
    let mut p = base.clone();
    for (ci, bi) in c.iter().zip(&basis) {
        for (pj, bj) in p.iter_mut().zip(bi) {
            *pj = pj.clone() + &(ci.clone() * bj);
        }
    }
    Some(p)
}
