//! Convex polytopes with both vertex and halfspace descriptions.
//!
//! Every constructor goes through [`Polytope::hull_from_vertices`], which
//! rebuilds the facet list from scratch and certifies the result (feasibility,
//! incidences, Euler relation and, for full-dimensional bodies, closedness of
//! the boundary). Lower-dimensional bodies are ordinary values with volume 0.

mod any;
pub mod dd;
mod hull;
mod io;
mod lattice;
mod measure;
mod ops;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::scalar::{NumericMode, Scalar};

pub use any::AnyPolytope;
pub use io::{FacetJson, PolytopeJson};
pub use lattice::FaceLattice;

/// `{x : normal . x <= offset}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

impl<S: Scalar> Halfspace<S> {
    pub fn new(normal: Vec<S>, offset: S) -> Self {
        Halfspace { normal, offset }
    }

    /// `offset - normal . x`, non-negative inside.
    pub fn slack(&self, x: &[S]) -> S {
        self.offset.clone() - &dot(&self.normal, x)
    }

    /// Sign of `normal . x - offset` with the approximate-mode tolerance.
    ///
    /// Lengths below one are judged on an absolute scale, as in `points_close`.
    pub fn side(&self, x: &[S]) -> std::cmp::Ordering {
        let v = dot(&self.normal, x) - &self.offset;
        let reach = self.normal.iter().map(Scalar::abs).fold(S::zero(), S::max_of);
        let scale = crate::linalg::dot_scale(&self.normal, x) + &self.offset.abs() + &reach;
        v.sign_tol(&scale)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Facet<S> {
    pub halfspace: Halfspace<S>,
    /// Sorted indices of the incident vertices.
    pub vertices: Vec<usize>,
}

pub struct Polytope<S> {
    dim: usize,
    affine_dim: Option<usize>,
    vertices: Vec<Vec<S>>,
    facets: Vec<Facet<S>>,
    lattice: OnceLock<FaceLattice>,
}

impl<S: Clone> Clone for Polytope<S> {
    fn clone(&self) -> Self {
        Polytope {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            lattice: self.lattice.clone(),
        }
    }
}

impl<S: Scalar> fmt::Debug for Polytope<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("affine_dim", &self.affine_dim)
            .field("vertices", &self.vertices)
            .field("facets", &self.facets.len())
            .finish()
    }
}

pub(crate) fn points_close<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        let scale = S::one() + &x.abs() + &y.abs();
        (x.clone() - y).is_zero_tol(&scale)
    })
}

impl<S: Scalar> Polytope<S> {
    /// The empty subset of `R^dim`.
    pub fn empty(dim: usize) -> Self {
        Polytope {
            dim,
            affine_dim: None,
            vertices: Vec::new(),
            facets: Vec::new(),
            lattice: OnceLock::new(),
        }
    }

    /// Convex hull of a finite point set.
    pub fn hull_from_vertices(points: &[Vec<S>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let p = hull::hull(dim, points)?;
        p.certify()?;
        Ok(p)
    }

    /// The bounded set `{x : h.normal . x <= h.offset for all h}`, possibly empty.
    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace<S>]) -> Result<Self> {
        for h in halfspaces {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.len(),
                });
            }
            if h.normal.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidInput("halfspace with zero normal".into()));
            }
        }
        let verts = dd::enumerate_vertices(dim, halfspaces)?;
        if verts.is_empty() {
            return Ok(Self::empty(dim));
        }
        let points: Vec<Vec<S>> = verts.into_iter().map(|v| v.point).collect();
        Self::hull_from_vertices(&points)
    }

    /// Axis-parallel box `[lo_i, hi_i]`.
    pub fn axis_box(lo: &[S], hi: &[S]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let n = lo.len();
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![S::zero(); n];
            e[i] = S::one();
            hs.push(Halfspace::new(e.clone(), hi[i].clone()));
            e[i] = -S::one();
            hs.push(Halfspace::new(e, -lo[i].clone()));
        }
        Self::from_halfspaces(n, &hs)
    }

    /// `[0, side]^n`.
    pub fn cube(n: usize, side: S) -> Result<Self> {
        Self::axis_box(&vec![S::zero(); n], &vec![side; n])
    }

    /// Convex hull of the origin and the unit vectors scaled by `side`.
    pub fn simplex(n: usize, side: S) -> Result<Self> {
        let mut pts = vec![vec![S::zero(); n]];
        for i in 0..n {
            let mut e = vec![S::zero(); n];
            e[i] = side.clone();
            pts.push(e);
        }
        Self::hull_from_vertices(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    pub fn mode(&self) -> NumericMode {
        S::MODE
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn halfspaces(&self) -> Vec<Halfspace<S>> {
        self.facets.iter().map(|f| f.halfspace.clone()).collect()
    }

    /// Indices of facets that bound the relative interior (not the equality pairs
    /// describing the affine hull of a lower-dimensional body).
    pub fn proper_facet_indices(&self) -> Vec<usize> {
        let nv = self.vertices.len();
        (0..self.facets.len())
            .filter(|&i| self.facets[i].vertices.len() < nv)
            .collect()
    }

    pub fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let sets: Vec<&[usize]> = self.facets.iter().map(|f| f.vertices.as_slice()).collect();
            FaceLattice::build(self.vertices.len(), self.affine_dim.unwrap_or(0), &sets)
        })
    }

    /// Whether `x` satisfies every facet inequality (with tolerance in approximate mode).
    pub fn contains_point(&self, x: &[S]) -> bool {
        !self.is_empty()
            && self
                .facets
                .iter()
                .all(|f| f.halfspace.side(x) != std::cmp::Ordering::Greater)
    }

    /// Converts every coordinate to another scalar type and recertifies.
    pub fn convert<T: Scalar>(&self) -> Result<Polytope<T>> {
        if self.is_empty() {
            return Ok(Polytope::empty(self.dim));
        }
        let pts: Vec<Vec<T>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.cast::<T>()).collect())
            .collect();
        Polytope::hull_from_vertices(&pts)
    }

    /// Checks the invariants that every constructed polytope must satisfy.
    pub fn certify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::CertificationFailed(m));
        let Some(k) = self.affine_dim else {
            return Ok(());
        };
        for (fi, f) in self.facets.iter().enumerate() {
            for (vi, v) in self.vertices.iter().enumerate() {
                let side = f.halfspace.side(v);
                let incident = f.vertices.binary_search(&vi).is_ok();
                if side == std::cmp::Ordering::Greater {
                    return fail(format!("vertex {vi} violates facet {fi}"));
                }
                if incident != (side == std::cmp::Ordering::Equal) {
                    return fail(format!("incidence of vertex {vi} on facet {fi} is inconsistent"));
                }
            }
        }
        if k == 0 {
            return Ok(());
        }
        let lat = self.lattice();
        let proper = self.proper_facet_indices();
        for &fi in &proper {
            if lat.find(k - 1, &self.facets[fi].vertices).is_none() {
                return fail(format!("facet {fi} is not a face of dimension {}", k - 1));
            }
        }
        if proper.len() != lat.level(k - 1).len() {
            return fail("facet count disagrees with the face lattice".into());
        }
        let euler: i64 = (0..k)
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * lat.level(i).len() as i64)
            .sum();
        let expected = 1 - if k % 2 == 0 { 1 } else { -1 };
        if euler != expected {
            return fail(format!("Euler relation fails: {euler} != {expected}"));
        }
        if k == self.dim {
            self.check_closed()?;
        }
        Ok(())
    }

    fn check_closed(&self) -> Result<()> {
        let n = self.dim;
        let mut sum = vec![S::zero(); n];
        let mut scale = S::zero();
        for i in 0..self.facets.len() {
            let w = self.facet_weight(i)?;
            for (j, a) in self.facets[i].halfspace.normal.iter().enumerate() {
                let term = w.clone() * a;
                scale = scale + &term.abs();
                sum[j] = sum[j].clone() + &term;
            }
        }
        if sum.iter().all(|s| s.is_zero_tol(&scale)) {
            Ok(())
        } else {
            Err(Error::CertificationFailed("boundary is not closed".into()))
        }
    }

    /// Same point set (vertex sets agree up to order and tolerance).
    pub fn same_as(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|v| other.vertices.iter().any(|w| points_close(v, w)))
    }

    /// Assembles a polytope from parts that are already consistent.
    pub(crate) fn raw_parts(
        dim: usize,
        affine_dim: Option<usize>,
        vertices: Vec<Vec<S>>,
        facets: Vec<Facet<S>>,
    ) -> Self {
        Polytope {
            dim,
            affine_dim,
            vertices,
            facets,
            lattice: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests;
