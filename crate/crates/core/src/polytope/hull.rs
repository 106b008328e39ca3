//! Vertex to halfspace conversion through the polar body.
//!
//! The points are projected onto coordinates spanning their affine hull, the
//! polar of the projected body about its vertex centroid is enumerated with
//! the double description method, and each polar vertex becomes a facet.

use std::cmp::Ordering;

use crate::error::Result;
use crate::linalg::{dot, nullspace, rank, rref, sub};
use crate::scalar::{NumericMode, Scalar};

use super::dd::enumerate_vertices;
use super::{points_close, Facet, Halfspace, Polytope};

fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

pub(crate) fn dedup_points<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    let mut out: Vec<Vec<S>> = Vec::with_capacity(sorted.len());
    for p in sorted {
        let dup = if S::MODE == NumericMode::Exact {
            out.last().is_some_and(|q| *q == p)
        } else {
            out.iter().rev().take(8).any(|q| points_close(q, &p))
        };
        if !dup {
            out.push(p);
        }
    }
    out
}

/// Scales `(normal, offset)` by a positive factor into canonical form.
fn normalize_halfspace<S: Scalar>(normal: Vec<S>, offset: S) -> Halfspace<S> {
    if S::MODE == NumericMode::Exact {
        let mut v = normal;
        v.push(offset);
        S::normalize_direction(&mut v);
        let offset = v.pop().expect("non-empty");
        Halfspace::new(v, offset)
    } else {
        let m = normal.iter().map(Scalar::abs).fold(S::zero(), S::max_of);
        let normal = normal.into_iter().map(|x| x / &m).collect();
        Halfspace::new(normal, offset / &m)
    }
}

pub(crate) fn hull<S: Scalar>(dim: usize, points: &[Vec<S>]) -> Result<Polytope<S>> {
    let pts = dedup_points(points);
    let base = pts[0].clone();
    let mut dirs: Vec<Vec<S>> = pts[1..].iter().map(|p| sub(p, &base)).collect();
    let equalities_src = dirs.clone();
    let pivots = if dirs.is_empty() { Vec::new() } else { rref(&mut dirs) };
    let k = pivots.len();

    let mut facets: Vec<Facet<S>> = Vec::new();
    let mut vertex_ids: Vec<usize> = (0..pts.len()).collect();

    if k > 0 {
        let proj: Vec<Vec<S>> = pts
            .iter()
            .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
            .collect();
        let count = S::from_i64(proj.len() as i64);
        let centroid: Vec<S> = (0..k)
            .map(|j| proj.iter().fold(S::zero(), |acc, p| acc + &p[j]) / &count)
            .collect();
        let polar: Vec<Halfspace<S>> = proj
            .iter()
            .map(|q| Halfspace::new(sub(q, &centroid), S::one()))
            .collect();
        let polar_vertices = enumerate_vertices(k, &polar)?;

        let mut incident_normals: Vec<Vec<Vec<S>>> = vec![Vec::new(); pts.len()];
        let mut raw: Vec<(Vec<S>, S, Vec<usize>)> = Vec::new();
        for pv in polar_vertices {
            let offset = S::one() + &dot(&pv.point, &centroid);
            for &i in &pv.active {
                incident_normals[i].push(pv.point.clone());
            }
            raw.push((pv.point, offset, pv.active));
        }
        vertex_ids = (0..pts.len()).filter(|&i| rank(&incident_normals[i]) == k).collect();
        let mut remap = vec![usize::MAX; pts.len()];
        for (new, &old) in vertex_ids.iter().enumerate() {
            remap[old] = new;
        }
        for (normal_k, offset, active) in raw {
            let mut normal = vec![S::zero(); dim];
            for (j, &c) in pivots.iter().enumerate() {
                normal[c] = normal_k[j].clone();
            }
            let mut verts: Vec<usize> = active
                .iter()
                .filter(|&&i| remap[i] != usize::MAX)
                .map(|&i| remap[i])
                .collect();
            verts.sort_unstable();
            facets.push(Facet {
                halfspace: normalize_halfspace(normal, offset),
                vertices: verts,
            });
        }
    }

    let vertices: Vec<Vec<S>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let all: Vec<usize> = (0..vertices.len()).collect();
    if k < dim {
        let ns = if equalities_src.is_empty() {
            (0..dim)
                .map(|i| {
                    let mut e = vec![S::zero(); dim];
                    e[i] = S::one();
                    e
                })
                .collect()
        } else {
            nullspace(&equalities_src, dim)
        };
        for w in ns {
            let off = dot(&w, &base);
            let neg: Vec<S> = w.iter().map(|x| -x.clone()).collect();
            facets.push(Facet {
                halfspace: normalize_halfspace(w, off.clone()),
                vertices: all.clone(),
            });
            facets.push(Facet {
                halfspace: normalize_halfspace(neg, -off),
                vertices: all.clone(),
            });
        }
    }
    Ok(Polytope::raw_parts(dim, Some(k), vertices, facets))
}
