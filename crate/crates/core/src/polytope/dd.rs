//! Double description vertex enumeration for bounded halfspace systems.
//!
//! The system `a_i . x <= b_i` is homogenized into the cone
//! `{(x, l) : a_i . x - b_i l <= 0, l >= 0}` whose extreme rays are computed by
//! incremental cutting with the combinatorial adjacency test.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{dot, dot_scale, independent_rows, solve};
use crate::scalar::Scalar;

use super::Halfspace;

/// A vertex of `{x : a_i . x <= b_i}` with the indices of its tight halfspaces.
#[derive(Clone, Debug)]
pub struct DdVertex<S> {
    pub point: Vec<S>,
    pub active: Vec<usize>,
}

#[derive(Clone)]
struct Ray<S> {
    coords: Vec<S>,
    active: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn is_subset_sorted(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for x in small {
        while j < big.len() && big[j] < *x {
            j += 1;
        }
        if j == big.len() || big[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

/// Enumerates the vertices of a bounded halfspace system in `R^dim`.
///
/// Returns an empty list for an infeasible system and [`Error::Unbounded`]
/// when the feasible set is unbounded or the normals do not span `R^dim`.
pub fn enumerate_vertices<S: Scalar>(dim: usize, hs: &[Halfspace<S>]) -> Result<Vec<DdVertex<S>>> {
    let d = dim + 1;
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(hs.len() + 1);
    let mut lambda_row = vec![S::zero(); d];
    lambda_row[dim] = -S::one();
    rows.push(lambda_row);
    for h in hs {
        if h.normal.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.normal.len(),
            });
        }
        let mut r = h.normal.clone();
        r.push(-h.offset.clone());
        rows.push(r);
    }

    let basis = independent_rows(&rows);
    if basis.len() < d {
        return Err(Error::Unbounded);
    }
    let basis = &basis[..d];
    let b: Vec<Vec<S>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Ray<S>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut rhs = vec![S::zero(); d];
        rhs[j] = -S::one();
        let mut coords = solve(&b, &rhs).ok_or(Error::Unbounded)?;
        S::normalize_direction(&mut coords);
        let mut active: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &i)| i)
            .collect();
        active.sort_unstable();
        rays.push(Ray { coords, active });
    }

    let mut in_basis = vec![false; rows.len()];
    basis.iter().for_each(|&i| in_basis[i] = true);

    for (ri, row) in rows.iter().enumerate() {
        if in_basis[ri] {
            continue;
        }
        let signs: Vec<Ordering> = rays
            .iter()
            .map(|r| {
                let v = dot(row, &r.coords);
                let s = dot_scale(row, &r.coords);
                v.sign_tol(&s)
            })
            .collect();
        let values: Vec<S> = rays.iter().map(|r| dot(row, &r.coords)).collect();

        let plus: Vec<usize> = (0..rays.len()).filter(|&k| signs[k] == Ordering::Greater).collect();
        if plus.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if signs[k] == Ordering::Equal {
                    insert_sorted(&mut r.active, ri);
                }
            }
            continue;
        }
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| signs[k] == Ordering::Less).collect();

        let mut created: Vec<Ray<S>> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = intersect_sorted(&rays[p].active, &rays[q].active);
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(w, rw)| w == p || w == q || !is_subset_sorted(&common, &rw.active));
                if !adjacent {
                    continue;
                }
                let vp = values[p].clone();
                let vq = values[q].clone();
                let mut coords: Vec<S> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xq, xp)| vp.clone() * xq - &(vq.clone() * xp))
                    .collect();
                S::normalize_direction(&mut coords);
                let mut active = common;
                insert_sorted(&mut active, ri);
                created.push(Ray { coords, active });
            }
        }

        let mut next: Vec<Ray<S>> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            match signs[k] {
                Ordering::Less => next.push(r),
                Ordering::Equal => {
                    insert_sorted(&mut r.active, ri);
                    next.push(r);
                }
                Ordering::Greater => {}
            }
        }
        next.extend(created);
        rays = next;
        if rays.is_empty() {
            return Ok(Vec::new());
        }
    }

    let mut out: Vec<DdVertex<S>> = Vec::new();
    for r in rays {
        let scale = r.coords.iter().map(Scalar::abs).fold(S::zero(), S::max_of);
        let lambda = r.coords[dim].clone();
        match lambda.sign_tol(&scale) {
            Ordering::Greater => {
                let point: Vec<S> = r.coords[..dim].iter().map(|x| x.clone() / &lambda).collect();
                let active: Vec<usize> = r.active.iter().filter(|&&i| i > 0).map(|i| i - 1).collect();
                merge_vertex(&mut out, DdVertex { point, active });
            }
            _ => {
                if scale.is_zero() {
                    continue;
                }
                return Err(Error::Unbounded);
            }
        }
    }
    Ok(out)
}

fn merge_vertex<S: Scalar>(out: &mut Vec<DdVertex<S>>, v: DdVertex<S>) {
    if S::MODE == crate::scalar::NumericMode::Approx {
        if let Some(existing) = out.iter_mut().find(|w| super::points_close(&w.point, &v.point)) {
            for i in v.active {
                insert_sorted(&mut existing.active, i);
            }
            return;
        }
    }
    out.push(v);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn hs(normal: &[i64], offset: i64) -> Halfspace<Rational> {
        Halfspace::new(
            normal.iter().map(|&v| Rational::from_i64(v)).collect(),
            Rational::from_i64(offset),
        )
    }

    fn unit_cube(n: usize) -> Vec<Halfspace<Rational>> {
        let mut out = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            out.push(hs(&e, 1));
            e[i] = -1;
            out.push(hs(&e, 0));
        }
        out
    }

    #[test]
    fn cube_has_2_pow_n_vertices() {
        for n in 1..=4 {
            let v = enumerate_vertices(n, &unit_cube(n)).unwrap();
            assert_eq!(v.len(), 1 << n);
            for vert in &v {
                assert_eq!(vert.active.len(), n);
            }
        }
    }

    #[test]
    fn redundant_constraints_do_not_add_vertices() {
        let mut h = unit_cube(2);
        h.push(hs(&[1, 1], 5));
        let v = enumerate_vertices(2, &h).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn infeasible_system_is_empty() {
        let mut h = unit_cube(2);
        h.push(hs(&[1, 0], -1));
        assert!(enumerate_vertices(2, &h).unwrap().is_empty());
    }

    #[test]
    fn unbounded_system_is_rejected() {
        let h = vec![hs(&[-1, 0], 0), hs(&[0, -1], 0), hs(&[1, -1], 1)];
        assert_eq!(enumerate_vertices(2, &h).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn float_octahedron() {
        let mut h: Vec<Halfspace<f64>> = Vec::new();
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                for sz in [-1.0, 1.0] {
                    h.push(Halfspace::new(vec![sx, sy, sz], 1.0));
                }
            }
        }
        let v = enumerate_vertices(3, &h).unwrap();
        assert_eq!(v.len(), 6);
        for vert in &v {
            assert_eq!(vert.active.len(), 4);
        }
    }
}
