//! JSON and OFF serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Number, NumericMode, Real, Scalar};

use super::{AnyPolytope, Polytope};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FacetJson {
    pub normal: Vec<Number>,
    pub offset: Number,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub mode: NumericMode,
    pub vertices: Vec<Vec<Number>>,
    pub facets: Vec<FacetJson>,
}

pub(crate) fn to_number<S: Scalar>(x: &S) -> Number {
    match (S::MODE, x.to_exact()) {
        (NumericMode::Exact, Some(q)) => Number::Exact(q),
        _ => Number::Approx(x.to_real()),
    }
}

fn from_number<S: Scalar>(x: &Number) -> S {
    match x {
        Number::Exact(q) => S::from_rational(q),
        Number::Approx(r) => S::from_real(r),
    }
}

impl<S: Scalar> Polytope<S> {
    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim(),
            mode: S::MODE,
            vertices: self
                .vertices()
                .iter()
                .map(|v| v.iter().map(to_number).collect())
                .collect(),
            facets: self
                .facets()
                .iter()
                .map(|f| FacetJson {
                    normal: f.halfspace.normal.iter().map(to_number).collect(),
                    offset: to_number(&f.halfspace.offset),
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds a polytope from the vertex list of its JSON form.
    pub fn from_json(json: &PolytopeJson) -> Result<Self> {
        if json.vertices.is_empty() {
            return Ok(Self::empty(json.dim));
        }
        let pts: Vec<Vec<S>> = json
            .vertices
            .iter()
            .map(|v| {
                if v.len() == json.dim {
                    Ok(v.iter().map(from_number).collect())
                } else {
                    Err(Error::DimensionMismatch {
                        expected: json.dim,
                        found: v.len(),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Self::hull_from_vertices(&pts)
    }

    /// Object File Format mesh; only for ambient dimension at most 3.
    pub fn to_off(&self) -> Result<String> {
        let n = self.dim();
        if n > 3 {
            return Err(Error::InvalidInput(format!("OFF export needs dimension <= 3, got {n}")));
        }
        let pts: Vec<[f64; 3]> = self
            .vertices()
            .iter()
            .map(|v| {
                let mut p = [0.0; 3];
                for (j, x) in v.iter().enumerate() {
                    p[j] = x.to_f64();
                }
                p
            })
            .collect();
        let faces: Vec<Vec<usize>> = match self.affine_dim() {
            Some(2) => vec![ordered_loop(&pts, &(0..pts.len()).collect::<Vec<_>>())],
            Some(3) => self.facets().iter().map(|f| ordered_loop(&pts, &f.vertices)).collect(),
            _ => Vec::new(),
        };
        let mut out = String::from("OFF\n");
        let _ = writeln!(out, "{} {} 0", pts.len(), faces.len());
        for p in &pts {
            let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
        }
        for f in &faces {
            let _ = write!(out, "{}", f.len());
            for i in f {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
        }
        Ok(out)
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn diff(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Orders coplanar vertices counter-clockwise around their centroid.
fn ordered_loop(pts: &[[f64; 3]], ids: &[usize]) -> Vec<usize> {
    if ids.len() < 3 {
        return ids.to_vec();
    }
    let m = ids.len() as f64;
    let mut c = [0.0; 3];
    for &i in ids {
        for j in 0..3 {
            c[j] += pts[i][j] / m;
        }
    }
    let u = diff(pts[ids[0]], c);
    let normal = ids[1..]
        .iter()
        .map(|&i| cross(u, diff(pts[i], c)))
        .max_by(|a, b| dot3(*a, *a).total_cmp(&dot3(*b, *b)))
        .unwrap_or([0.0, 0.0, 1.0]);
    let w = cross(normal, u);
    let mut keyed: Vec<(f64, usize)> = ids
        .iter()
        .map(|&i| {
            let d = diff(pts[i], c);
            (dot3(d, w).atan2(dot3(d, u)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}

impl AnyPolytope {
    pub fn to_json(&self) -> PolytopeJson {
        match self {
            AnyPolytope::Exact(p) => p.to_json(),
            AnyPolytope::Approx(p) => p.to_json(),
        }
    }

    pub fn from_json(json: &PolytopeJson) -> Result<Self> {
        match json.mode {
            NumericMode::Exact => Ok(AnyPolytope::Exact(Polytope::from_json(json)?)),
            NumericMode::Approx => Ok(AnyPolytope::Approx(Polytope::<Real>::from_json(json)?)),
        }
    }

    pub fn to_off(&self) -> Result<String> {
        match self {
            AnyPolytope::Exact(p) => p.to_off(),
            AnyPolytope::Approx(p) => p.to_off(),
        }
    }
}
