//! Damped Newton iteration on support numbers for the discrete Minkowski problem.
//!
//! With the normals fixed, the facet areas `A_i(h)` of `P(h) = {u_i . x <= h_i}`
//! are the gradient of the volume. Their Jacobian is assembled from ridge
//! volumes and the angles between adjacent normals; translations span its
//! kernel and are removed by a bordered system.

use crate::error::{Error, Result};
use crate::linalg::{det, dot, gram_det, rank, solve, sub};
use crate::polytope::dd::enumerate_vertices;
use crate::polytope::{FaceLattice, Halfspace, Polytope};
use crate::scalar::{precision_bits, scoped_tolerance, Real, RealScalar, Scalar};

use super::AreaMeasure;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Target for `max_i |A_i - f_i| / f_i`.
    pub tol: f64,
    pub max_iterations: usize,
    pub max_restarts: usize,
}

impl SolverOptions {
    pub fn with_tolerance(tol: f64) -> Self {
        SolverOptions {
            tol,
            max_iterations: 10_000,
            max_restarts: 3,
        }
    }

    pub(crate) fn condition_tolerance(&self) -> f64 {
        self.tol
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::with_tolerance(1e-9)
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// The body, translated to canonical position.
    pub polytope: Polytope<Real>,
    /// Support number of the body in each atom direction, in atom order.
    pub support: Vec<Real>,
    /// Largest relative facet-area error of the returned body.
    pub residual: f64,
    pub iterations: usize,
    pub restarts: usize,
}

struct Eval<S> {
    areas: Vec<S>,
    jacobian: Vec<Vec<S>>,
}

struct Problem<S> {
    n: usize,
    normals: Vec<Vec<S>>,
    target: Vec<S>,
}

fn factorial<S: Scalar>(k: usize) -> S {
    (1..=k).fold(S::one(), |acc, i| acc * S::from_i64(i as i64))
}

fn simplex_volume<S: RealScalar>(points: &[&[S]]) -> S {
    let k = points.len() - 1;
    let edges: Vec<Vec<S>> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    S::max_of(gram_det(&edges), S::zero()).sqrt() / factorial::<S>(k)
}

impl<S: RealScalar> Problem<S> {
    fn evaluate(&self, h: &[S]) -> Option<Eval<S>> {
        let n = self.n;
        let m = self.normals.len();
        let hs: Vec<Halfspace<S>> = self
            .normals
            .iter()
            .zip(h)
            .map(|(u, hi)| Halfspace::new(u.clone(), hi.clone()))
            .collect();
        let verts = enumerate_vertices(n, &hs).ok()?;
        if verts.len() <= n {
            return None;
        }
        let dirs: Vec<Vec<S>> = verts[1..].iter().map(|v| sub(&v.point, &verts[0].point)).collect();
        if rank(&dirs) < n {
            return None;
        }
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (vi, v) in verts.iter().enumerate() {
            for &i in &v.active {
                sets[i].push(vi);
            }
        }
        let refs: Vec<&[usize]> = sets.iter().map(Vec::as_slice).collect();
        let lat = FaceLattice::build(verts.len(), n, &refs);
        let pts: Vec<&[S]> = verts.iter().map(|v| v.point.as_slice()).collect();

        let mut areas = vec![S::zero(); m];
        for i in 0..m {
            let Some(id) = lat.find(n - 1, &sets[i]) else {
                continue;
            };
            if n == 1 {
                areas[i] = S::one();
                continue;
            }
            let u = &self.normals[i];
            let k = (0..n)
                .max_by(|&a, &b| u[a].abs().partial_cmp(&u[b].abs()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(0);
            let drop = |p: &[S]| -> Vec<S> {
                p.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, x)| x.clone())
                    .collect()
            };
            let total = lat.simplices(n - 1, id).iter().fold(S::zero(), |acc, s| {
                let base = drop(pts[s[0]]);
                let edges: Vec<Vec<S>> = s[1..].iter().map(|&v| sub(&drop(pts[v]), &base)).collect();
                acc + &det(&edges).abs()
            });
            areas[i] = total / factorial::<S>(n - 1) / u[k].abs();
        }

        let mut jac = vec![vec![S::zero(); m]; m];
        if n >= 2 {
            for (rid, ridge) in lat.level(n - 2).iter().enumerate() {
                let owners: Vec<usize> = (0..m)
                    .filter(|&i| crate::polytope::dd::is_subset_sorted(&ridge.vertices, &sets[i]))
                    .collect();
                if owners.len() != 2 {
                    continue;
                }
                let (i, j) = (owners[0], owners[1]);
                let vol = if n == 2 {
                    S::one()
                } else {
                    lat.simplices(n - 2, rid).iter().fold(S::zero(), |acc, s| {
                        let p: Vec<&[S]> = s.iter().map(|&v| pts[v]).collect();
                        acc + &simplex_volume(&p)
                    })
                };
                let c = dot(&self.normals[i], &self.normals[j]);
                let sin = S::max_of(S::one() - c.clone() * &c, S::zero()).sqrt();
                if Scalar::to_f64(&sin) <= 1e-15 {
                    continue;
                }
                let w = vol / sin;
                jac[i][j] = jac[i][j].clone() + &w;
                jac[j][i] = jac[j][i].clone() + &w;
            }
            for i in 0..m {
                let mut diag = S::zero();
                for j in 0..m {
                    if j != i && !jac[i][j].is_zero() {
                        let c = dot(&self.normals[i], &self.normals[j]);
                        diag = diag - &(c * &jac[i][j]);
                    }
                }
                jac[i][i] = diag;
            }
        }
        Some(Eval { areas, jacobian: jac })
    }

    fn residual(&self, areas: &[S]) -> f64 {
        areas
            .iter()
            .zip(&self.target)
            .map(|(a, f)| ((a.clone() - f).abs() / f).to_f64())
            .fold(0.0, f64::max)
    }

    fn all_present(&self, areas: &[S]) -> bool {
        areas
            .iter()
            .zip(&self.target)
            .all(|(a, f)| a.to_f64() > 1e-12 * f.to_f64())
    }

    /// Newton direction with the translation gauge `sum_i delta_i u_i = 0`.
    fn newton_step(&self, e: &Eval<S>) -> Option<Vec<S>> {
        let m = self.normals.len();
        let n = self.n;
        let size = m + n;
        let mut a = vec![vec![S::zero(); size]; size];
        let mut b = vec![S::zero(); size];
        for i in 0..m {
            a[i][..m].clone_from_slice(&e.jacobian[i]);
            for k in 0..n {
                a[i][m + k] = self.normals[i][k].clone();
                a[m + k][i] = self.normals[i][k].clone();
            }
            b[i] = self.target[i].clone() - &e.areas[i];
        }
        let x = solve(&a, &b)?;
        Some(x[..m].to_vec())
    }

    /// `h = c * 1` with `c` matching the total area; every facet is present.
    fn uniform_start(&self) -> Option<Vec<S>> {
        let m = self.normals.len();
        let ones = vec![S::one(); m];
        let e = self.evaluate(&ones)?;
        let total = e.areas.iter().fold(0.0, |acc, a| acc + a.to_f64());
        let want = self.target.iter().fold(0.0, |acc, a| acc + a.to_f64());
        let c = (want / total).powf(1.0 / (self.n as f64 - 1.0).max(1.0));
        Some(vec![S::from_f64(c); m])
    }

    /// Damped Newton with a monotone line search; stops at `goal` or when no
    /// step decreases the residual.
    fn descend(&self, h: &mut Vec<S>, eval: &mut Eval<S>, res: &mut f64, goal: f64, budget: usize) -> (usize, bool) {
        let mut iterations = 0;
        while *res > goal && iterations < budget {
            iterations += 1;
            let Some(delta) = self.newton_step(eval) else {
                return (iterations, false);
            };
            let mut lambda = S::one();
            let half = S::from_f64(0.5);
            let mut accepted = false;
            for _ in 0..40 {
                let trial: Vec<S> = h
                    .iter()
                    .zip(&delta)
                    .map(|(hi, di)| hi.clone() + &(lambda.clone() * di))
                    .collect();
                if let Some(e) = self.evaluate(&trial) {
                    if self.all_present(&e.areas) {
                        let r = self.residual(&e.areas);
                        if r < *res {
                            *h = trial;
                            *eval = e;
                            *res = r;
                            accepted = true;
                            break;
                        }
                    }
                }
                lambda = lambda * &half;
            }
            if !accepted {
                return (iterations, false);
            }
        }
        (iterations, true)
    }
}

/// Below this residual a stalled `f64` iteration is handed to the high-precision stage.
const POLISH_THRESHOLD: f64 = 1e-5;
/// Predicate tolerance during the polish: a quarter of the significand above rounding.
fn polish_tolerance() -> f64 {
    2f64.powi(-(precision_bits() as i32) * 3 / 4)
}

/// Newton iterations allowed in high precision.
const POLISH_BUDGET: usize = 30;

pub(crate) fn solve_measure(mu: &AreaMeasure, opts: &SolverOptions) -> Result<Reconstruction> {
    let n = mu.dim();
    let m = mu.atoms().len();
    let raw: Vec<Real> = mu.atoms().iter().map(|a| a.mass.to_real()).collect();
    let mean = raw.iter().fold(Real::zero(), |acc, f| acc + f) / Real::from_i64(m as i64);
    let target: Vec<Real> = raw.iter().map(|f| f.clone() / &mean).collect();
    let problem = Problem {
        n,
        normals: mu.atoms().iter().map(|a| a.direction_f64()).collect(),
        target: target.iter().map(Real::to_f64).collect(),
    };
    let exponent = 1.0 / (n as f64 - 1.0).max(1.0);
    let goal = (opts.tol * 1e-3).max(1e-14);

    let mut h: Vec<f64> = problem.target.iter().map(|f| f.powf(exponent)).collect();
    let mut eval = problem.evaluate(&h).filter(|e| problem.all_present(&e.areas));
    if eval.is_none() {
        h = problem.uniform_start().ok_or(Error::NoConvergence {
            iterations: 0,
            residual: f64::INFINITY,
        })?;
        eval = problem.evaluate(&h);
    }
    let mut eval = eval.ok_or(Error::NoConvergence {
        iterations: 0,
        residual: f64::INFINITY,
    })?;
    let mut res = problem.residual(&eval.areas);
    let mut iterations = 0;
    let mut restarts = 0;

    loop {
        let (used, _) = problem.descend(&mut h, &mut eval, &mut res, goal, opts.max_iterations - iterations);
        iterations += used;
        if res <= goal || res <= POLISH_THRESHOLD || iterations >= opts.max_iterations {
            break;
        }
        if restarts == opts.max_restarts {
            return Err(Error::NoConvergence {
                iterations,
                residual: res,
            });
        }
        restarts += 1;
        let avg = h.iter().map(|x| x.abs()).sum::<f64>() / m as f64;
        let inflated: Vec<f64> = h.iter().map(|x| x + avg * f64::from(1u32 << restarts)).collect();
        let next = problem
            .evaluate(&inflated)
            .filter(|e| problem.all_present(&e.areas))
            .map(|e| (inflated.clone(), e))
            .or_else(|| {
                let u = problem.uniform_start()?;
                problem.evaluate(&u).map(|e| (u, e))
            });
        let Some((hn, en)) = next else {
            return Err(Error::NoConvergence {
                iterations,
                residual: res,
            });
        };
        h = hn;
        res = problem.residual(&en.areas);
        eval = en;
    }

    // High-precision polish: a few Newton steps remove the f64 noise floor.
    let precise = Problem {
        n,
        normals: mu.atoms().iter().map(|a| a.direction.clone()).collect(),
        target,
    };
    let mut hp: Vec<Real> = h.iter().map(|&x| Real::from_f64(x)).collect();
    let guard = scoped_tolerance(polish_tolerance());
    if let Some(mut ep) = precise.evaluate(&hp) {
        let mut rp = precise.residual(&ep.areas);
        let polish_goal = goal.min(1e-20);
        let (used, _) = precise.descend(&mut hp, &mut ep, &mut rp, polish_goal, POLISH_BUDGET);
        iterations += used;
        res = rp;
    }
    drop(guard);
    if res > opts.tol {
        return Err(Error::NoConvergence {
            iterations,
            residual: res,
        });
    }

    let scale = mean.nth_root((n as u32 - 1).max(1));
    let hs: Vec<Halfspace<Real>> = mu
        .atoms()
        .iter()
        .zip(&hp)
        .map(|(a, hi)| Halfspace::new(a.direction.clone(), hi.clone() * &scale))
        .collect();
    let body = Polytope::from_halfspaces(n, &hs)?.canonical_position();
    let residual = mu.relative_residual(&body)?;
    if residual > opts.tol {
        return Err(Error::NoConvergence { iterations, residual });
    }
    let support = mu
        .atoms()
        .iter()
        .map(|a| {
            body.vertices()
                .iter()
                .map(|v| crate::linalg::dot(&a.direction, v))
                .fold(None, |best: Option<Real>, x| match best {
                    Some(b) if b >= x => Some(b),
                    _ => Some(x),
                })
                .unwrap_or_else(Real::zero)
        })
        .collect();
    Ok(Reconstruction {
        polytope: body,
        support,
        residual,
        iterations,
        restarts,
    })
}
