//! Discrete surface area measures, Minkowski's conditions, reconstruction of a
//! polytope from its measure, and the Blaschke sum.

mod solver;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{AnyPolytope, Polytope};
use crate::scalar::{Number, Rational, Real, RealScalar, Scalar};

pub use solver::{Reconstruction, SolverOptions};

/// Angular distance below which two atom directions are merged.
pub const DIRECTION_MERGE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Atom {
    /// Unit direction.
    pub direction: Vec<Real>,
    pub mass: Number,
    /// Primitive integer direction when the atom came from exact data.
    key: Option<Vec<Rational>>,
}

impl Atom {
    /// Atom with direction `dir` rescaled to unit length.
    pub fn new(dir: &[Number], mass: Number) -> Result<Atom> {
        if dir.iter().all(Number::is_zero) {
            return Err(Error::InvalidInput("atom direction is zero".into()));
        }
        let key = dir
            .iter()
            .map(|x| x.as_exact().cloned())
            .collect::<Option<Vec<Rational>>>()
            .map(|mut v| {
                Rational::normalize_direction(&mut v);
                v
            });
        let real: Vec<Real> = dir.iter().map(Number::to_real).collect();
        Ok(Atom {
            direction: unit(&real),
            mass,
            key,
        })
    }

    fn from_normal<S: Scalar>(normal: &[S], mass: Number) -> Atom {
        let key = normal
            .iter()
            .map(Scalar::to_exact)
            .collect::<Option<Vec<Rational>>>()
            .filter(|_| S::MODE == crate::scalar::NumericMode::Exact)
            .map(|mut v| {
                Rational::normalize_direction(&mut v);
                v
            });
        let real: Vec<Real> = normal.iter().map(Scalar::to_real).collect();
        Atom {
            direction: unit(&real),
            mass,
            key,
        }
    }

    fn same_direction(&self, other: &Atom) -> bool {
        if let (Some(a), Some(b)) = (&self.key, &other.key) {
            if a == b {
                return true;
            }
        }
        let d: f64 = self
            .direction
            .iter()
            .zip(&other.direction)
            .map(|(x, y)| {
                let t = (x.clone() - y).to_f64();
                t * t
            })
            .sum::<f64>()
            .sqrt();
        d <= DIRECTION_MERGE_TOLERANCE
    }

    pub fn direction_f64(&self) -> Vec<f64> {
        self.direction.iter().map(Real::to_f64).collect()
    }
}

fn unit(v: &[Real]) -> Vec<Real> {
    let norm = Real::hypot_of(v);
    v.iter().map(|x| x.clone() / &norm).collect()
}

/// Finite sum of point masses on the unit sphere.
#[derive(Clone, Debug)]
pub struct AreaMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MinkowskiReport {
    pub centered: bool,
    /// `|sum mass * dir|`.
    pub residual: f64,
    pub spanning: bool,
    pub detail: Option<String>,
}

impl MinkowskiReport {
    pub fn passes(&self) -> bool {
        self.centered && self.spanning
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomJson {
    pub dir: Vec<Number>,
    pub mass: Number,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AreaMeasureJson {
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
}

impl AreaMeasure {
    pub fn empty(dim: usize) -> Self {
        AreaMeasure { dim, atoms: Vec::new() }
    }

    /// Builds a measure, merging atoms with equal directions.
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        let mut m = AreaMeasure::empty(dim);
        for a in atoms {
            m.push(a)?;
        }
        Ok(m)
    }

    fn push(&mut self, atom: Atom) -> Result<()> {
        if atom.direction.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: atom.direction.len(),
            });
        }
        if atom.mass.signum() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidInput("atom masses must be positive".into()));
        }
        match self.atoms.iter_mut().find(|a| a.same_direction(&atom)) {
            Some(existing) => existing.mass = existing.mass.clone() + atom.mass,
            None => self.atoms.push(atom),
        }
        Ok(())
    }

    /// One atom per facet: unit outward normal and facet volume.
    pub fn of_polytope<S: Scalar>(p: &Polytope<S>) -> Result<Self> {
        if !p.is_full_dimensional() {
            return Err(Error::DegenerateBody {
                affine_dim: p.affine_dim().unwrap_or(0),
                dim: p.dim(),
            });
        }
        let mut atoms = Vec::with_capacity(p.facets().len());
        for (i, f) in p.facets().iter().enumerate() {
            let sq = p.facet_volume_sq(i)?;
            let mass = match sq.to_exact().filter(|_| S::MODE == crate::scalar::NumericMode::Exact) {
                Some(q) => Number::Exact(q).nth_root(2),
                None => Number::Approx(sq.to_real().sqrt()),
            };
            atoms.push(Atom::from_normal(&f.halfspace.normal, mass));
        }
        Self::new(p.dim(), atoms)
    }

    pub fn of_any(p: &AnyPolytope) -> Result<Self> {
        match p {
            AnyPolytope::Exact(p) => Self::of_polytope(p),
            AnyPolytope::Approx(p) => Self::of_polytope(p),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> Number {
        self.atoms
            .iter()
            .fold(Number::from_int(0), |acc, a| acc + a.mass.clone())
    }

    /// Atom-wise sum.
    pub fn add(&self, other: &AreaMeasure) -> Result<AreaMeasure> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = self.clone();
        for a in &other.atoms {
            out.push(a.clone())?;
        }
        Ok(out)
    }

    /// Every mass multiplied by a positive factor.
    pub fn scale_masses(&self, factor: &Number) -> Result<AreaMeasure> {
        if factor.signum() != std::cmp::Ordering::Greater {
            return Err(Error::InvalidInput("mass factor must be positive".into()));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                mass: a.mass.clone() * factor.clone(),
                ..a.clone()
            })
            .collect();
        Ok(AreaMeasure { dim: self.dim, atoms })
    }

    /// `sum mass * dir` over high-precision floats.
    pub fn barycenter_sum(&self) -> Vec<Real> {
        let mut s = vec![Real::zero(); self.dim];
        for a in &self.atoms {
            let m = a.mass.to_real();
            for (sj, dj) in s.iter_mut().zip(&a.direction) {
                *sj = sj.clone() + &(m.clone() * dj);
            }
        }
        s
    }

    /// Centering is judged relative to the total mass (absolute below mass 1).
    pub fn check_minkowski_conditions(&self, tol: f64) -> MinkowskiReport {
        let residual = Real::hypot_of(&self.barycenter_sum()).to_f64();
        let total = self.total_mass().to_f64();
        let centered = residual <= tol * total.max(1.0);
        let (spanning, detail) = self.spanning_check();
        let detail = detail.or_else(|| (!centered).then(|| format!("|sum mass*dir| = {residual:e}")));
        MinkowskiReport {
            centered,
            residual,
            spanning,
            detail,
        }
    }

    /// The origin must be an interior point of the hull of the directions.
    fn spanning_check(&self) -> (bool, Option<String>) {
        if self.atoms.len() <= self.dim {
            return (
                false,
                Some(format!("{} directions cannot span R^{}", self.atoms.len(), self.dim)),
            );
        }
        let dirs: Vec<Vec<f64>> = self.atoms.iter().map(Atom::direction_f64).collect();
        let hull = match Polytope::<f64>::hull_from_vertices(&dirs) {
            Ok(h) => h,
            Err(e) => return (false, Some(e.to_string())),
        };
        if !hull.is_full_dimensional() {
            return (false, Some("directions lie in a hyperplane".into()));
        }
        let inside = hull.facets().iter().all(|f| f.halfspace.offset > 1e-12);
        if inside {
            (true, None)
        } else {
            (false, Some("directions lie in a closed halfspace".into()))
        }
    }

    /// Polytope (in canonical position) whose area measure is `self`.
    pub fn reconstruct(&self, tol: f64) -> Result<Reconstruction> {
        self.reconstruct_with(&SolverOptions::with_tolerance(tol))
    }

    pub fn reconstruct_with(&self, opts: &SolverOptions) -> Result<Reconstruction> {
        let report = self.check_minkowski_conditions(opts.condition_tolerance());
        if !report.spanning {
            return Err(Error::NotSpanning(report.detail.unwrap_or_default()));
        }
        if !report.centered {
            return Err(Error::NotCentered {
                residual: report.residual,
            });
        }
        solver::solve_measure(self, opts)
    }

    /// Largest `|A_i - f_i| / f_i` between the facet areas of `p` and this measure.
    pub fn relative_residual<S: Scalar>(&self, p: &Polytope<S>) -> Result<f64> {
        let other = AreaMeasure::of_polytope(p)?;
        let mut worst: f64 = 0.0;
        for a in &self.atoms {
            let f = a.mass.to_real();
            let got = other
                .atoms
                .iter()
                .find(|b| angular_close(a, b, 1e-8))
                .map_or_else(Real::zero, |b| b.mass.to_real());
            worst = worst.max(((got - &f).abs() / &f).to_f64());
        }
        for b in &other.atoms {
            if !self.atoms.iter().any(|a| angular_close(a, b, 1e-8)) {
                worst = f64::INFINITY;
            }
        }
        Ok(worst)
    }

    pub fn to_json(&self) -> AreaMeasureJson {
        AreaMeasureJson {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| {
                    let exact_unit = a.key.as_ref().filter(|k| {
                        k.iter()
                            .fold(<Rational as Scalar>::zero(), |acc, x| acc + &(x.clone() * x))
                            == <Rational as Scalar>::one()
                    });
                    let dir = match exact_unit {
                        Some(k) => k.iter().cloned().map(Number::Exact).collect(),
                        None => a.direction.iter().cloned().map(Number::Approx).collect(),
                    };
                    AtomJson {
                        dir,
                        mass: a.mass.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AreaMeasureJson) -> Result<Self> {
        let atoms = json
            .atoms
            .iter()
            .map(|a| {
                if a.dir.len() != json.dim {
                    return Err(Error::DimensionMismatch {
                        expected: json.dim,
                        found: a.dir.len(),
                    });
                }
                Atom::new(&a.dir, a.mass.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.dim, atoms)
    }
}

fn angular_close(a: &Atom, b: &Atom, tol: f64) -> bool {
    let da = a.direction_f64();
    let db = b.direction_f64();
    da.iter().zip(&db).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt() <= tol
}

/// Blaschke sum: the polytope whose area measure is the sum of the two measures.
pub fn blaschke_sum(p: &AnyPolytope, q: &AnyPolytope, tol: f64) -> Result<Reconstruction> {
    let mu = AreaMeasure::of_any(p)?.add(&AreaMeasure::of_any(q)?)?;
    mu.reconstruct(tol)
}

#[cfg(test)]
mod tests;
