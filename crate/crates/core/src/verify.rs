//! Randomized verification suites.
//!
//! Every case draws from its own ChaCha stream derived from the seed, the
//! suite name and the case index, so reports do not depend on scheduling.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::area_measure::{blaschke_sum, AreaMeasure};
use crate::bundle::{
    blaschke_closed_form, classify_divisor, divisor_power, dual_volume, no_body_curve, no_body_divisor,
    positivity_from_body, CurveClass, DivisorClass, FlagPermutation, HnData, SliceDecomposition,
};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::polytope::{AnyPolytope, Polytope};
use crate::scalar::{Number, Rational, Real, Scalar};
use crate::toric::{bridge_check, splitting_bundle_fan, toric_blaschke_check, FanData, ToricCurveClass};

pub const SUITES: &[&str] = &[
    "volume-ring",
    "mthm",
    "minkowski-roundtrip",
    "cube-law",
    "blaschke-2d",
    "log-concavity",
    "dual-volume",
    "cone-body",
    "toric",
    "counterexample-p3",
    "continuity",
    "gluing",
    "omega-invariance",
    "stability",
];

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Overrides the default number of cases (per HN datum or fan where relevant).
    pub samples: Option<usize>,
    /// Overrides the default pass threshold.
    pub tol: Option<f64>,
    pub exec: Exec,
    /// Restricts bundle suites to one HN datum.
    pub hn: Option<HnData>,
}


#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub index: usize,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub threshold: f64,
    /// Cases are informational only and never fail the suite.
    pub report_only: bool,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        !self.cases.is_empty() && (self.report_only || self.cases.iter().all(|c| c.pass))
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn worst_residual(&self) -> f64 {
        self.cases.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} cases, threshold {:e}",
            self.suite,
            self.cases.len(),
            self.threshold
        );
        let _ = writeln!(out, "{:>5}  {:<6}  {:>12}  detail", "case", "result", "residual");
        for c in &self.cases {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:>5}  {:<6}  {:>12.4e}  {}",
                c.index, status, c.residual, c.detail
            );
        }
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let note = if self.report_only { " (report only)" } else { "" };
        let _ = writeln!(
            out,
            "summary: {verdict} ({}/{} cases){note}",
            self.passed(),
            self.cases.len()
        );
        out
    }
}

/// Runs a suite by name and also returns its wall time in seconds.
pub fn run_suite_timed(name: &str, opts: &VerifyOptions) -> Result<(SuiteReport, f64)> {
    let start = Instant::now();
    let report = run_suite(name, opts)?;
    Ok((report, start.elapsed().as_secs_f64()))
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let (threshold, report_only, cases) = match name {
        "volume-ring" => (0.0, false, volume_ring(opts)),
        "mthm" => {
            let tol = opts.tol.unwrap_or(1e-6);
            (tol, false, blaschke_additivity(opts, tol))
        }
        "minkowski-roundtrip" => (1e-9, false, minkowski_roundtrip(opts)),
        "cube-law" => {
            let tol = opts.tol.unwrap_or(1e-9);
            (tol, false, cube_law(opts, tol))
        }
        "blaschke-2d" => {
            let tol = opts.tol.unwrap_or(1e-9);
            (tol, false, blaschke_2d(opts, tol))
        }
        "log-concavity" => {
            let tol = opts.tol.unwrap_or(1e-9);
            (tol, false, log_concavity(opts, tol))
        }
        "dual-volume" => {
            let tol = opts.tol.unwrap_or(1e-9);
            (tol, false, dual_volume_suite(opts, tol))
        }
        "cone-body" => (0.0, false, cone_body(opts)),
        "toric" => {
            let tol = opts.tol.unwrap_or(1e-6);
            (tol, false, toric(opts, tol))
        }
        "counterexample-p3" => (0.0, false, counterexample(opts)),
        "continuity" => {
            let tol = opts.tol.unwrap_or(1e-3);
            (tol, false, continuity(opts, tol))
        }
        "gluing" => (0.0, false, gluing(opts)),
        "omega-invariance" => (0.0, false, omega_invariance(opts)),
        "stability" => (0.0, true, stability(opts)),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        threshold,
        report_only,
        cases,
    })
}

// ---------------------------------------------------------------------------
// Sampling helpers

fn case_rng(seed: u64, suite: &str, index: usize) -> ChaCha8Rng {
    let tag = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag);
    rng.set_stream(index as u64);
    rng
}

fn run_cases<F>(opts: &VerifyOptions, suite: &str, count: usize, f: F) -> Vec<CaseResult>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<(bool, f64, String)> + Sync + Send,
{
    let indices: Vec<usize> = (0..count).collect();
    opts.exec.map(&indices, |&i| {
        let mut rng = case_rng(opts.seed, suite, i);
        match f(i, &mut rng) {
            Ok((pass, residual, detail)) => CaseResult {
                index: i,
                pass,
                residual,
                detail,
            },
            Err(e) => CaseResult {
                index: i,
                pass: false,
                residual: f64::INFINITY,
                detail: format!("error {}: {e}", e.code()),
            },
        }
    })
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Uniform `p/den` with `den` in `1..=max_den` and value in `[lo, hi]`.
fn rand_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    q(rng.gen_range(lo * den..=hi * den), den)
}

/// A positive rational in `(0, hi]`.
fn rand_positive(rng: &mut ChaCha8Rng, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    q(rng.gen_range(1..=hi * den), den)
}

fn random_hn(rng: &mut ChaCha8Rng, r: usize) -> HnData {
    let parts = rng.gen_range(1..=r);
    let mut ranks = vec![1u32; parts];
    for _ in parts..r {
        let k = rng.gen_range(0..parts);
        ranks[k] += 1;
    }
    let mut slopes: Vec<Rational> = Vec::with_capacity(parts);
    while slopes.len() < parts {
        let s = rand_rational(rng, -4, 4, 3);
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    slopes.sort();
    let quotients: Vec<(u32, Rational)> = ranks.into_iter().zip(slopes).collect();
    HnData::new(&quotients).expect("valid by construction")
}

fn hn_label(x: &HnData) -> String {
    let s: Vec<String> = x.sigma().iter().map(crate::scalar::format_rational).collect();
    format!("sigma=({})", s.join(","))
}

fn pick_hn(opts: &VerifyOptions, rng: &mut ChaCha8Rng, r: usize) -> HnData {
    opts.hn.clone().unwrap_or_else(|| random_hn(rng, r))
}

fn samples(opts: &VerifyOptions, default: usize) -> usize {
    opts.samples.unwrap_or(default).max(1)
}

fn ex(v: Rational) -> Number {
    Number::Exact(v)
}

fn factorial(r: usize) -> i64 {
    (1..=r as i64).product()
}

fn rel_hausdorff(a: &AnyPolytope, b: &AnyPolytope) -> Result<f64> {
    let d = a.hausdorff_distance(b)?.to_f64();
    Ok(d / b.diameter().to_f64())
}

fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, extra: usize, range: i64) -> Polytope<Rational> {
    loop {
        let count = dim + 1 + rng.gen_range(0..=extra);
        let pts: Vec<Vec<Rational>> = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|_| Rational::from_i64(rng.gen_range(-range..=range)))
                    .collect()
            })
            .collect();
        if let Ok(p) = Polytope::hull_from_vertices(&pts) {
            if p.is_full_dimensional() {
                return p;
            }
        }
    }
}

/// Positive movable class with `M > 0`: `s` strictly below `d - σ_1`.
fn random_movable_curve(rng: &mut ChaCha8Rng, x: &HnData) -> CurveClass {
    let c1 = rand_positive(rng, 3, 3);
    let gap = rand_positive(rng, 4, 4);
    let s = x.degree().clone() - x.sigma_at(1) - &gap;
    CurveClass::new(ex(c1.clone()), ex(-(s * c1)))
}

// ---------------------------------------------------------------------------
// Suites

fn volume_ring(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "volume-ring", samples(opts, 200), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 5, HnData::rank);
        let x = pick_hn(opts, rng, r);
        let slack = if i % 7 == 0 {
            Rational::from_i64(0)
        } else {
            rand_rational(rng, 0, 3, 4)
        };
        let t = x.sigma_at(r).clone() - &slack;
        let d = DivisorClass::from_a_t(Number::from_int(1), ex(t.clone()));
        let body = no_body_divisor(&x, &d, None)?;
        let lhs = Number::from_int(factorial(r)) * body.volume();
        let rhs = ex(x.degree().clone() - Rational::from_i64(r as i64) * t.clone());
        let residual = (lhs.clone() - rhs.clone()).to_f64().abs();
        Ok((
            lhs == rhs,
            residual,
            format!("{} t={} r!vol={lhs}", hn_label(&x), crate::scalar::format_rational(&t)),
        ))
    })
}

fn blaschke_additivity(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    let per = samples(opts, 50);
    let groups = if opts.hn.is_some() { 1 } else { 6 };
    run_cases(opts, "mthm", per * groups, |i, rng| {
        let group = i / per;
        let x = match &opts.hn {
            Some(x) => x.clone(),
            None => {
                let mut grng = case_rng(opts.seed, "mthm-hn", group);
                random_hn(&mut grng, 2 + group / 2)
            }
        };
        let r = x.rank();
        let sr = x.sigma_at(r).clone();
        let t1 = sr.clone() - rand_positive(rng, 2, 4);
        let t2 = sr - rand_positive(rng, 2, 4);
        let a = rand_positive(rng, 8, 1) / Rational::from_i64(4);
        let d1 = DivisorClass::from_a_t(Number::from_int(1), ex(t1.clone()));
        let d2 = DivisorClass::from_a_t(ex(a.clone()), ex(t2.clone()));
        let alpha1 = divisor_power(&d1, &x);
        let alpha2 = divisor_power(&d2, &x);
        let p1 = no_body_curve(&x, &alpha1)?;
        let p2 = no_body_curve(&x, &alpha2)?;
        let target = no_body_curve(&x, &alpha1.add(&alpha2))?.canonical_position();
        let rec = blaschke_sum(&p1, &p2, 1e-10)?;
        let dist = rel_hausdorff(&AnyPolytope::Approx(rec.polytope), &target)?;
        let (_, closed) = blaschke_closed_form(&x, &ex(a.clone()), &ex(t1), &ex(t2))?;
        let closed_gap = rel_hausdorff(&closed.canonical_position(), &target)?;
        let pass = dist <= tol && closed_gap <= 1e-9;
        Ok((
            pass,
            dist.max(closed_gap),
            format!(
                "{} a={} closed-form gap {closed_gap:.2e}",
                hn_label(&x),
                crate::scalar::format_rational(&a)
            ),
        ))
    })
}

fn minkowski_roundtrip(opts: &VerifyOptions) -> Vec<CaseResult> {
    let dist_tol = opts.tol.unwrap_or(1e-6);
    run_cases(opts, "minkowski-roundtrip", samples(opts, 100), |i, rng| {
        let dim = 3 + i % 2;
        let p = random_polytope(rng, dim, 6, 6);
        let mu = AreaMeasure::of_polytope(&p)?;
        let rec = mu.reconstruct(1e-10)?;
        let residual = mu.relative_residual(&rec.polytope)?;
        let original = AnyPolytope::Exact(p.canonical_position());
        let dist = rel_hausdorff(&AnyPolytope::Approx(rec.polytope), &original)?;
        Ok((
            residual <= 1e-9 && dist <= dist_tol,
            residual,
            format!("dim={dim} facets={} d_H/diam={dist:.2e}", mu.atoms().len()),
        ))
    })
}

fn cube_law(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    run_cases(opts, "cube-law", 4, |i, _| {
        let n = i + 2;
        let cube = Polytope::cube(n, Rational::from_i64(1))?;
        let mu = AreaMeasure::of_polytope(&cube)?;
        let rec = mu.add(&mu)?.reconstruct(1e-12)?;
        let side = 2f64.powf(1.0 / (n as f64 - 1.0));
        let worst = mu
            .atoms()
            .iter()
            .zip(&rec.support)
            .map(|(a, h)| {
                let upper = a.direction_f64().iter().any(|&c| c > 0.5);
                let want = if upper { side } else { 0.0 };
                (h.to_f64() - want).abs()
            })
            .fold(0.0, f64::max);
        Ok((worst <= tol, worst, format!("n={n} side={side:.15}")))
    })
}

fn blaschke_2d(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    run_cases(opts, "blaschke-2d", samples(opts, 200), |_, rng| {
        let p = random_polytope(rng, 2, 6, 8);
        let q2 = random_polytope(rng, 2, 6, 8);
        let rec = blaschke_sum(&AnyPolytope::Exact(p.clone()), &AnyPolytope::Exact(q2.clone()), 1e-12)?;
        let mink = AnyPolytope::Exact(p.minkowski_sum(&q2)?.canonical_position());
        let dist = rel_hausdorff(&AnyPolytope::Approx(rec.polytope), &mink)?;
        Ok((
            dist <= tol,
            dist,
            format!("{}+{} vertices", p.vertices().len(), q2.vertices().len()),
        ))
    })
}

fn pow_f(x: f64, e: f64) -> f64 {
    x.max(0.0).powf(e)
}

fn log_concavity(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    run_cases(opts, "log-concavity", samples(opts, 100), |i, rng| match i % 4 {
        0 | 1 => {
            let r = opts.hn.as_ref().map_or(2 + (i / 4) % 3, HnData::rank);
            let x = pick_hn(opts, rng, r);
            let a1 = random_movable_curve(rng, &x);
            let homothetic = i % 4 == 1;
            let a2 = if homothetic {
                a1.scale(&ex(rand_positive(rng, 3, 3)))
            } else {
                random_movable_curve(rng, &x)
            };
            let e = (r as f64 - 1.0) / r as f64;
            let m = |c: &CurveClass| dual_volume(&x, c).map(|d| pow_f(d.m.to_f64(), e));
            let (m1, m2, m12) = (m(&a1)?, m(&a2)?, m(&a1.add(&a2))?);
            let gap = (m12 - m1 - m2) / (m1 + m2);
            let (pass, residual) = if homothetic {
                (gap.abs() <= tol, gap.abs())
            } else {
                (gap >= -tol, (-gap).max(0.0))
            };
            let kind = if homothetic { "M homothetic" } else { "M" };
            Ok((pass, residual, format!("{kind} {} gap={gap:.3e}", hn_label(&x))))
        }
        _ => {
            let homothetic = i % 4 == 3;
            let dim = 3;
            let p = random_polytope(rng, dim, 5, 5);
            let q2 = if homothetic {
                p.scale(&rand_positive(rng, 3, 2))?
            } else {
                random_polytope(rng, dim, 5, 5)
            };
            let rec = blaschke_sum(&AnyPolytope::Exact(p.clone()), &AnyPolytope::Exact(q2.clone()), 1e-12)?;
            let e = (dim as f64 - 1.0) / dim as f64;
            let v = |x: f64| pow_f(x, e);
            let lhs = v(rec.polytope.volume().to_f64());
            let rhs = v(p.volume().to_f64()) + v(q2.volume().to_f64());
            let gap = (lhs - rhs) / rhs;
            let (pass, residual) = if homothetic {
                (gap.abs() <= tol, gap.abs())
            } else {
                (gap >= -tol, (-gap).max(0.0))
            };
            let kind = if homothetic { "volume homothetic" } else { "volume" };
            Ok((pass, residual, format!("{kind} gap={gap:.3e}")))
        }
    })
}

fn dual_volume_suite(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    run_cases(opts, "dual-volume", samples(opts, 100), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 4, HnData::rank);
        let x = pick_hn(opts, rng, r);
        // interior of the complete-intersection cone: s < (r-1)σ_r and s < d - σ_2
        let bound = {
            let a = Rational::from_i64(r as i64 - 1) * x.sigma_at(r).clone();
            let b = x.degree().clone() - x.sigma_at(2);
            a.min(b)
        };
        let s = bound - rand_positive(rng, 3, 4);
        let c1 = if i % 3 == 0 {
            // a perfect (r-1)-st power keeps the positive part exact
            num_traits::pow(rand_positive(rng, 2, 2), r - 1)
        } else {
            rand_positive(rng, 3, 3)
        };
        let alpha = CurveClass::new(ex(c1.clone()), ex(-(s.clone() * c1)));
        let dv = dual_volume(&x, &alpha)?;
        let expected_u = ex(s / Rational::from_i64(r as i64 - 1));
        let body = no_body_curve(&x, &alpha)?;
        let vol = (Number::from_int(factorial(r)) * body.volume()).to_f64();
        let m = dv.m.to_f64();
        let rel = (vol - m).abs() / m;
        let exact_u = dv.u_star == expected_u && !dv.nonnef;
        Ok((
            rel <= tol && exact_u,
            rel,
            format!("{} u*={} M={}", hn_label(&x), dv.u_star, dv.m),
        ))
    })
}

fn cone_body(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "cone-body", samples(opts, 600), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 4, HnData::rank);
        let x = pick_hn(opts, rng, r);
        let k = rng.gen_range(1..=r);
        let eps = q(1, rng.gen_range(2..=9));
        let t = match rng.gen_range(0..4) {
            0 => x.sigma_at(k).clone() - &eps,
            1 => x.sigma_at(k).clone() + &eps,
            _ => x.sigma_at(k).clone(),
        };
        let a = rand_positive(rng, 3, 3);
        let d = DivisorClass::from_a_t(ex(a), ex(t.clone()));
        let from_body = positivity_from_body(&x, &d)?;
        let from_cone = classify_divisor(&d, &x);
        Ok((
            from_body == from_cone,
            if from_body == from_cone { 0.0 } else { 1.0 },
            format!(
                "{} t={} body={} cone={}",
                hn_label(&x),
                crate::scalar::format_rational(&t),
                from_body.as_str(),
                from_cone.as_str()
            ),
        ))
    })
}

fn toric(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    let per = samples(opts, 50);
    let bridges = 10;
    run_cases(opts, "toric", 3 * per + bridges, |i, rng| {
        if i >= 3 * per {
            let j = i - 3 * per;
            let a: &[i64] = if j.is_multiple_of(2) { &[0, 1] } else { &[0, 0] };
            let alpha = CurveClass::new(ex(rand_positive(rng, 3, 3)), ex(rand_positive(rng, 3, 3)));
            let rep = bridge_check(a, &alpha, 1e-10)?;
            return Ok((
                rep.pass,
                rep.volume_residual.max(rep.facet_residual),
                format!("bridge a={a:?} vol={:.6}", rep.bundle_volume),
            ));
        }
        let (name, fan, alpha, beta) = match i / per {
            0 | 1 => {
                let n = 2 + i / per;
                let fan = FanData::projective_space(n);
                let line = |k: Rational| ToricCurveClass::new(vec![ex(k); n + 1]);
                let name = if n == 2 { "P2" } else { "P3" };
                (
                    name,
                    fan,
                    line(rand_positive(rng, 4, 3)),
                    line(rand_positive(rng, 4, 3)),
                )
            }
            _ => {
                let split = splitting_bundle_fan(&[0, 1])?;
                let mut class = || {
                    split.toric_class(&CurveClass::new(
                        ex(rand_positive(rng, 3, 3)),
                        ex(rand_positive(rng, 3, 3)),
                    ))
                };
                let (a, b) = (class(), class());
                ("F1", split.fan.clone(), a, b)
            }
        };
        let rep = toric_blaschke_check(&fan, &alpha, &beta, 1e-10)?;
        Ok((
            rep.relative_distance <= tol,
            rep.relative_distance,
            format!("{name} facet residual {:.2e}", rep.facet_residual),
        ))
    })
}

fn counterexample(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "counterexample-p3", 1, |_, _| {
        let x = HnData::from_sigma(&[q(1, 1), q(1, 1), q(1, 1)])?;
        let d = DivisorClass::chi();
        let alpha = divisor_power(&d, &x);
        let single = no_body_curve(&x, &alpha)?;
        let sum_body = no_body_curve(&x, &alpha.add(&alpha))?.canonical_position();
        let mink = single.minkowski_sum(&single)?.canonical_position();
        let mink_inside = sum_body.contains(&mink)?;
        let rec = blaschke_sum(&single, &single, 1e-12)?;
        let blaschke = AnyPolytope::Approx(rec.polytope);
        let blaschke_inside = sum_body.contains(&blaschke)?;
        let gap = rel_hausdorff(&blaschke, &sum_body)?;
        Ok((
            !mink_inside && blaschke_inside,
            gap,
            format!("minkowski sum contained: {mink_inside}; blaschke sum contained: {blaschke_inside}"),
        ))
    })
}

fn continuity(opts: &VerifyOptions, tol: f64) -> Vec<CaseResult> {
    run_cases(opts, "continuity", samples(opts, 20), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 2, HnData::rank);
        let x = pick_hn(opts, rng, r);
        let c1 = Rational::from_i64(1) + rand_positive(rng, 2, 3);
        let gap = Rational::from_i64(1) + rand_positive(rng, 2, 3);
        let s = x.degree().clone() - x.sigma_at(1) - &gap;
        let alpha = CurveClass::new(ex(c1.clone()), ex(-(s.clone() * c1.clone())));
        let (u, v) = loop {
            let d = (rand_rational(rng, -1, 1, 4), rand_rational(rng, -1, 1, 4));
            if d != (q(0, 1), q(0, 1)) {
                break d;
            }
        };
        // keeps every perturbed class strictly inside the movable cone
        let kappa = (gap / (Rational::from_i64(4) * (Rational::from_i64(1) + s.abs()))).min(Rational::from_i64(1));
        let base = no_body_curve(&x, &alpha)?;
        let diam = base.diameter().to_f64();
        let mut dists = Vec::with_capacity(4);
        for k in 1..=4 {
            let step = q(1, 10i64.pow(k)) * &kappa * &c1;
            let delta = CurveClass::new(ex(u.clone() * &step), ex(v.clone() * &step));
            let moved = no_body_curve(&x, &alpha.add(&delta))?;
            dists.push(moved.hausdorff_distance(&base)?.to_f64() / diam);
        }
        let monotone = dists.windows(2).all(|w| w[1] < w[0]);
        let last = *dists.last().expect("four radii");
        let trail: Vec<String> = dists.iter().map(|d| format!("{d:.2e}")).collect();
        Ok((
            monotone && last < tol,
            last,
            format!("{} d_H/diam=[{}]", hn_label(&x), trail.join(", ")),
        ))
    })
}

fn gluing(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "gluing", samples(opts, 50), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 4, HnData::rank);
        let x = pick_hn(opts, rng, r);
        let t = x.sigma_at(r).clone() - rand_rational(rng, 0, 2, 3);
        let d = DivisorClass::from_a_t(ex(rand_positive(rng, 2, 3)), ex(t));
        let dec = SliceDecomposition::new(&x, &d)?;
        let same = dec.glue()?.same_as(&dec.body)?;
        Ok((same, if same { 0.0 } else { 1.0 }, hn_label(&x)))
    })
}

fn omega_invariance(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "omega-invariance", samples(opts, 50), |i, rng| {
        let r = opts.hn.as_ref().map_or(2 + i % 3, HnData::rank);
        let x = pick_hn(opts, rng, r);
        let t = x.sigma_at(1).clone() - rand_rational(rng, 0, 4, 3);
        let d = DivisorClass::from_a_t(ex(rand_positive(rng, 2, 2)), ex(t));
        let mut perm: Vec<usize> = (1..=r).collect();
        for k in (1..r).rev() {
            let j = rng.gen_range(0..=k);
            perm.swap(k, j);
        }
        let omega = FlagPermutation::new(perm.clone())?;
        let v0 = no_body_divisor(&x, &d, None)?.volume();
        let v1 = no_body_divisor(&x, &d, Some(&omega))?.volume();
        let residual = (v0.clone() - v1.clone()).to_f64().abs();
        Ok((v0 == v1, residual, format!("{} omega={perm:?}", hn_label(&x))))
    })
}

/// Ratio `d_H(P, P') / ε` for a centered perturbation of a polytope measure.
fn stability(opts: &VerifyOptions) -> Vec<CaseResult> {
    run_cases(opts, "stability", samples(opts, 20), |_, rng| {
        let p = random_polytope(rng, 3, 4, 4);
        let mu = AreaMeasure::of_polytope(&p)?;
        let base = mu.reconstruct(1e-10)?;
        let eps = 1e-4;
        // Scaling every mass by (1 + ε) keeps the measure centered.
        let bumped = mu.scale_masses(&Number::Approx(Real::from_f64(1.0 + eps)))?;
        let moved = bumped.reconstruct(1e-10)?;
        let d = moved.polytope.hausdorff_distance(&base.polytope)?.to_f64();
        let ratio = d / eps;
        Ok((ratio.is_finite(), ratio, format!("d_H={d:.3e} eps={eps:e}")))
    })
}
