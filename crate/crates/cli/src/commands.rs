use std::fs;
use std::io::Write;
use std::path::Path;

use nok_core::area_measure::{blaschke_sum, AreaMeasure, AreaMeasureJson, Reconstruction};
use nok_core::bundle::io::{curve_body, divisor_body, BundleInput};
use nok_core::bundle::{
    blaschke_closed_form, classify_curve, classify_divisor, cones, dual_volume, CurveClass, DivisorClass, HnData,
    SliceDecomposition,
};
use nok_core::par::Exec;
use nok_core::polytope::PolytopeJson;
use nok_core::toric::{toric_blaschke_check, toric_curve_polytope, ToricBlaschkeReport, ToricInput};
use nok_core::verify::{run_suite, VerifyOptions, SUITES};
use nok_core::{AnyPolytope, Error, Number, Result};
use serde::Serialize;
use serde_json::Value;

use crate::{Command, Format, Mode, NumericArgs, OutputArgs};

pub enum Outcome {
    Done,
    /// Verification ran but some cases failed.
    Failed(String),
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, path: &Path) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A bundle file, or a bare list of HN quotients.
fn read_bundle(path: &Path) -> Result<BundleInput> {
    let v = read_json(path)?;
    let v = if v.is_array() {
        serde_json::json!({ "hn": v })
    } else {
        v
    };
    from_value(v, path)
}

fn parse_pair(s: &str, what: &str) -> Result<(Number, Number)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "{what} must be two comma-separated numbers, got '{s}'"
        )));
    }
    Ok((Number::parse(parts[0])?, Number::parse(parts[1])?))
}

fn parse_omega(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("omega entries must be positive integers, got '{s}'")))
        })
        .collect()
}

fn in_mode(n: Number, mode: Mode) -> Number {
    match mode {
        Mode::Exact => n,
        Mode::Approx => Number::Approx(n.to_real()),
    }
}

fn polytope_in_mode(p: AnyPolytope, mode: Mode) -> Result<AnyPolytope> {
    match (mode, p) {
        (Mode::Approx, AnyPolytope::Exact(p)) => Ok(AnyPolytope::Approx(p.convert()?)),
        (_, p) => Ok(p),
    }
}

fn divisor_in_mode(d: DivisorClass, mode: Mode) -> DivisorClass {
    DivisorClass::new(in_mode(d.x, mode), in_mode(d.y, mode))
}

fn curve_in_mode(c: CurveClass, mode: Mode) -> CurveClass {
    CurveClass::new(in_mode(c.c1, mode), in_mode(c.c2, mode))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Parse(format!("--tol must be positive, got {tol}")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit_json<T: Serialize>(output: &OutputArgs, value: &T) -> Result<()> {
    match output.format {
        Format::Json => emit(output.out.as_deref(), &json_text(value)?),
        other => Err(unsupported(other)),
    }
}

/// JSON, or OFF of `body` when requested.
fn emit_body<T: Serialize>(output: &OutputArgs, body: &AnyPolytope, json: &T) -> Result<()> {
    match output.format {
        Format::Json => emit(output.out.as_deref(), &json_text(json)?),
        Format::Off if body.dim() > 3 => Err(Error::Parse(format!(
            "--format off needs a body of dimension at most 3, this one has {}",
            body.dim()
        ))),
        Format::Off => emit(output.out.as_deref(), &body.to_off()?),
        Format::Csv => Err(unsupported(Format::Csv)),
    }
}

fn unsupported(f: Format) -> Error {
    let name = match f {
        Format::Json => "json",
        Format::Off => "off",
        Format::Csv => "csv",
    };
    Error::Parse(format!("--format {name} is not available for this command"))
}

#[derive(Serialize)]
struct SolvedBody {
    #[serde(flatten)]
    body: PolytopeJson,
    solver: SolverInfo,
}

#[derive(Serialize)]
struct SolverInfo {
    support: Vec<Number>,
    residual: f64,
    iterations: usize,
    restarts: usize,
}

fn solved(rec: Reconstruction) -> (AnyPolytope, SolvedBody) {
    let body = AnyPolytope::Approx(rec.polytope);
    let json = SolvedBody {
        body: body.to_json(),
        solver: SolverInfo {
            support: rec.support.into_iter().map(Number::Approx).collect(),
            residual: rec.residual,
            iterations: rec.iterations,
            restarts: rec.restarts,
        },
    };
    (body, json)
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::BodyDiv {
            hn,
            divisor,
            omega,
            output,
            numeric,
        } => body_div(&hn, divisor, omega, &output, &numeric)?,
        Command::BodyCurve {
            hn,
            curve,
            output,
            numeric,
        } => {
            check_tol(numeric.tol)?;
            let mut input = read_bundle(&hn)?;
            if let Some(c) = curve {
                let (c1, c2) = parse_pair(&c, "--curve")?;
                input.curve = Some(CurveClass::new(c1, c2));
            }
            input.curve = input.curve.map(|c| curve_in_mode(c, numeric.mode));
            let (body, json) = curve_body(&input)?;
            emit_body(&output, &body, &json)?;
        }
        Command::Blaschke {
            left,
            right,
            output,
            numeric,
        } => {
            check_tol(numeric.tol)?;
            let load = |p: &Path| -> Result<AnyPolytope> {
                let json: PolytopeJson = from_value(read_json(p)?, p)?;
                polytope_in_mode(AnyPolytope::from_json(&json)?, numeric.mode)
            };
            let rec = blaschke_sum(&load(&left)?, &load(&right)?, numeric.tol)?;
            let (body, json) = solved(rec);
            emit_body(&output, &body, &json)?;
        }
        Command::BlaschkeClosed {
            hn,
            a,
            t1,
            t2,
            output,
            numeric,
        } => {
            let x = read_bundle(&hn)?.hn_data()?;
            let num = |s: &str| Number::parse(s).map(|n| in_mode(n, numeric.mode));
            let (closed, body) = blaschke_closed_form(&x, &num(&a)?, &num(&t1)?, &num(&t2)?)?;
            #[derive(Serialize)]
            struct ClosedOut {
                #[serde(flatten)]
                body: PolytopeJson,
                closed_form: nok_core::bundle::ClosedFormBlaschke,
            }
            let json = ClosedOut {
                body: body.to_json(),
                closed_form: closed,
            };
            emit_body(&output, &body, &json)?;
        }
        Command::MinkowskiSolve {
            measure,
            output,
            numeric,
        } => {
            check_tol(numeric.tol)?;
            let json: AreaMeasureJson = from_value(read_json(&measure)?, &measure)?;
            let rec = AreaMeasure::from_json(&json)?.reconstruct(numeric.tol)?;
            let (body, json) = solved(rec);
            emit_body(&output, &body, &json)?;
        }
        Command::Cones { hn, output } => {
            let x = read_bundle(&hn)?.hn_data()?;
            emit_json(&output, &cones(&x))?;
        }
        Command::Classify {
            hn,
            divisor,
            curve,
            output,
        } => classify(&hn, divisor, curve, &output)?,
        Command::DualVolume {
            hn,
            curve,
            output,
            numeric,
        } => {
            let input = read_bundle(&hn)?;
            let x = input.hn_data()?;
            let alpha = match curve {
                Some(c) => {
                    let (c1, c2) = parse_pair(&c, "--curve")?;
                    CurveClass::new(c1, c2)
                }
                None => input.require_curve()?.clone(),
            };
            let dv = dual_volume(&x, &curve_in_mode(alpha, numeric.mode))?;
            emit_json(&output, &dv)?;
        }
        Command::ToricBody { toric, output, numeric } => {
            check_tol(numeric.tol)?;
            let input: ToricInput = from_value(read_json(&toric)?, &toric)?;
            let (fan, alpha) = input.parse()?;
            let alpha = toric_class_in_mode(alpha, numeric.mode);
            let rec = toric_curve_polytope(&fan, &alpha, numeric.tol)?;
            let (body, json) = solved(rec);
            emit_body(&output, &body, &json)?;
        }
        Command::ToricBlaschke {
            left,
            right,
            output,
            numeric,
        } => {
            check_tol(numeric.tol)?;
            let a: ToricInput = from_value(read_json(&left)?, &left)?;
            let b: ToricInput = from_value(read_json(&right)?, &right)?;
            if a.rays != b.rays {
                return Err(Error::InvalidInput("both toric inputs must list the same rays".into()));
            }
            let (fan, alpha) = a.parse()?;
            let (_, beta) = b.parse()?;
            let alpha = toric_class_in_mode(alpha, numeric.mode);
            let beta = toric_class_in_mode(beta, numeric.mode);
            let p = toric_curve_polytope(&fan, &alpha, numeric.tol)?;
            let q = toric_curve_polytope(&fan, &beta, numeric.tol)?;
            let rec = blaschke_sum(
                &AnyPolytope::Approx(p.polytope),
                &AnyPolytope::Approx(q.polytope),
                numeric.tol,
            )?;
            let check: ToricBlaschkeReport = toric_blaschke_check(&fan, &alpha, &beta, numeric.tol)?;
            let (body, solved) = solved(rec);
            #[derive(Serialize)]
            struct ToricSum {
                #[serde(flatten)]
                body: SolvedBody,
                check: ToricBlaschkeReport,
            }
            emit_body(&output, &body, &ToricSum { body: solved, check })?;
        }
        Command::Verify {
            suite,
            hn,
            samples,
            seed,
            tol,
            sequential,
            out,
        } => return verify(&suite, hn.as_deref(), samples, seed, tol, sequential, out.as_deref()),
    }
    Ok(Outcome::Done)
}

fn toric_class_in_mode(c: nok_core::toric::ToricCurveClass, mode: Mode) -> nok_core::toric::ToricCurveClass {
    nok_core::toric::ToricCurveClass::new(c.intersections.into_iter().map(|n| in_mode(n, mode)).collect())
}

fn body_div(
    hn: &Path,
    divisor: Option<String>,
    omega: Option<String>,
    output: &OutputArgs,
    numeric: &NumericArgs,
) -> Result<()> {
    check_tol(numeric.tol)?;
    let mut input = read_bundle(hn)?;
    if let Some(d) = divisor {
        let (x, y) = parse_pair(&d, "--divisor")?;
        input.divisor = Some(DivisorClass::new(x, y));
    }
    if let Some(w) = omega {
        input.omega = Some(parse_omega(&w)?);
    }
    input.divisor = input.divisor.map(|d| divisor_in_mode(d, numeric.mode));
    let (body, json) = divisor_body(&input)?;
    if output.format == Format::Csv {
        let x = input.hn_data()?;
        let dec = SliceDecomposition::new(&x, input.require_divisor()?)?;
        return emit(output.out.as_deref(), &dec.to_csv());
    }
    emit_body(output, &body, &json)
}

fn classify(hn: &Path, divisor: Option<String>, curve: Option<String>, output: &OutputArgs) -> Result<()> {
    let input = read_bundle(hn)?;
    let x = input.hn_data()?;
    let divisor = match divisor {
        Some(d) => parse_pair(&d, "--divisor").map(|(a, b)| Some(DivisorClass::new(a, b)))?,
        None => input.divisor.clone(),
    };
    let curve = match curve {
        Some(c) => parse_pair(&c, "--curve").map(|(a, b)| Some(CurveClass::new(a, b)))?,
        None => input.curve.clone(),
    };
    if divisor.is_none() && curve.is_none() {
        return Err(Error::Parse("classify needs --divisor or --curve".into()));
    }
    let mut labels = serde_json::Map::new();
    if let Some(d) = divisor {
        labels.insert("divisor".into(), classify_divisor(&d, &x).as_str().into());
    }
    if let Some(c) = curve {
        labels.insert("curve".into(), classify_curve(&c, &x).as_str().into());
    }
    emit_json(output, &labels)
}

fn verify(
    suite: &str,
    hn: Option<&Path>,
    samples: Option<usize>,
    seed: u64,
    tol: Option<f64>,
    sequential: bool,
    out: Option<&Path>,
) -> Result<Outcome> {
    if let Some(t) = tol {
        check_tol(t)?;
    }
    let hn: Option<HnData> = hn.map(|p| read_bundle(p)?.hn_data()).transpose()?;
    let opts = VerifyOptions {
        seed,
        samples,
        tol,
        exec: if sequential { Exec::Sequential } else { Exec::Parallel },
        hn,
    };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut text = String::new();
    let mut failed = Vec::new();
    for name in names {
        let rep = run_suite(name, &opts)?;
        text.push_str(&rep.to_table());
        if !rep.pass() {
            failed.push(format!(
                "{}: {} of {} cases failed",
                name,
                rep.cases.len() - rep.passed(),
                rep.cases.len()
            ));
        }
    }
    emit(out, &text)?;
    if failed.is_empty() {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Failed(failed.join("; ")))
    }
}
