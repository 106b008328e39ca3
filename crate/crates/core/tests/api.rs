use nok_core::area_measure::{blaschke_sum, AreaMeasure, AreaMeasureJson};
use nok_core::bundle::io::{curve_body, divisor_body, BodyOutput, BundleInput};
use nok_core::bundle::{no_body_curve, CurveClass, HnData, SliceDecomposition};
use nok_core::par::Exec;
use nok_core::toric::{bridge_check, splitting_bundle_fan, toric_curve_polytope, FanData, ToricCurveClass};
use nok_core::verify::{run_suite, VerifyOptions};
use nok_core::{AnyPolytope, Number, Polytope, Rational};

fn n(v: i64) -> Number {
    Number::from_int(v)
}

#[test]
fn bundle_json_in_body_json_out() {
    let input: BundleInput =
        serde_json::from_str(r#"{"hn":[{"rank":2,"slope":"1"},{"rank":1,"slope":"3"}],"divisor":{"x":"2","y":"-2"}}"#)
            .unwrap();
    let (body, out) = divisor_body(&input).unwrap();
    let text = serde_json::to_string(&out).unwrap();
    let back: BodyOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(back, out);
    // t = 1 = σ_r, so the divisor is nef and r!vol = x^r (d - r t) = 8 (5 - 3)
    assert_eq!(out.metadata.classification, "nef");
    assert_eq!(out.metadata.volume, n(16));
    let parsed = AnyPolytope::from_json(&back.body).unwrap();
    assert!(parsed.same_as(&body).unwrap());
}

#[test]
fn curve_body_volume_matches_dual_volume() {
    let input: BundleInput =
        serde_json::from_str(r#"{"hn":[{"rank":3,"slope":"1"}],"curve":{"c1":"4","c2":"-4"}}"#).unwrap();
    let (_, out) = curve_body(&input).unwrap();
    assert_eq!(out.metadata.m.as_ref(), Some(&out.metadata.volume));
}

#[test]
fn gluing_slices_restores_the_body() {
    let x = HnData::from_sigma(&[
        Rational::from_integer(0.into()),
        Rational::from_integer(2.into()),
        Rational::from_integer(3.into()),
    ])
    .unwrap();
    let d = nok_core::bundle::DivisorClass::new(n(1), n(-1));
    let dec = SliceDecomposition::new(&x, &d).unwrap();
    assert!(dec.glue().unwrap().same_as(&dec.body).unwrap());
    assert!(dec.to_csv().starts_with("slice_index,nu1_lo,nu1_hi,volume\n"));
}

#[test]
fn measure_json_round_trip_and_reconstruction() {
    let json: AreaMeasureJson = serde_json::from_str(
        r#"{"dim":2,"atoms":[{"dir":["0","-1"],"mass":"1"},{"dir":["-1","0"],"mass":"1"},{"dir":["1","1"],"mass":"1.4142135623730950488016887242096980786"}]}"#,
    )
    .unwrap();
    let mu = AreaMeasure::from_json(&json).unwrap();
    let rec = mu.reconstruct(1e-10).unwrap();
    let tri = Polytope::<Rational>::simplex(2, Rational::from_integer(1.into())).unwrap();
    let d = AnyPolytope::Approx(rec.polytope)
        .hausdorff_distance(&AnyPolytope::Exact(tri))
        .unwrap();
    assert!(d.to_f64() < 1e-9);
}

#[test]
fn curve_polytopes_on_a_hirzebruch_surface() {
    let f1 = splitting_bundle_fan(&[0, 1]).unwrap();
    let alpha = CurveClass::new(n(2), n(1));
    let rep = bridge_check(&[0, 1], &alpha, 1e-10).unwrap();
    assert!(rep.pass, "{rep:?}");
    let toric = toric_curve_polytope(&f1.fan, &f1.toric_class(&alpha), 1e-10).unwrap();
    let bundle = no_body_curve(&f1.hn, &alpha).unwrap();
    let rel = (toric.polytope.volume().to_f64() - bundle.volume().to_f64()).abs() / bundle.volume().to_f64();
    assert!(rel < 1e-9);
}

#[test]
fn blaschke_sum_of_a_simplex_with_itself_scales_it() {
    let fan = FanData::projective_space(3);
    let one = ToricCurveClass::new(vec![n(1); 4]);
    let p = toric_curve_polytope(&fan, &one, 1e-10).unwrap();
    let body = AnyPolytope::Approx(p.polytope.clone());
    let sum = blaschke_sum(&body, &body, 1e-10).unwrap();
    // areas double, so lengths grow by sqrt(2) in dimension three
    let ratio = sum.polytope.diameter().to_f64() / p.polytope.diameter().to_f64();
    assert!((ratio - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn parallel_and_sequential_suites_agree() {
    let base = VerifyOptions {
        samples: Some(6),
        seed: 11,
        ..VerifyOptions::default()
    };
    for suite in ["volume-ring", "blaschke-2d", "mthm"] {
        let par = run_suite(
            suite,
            &VerifyOptions {
                exec: Exec::Parallel,
                ..base.clone()
            },
        )
        .unwrap();
        let seq = run_suite(
            suite,
            &VerifyOptions {
                exec: Exec::Sequential,
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(par.to_table(), seq.to_table());
    }
}
