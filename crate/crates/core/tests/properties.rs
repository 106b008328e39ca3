use nok_core::area_measure::AreaMeasure;
use nok_core::bundle::{
    classify_divisor, divisor_power, dual_volume, no_body_divisor, CurveClass, DivisorClass, DivisorPositivity,
    FlagPermutation, HnData,
};
use nok_core::{Number, Polytope, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn ex(v: Rational) -> Number {
    Number::Exact(v)
}

fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), dim + 1..=max)
}

fn full_hull(pts: &[Vec<i64>]) -> Option<Polytope<Rational>> {
    let pts: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&c| q(c, 1)).collect()).collect();
    Polytope::hull_from_vertices(&pts)
        .ok()
        .filter(|p| p.is_full_dimensional())
}

fn hn_strategy() -> impl Strategy<Value = HnData> {
    prop::collection::vec(-12i64..=12, 2..=5).prop_map(|raw| {
        let sigma: Vec<Rational> = raw.iter().map(|&v| q(v, 3)).collect();
        HnData::from_sigma(&sigma).expect("rank at least two")
    })
}

const RANKS: [DivisorPositivity; 6] = [
    DivisorPositivity::Ample,
    DivisorPositivity::Nef,
    DivisorPositivity::Movable,
    DivisorPositivity::Big,
    DivisorPositivity::PseudoeffectiveBoundary,
    DivisorPositivity::None,
];

fn strength(p: DivisorPositivity) -> usize {
    RANKS.iter().position(|&k| k == p).expect("listed")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_contains_its_inputs_and_is_idempotent(pts in points(3, 9)) {
        let Some(p) = full_hull(&pts) else { return Ok(()) };
        for v in &pts {
            let v: Vec<Rational> = v.iter().map(|&c| q(c, 1)).collect();
            prop_assert!(p.contains_point(&v));
        }
        let again = Polytope::hull_from_vertices(p.vertices()).unwrap();
        prop_assert_eq!(again.volume(), p.volume());
        prop_assert_eq!(again.vertices().len(), p.vertices().len());
    }

    #[test]
    fn json_round_trip_preserves_exact_polytopes(pts in points(3, 8)) {
        let Some(p) = full_hull(&pts) else { return Ok(()) };
        let back = Polytope::<Rational>::from_json(&p.to_json()).unwrap();
        prop_assert!(back.same_as(&p));
    }

    #[test]
    fn brunn_minkowski(a in points(2, 7), b in points(2, 7)) {
        let (Some(p), Some(r)) = (full_hull(&a), full_hull(&b)) else { return Ok(()) };
        let s = p.minkowski_sum(&r).unwrap();
        let root = |x: &Rational| num_traits::ToPrimitive::to_f64(x).unwrap().sqrt();
        prop_assert!(root(&s.volume()) >= root(&p.volume()) + root(&r.volume()) - 1e-12);
    }

    #[test]
    fn planar_measures_add_under_minkowski_sum(a in points(2, 7), b in points(2, 7)) {
        let (Some(p), Some(r)) = (full_hull(&a), full_hull(&b)) else { return Ok(()) };
        let sum = AreaMeasure::of_polytope(&p.minkowski_sum(&r).unwrap()).unwrap();
        let added = AreaMeasure::of_polytope(&p).unwrap().add(&AreaMeasure::of_polytope(&r).unwrap()).unwrap();
        prop_assert!(added.relative_residual(&p.minkowski_sum(&r).unwrap()).unwrap() < 1e-12);
        prop_assert_eq!(sum.atoms().len(), added.atoms().len());
    }

    #[test]
    fn polytope_measures_are_centred(pts in points(3, 9)) {
        let Some(p) = full_hull(&pts) else { return Ok(()) };
        let mu = AreaMeasure::of_polytope(&p).unwrap();
        let scale = mu.total_mass().to_f64();
        for c in mu.barycenter_sum() {
            prop_assert!(c.to_f64().abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn nef_volume_is_linear_in_t(x in hn_strategy(), slack in 0i64..20) {
        let r = x.rank();
        let t = x.sigma_at(r).clone() - q(slack, 4);
        let d = DivisorClass::from_a_t(Number::from_int(1), ex(t.clone()));
        let body = no_body_divisor(&x, &d, None).unwrap();
        let fact: i64 = (1..=r as i64).product();
        let lhs = Number::from_int(fact) * body.volume();
        let rhs = x.degree().clone() - q(r as i64, 1) * t;
        prop_assert_eq!(lhs, ex(rhs));
    }

    #[test]
    fn body_volume_is_homogeneous(x in hn_strategy(), num in 1i64..6, scale in 1i64..4) {
        let t = x.sigma_at(1).clone() - q(num, 2);
        let d = DivisorClass::from_a_t(Number::from_int(1), ex(t));
        let v1 = no_body_divisor(&x, &d, None).unwrap().volume();
        let v2 = no_body_divisor(&x, &d.scale(&Number::from_int(scale)), None).unwrap().volume();
        prop_assert_eq!(v2, Number::from_int(scale).powi(x.rank() as u32) * v1);
    }

    #[test]
    fn volume_does_not_depend_on_the_flag(x in hn_strategy(), num in 0i64..8, rot in 0usize..5) {
        let r = x.rank();
        let t = x.sigma_at(1).clone() - q(num, 3);
        let d = DivisorClass::from_a_t(Number::from_int(2), ex(t));
        let mut perm: Vec<usize> = (1..=r).collect();
        perm.rotate_left(rot % r);
        perm.swap(0, r - 1);
        let omega = FlagPermutation::new(perm).unwrap();
        let a = no_body_divisor(&x, &d, None).unwrap().volume();
        let b = no_body_divisor(&x, &d, Some(&omega)).unwrap().volume();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn divisor_labels_weaken_as_t_grows(x in hn_strategy(), lo in -30i64..30, step in 1i64..10) {
        let d = |t: i64| DivisorClass::from_a_t(Number::from_int(1), ex(q(t, 6)));
        let a = strength(classify_divisor(&d(lo), &x));
        let b = strength(classify_divisor(&d(lo + step), &x));
        prop_assert!(a <= b);
    }

    #[test]
    fn dual_volume_is_homogeneous(x in hn_strategy(), slack in 1i64..10, c in 1i64..5) {
        let r = x.rank();
        let t = x.sigma_at(r).clone() - q(slack, 3);
        let alpha = divisor_power(&DivisorClass::from_a_t(Number::from_int(1), ex(t)), &x);
        let scaled = alpha.scale(&Number::from_int(c));
        let m1 = dual_volume(&x, &alpha).unwrap().m.to_f64();
        let m2 = dual_volume(&x, &scaled).unwrap().m.to_f64();
        let expect = m1 * (c as f64).powf(r as f64 / (r as f64 - 1.0));
        prop_assert!((m2 - expect).abs() <= 1e-9 * expect);
    }

    #[test]
    fn movable_curves_sum_to_movable_curves(x in hn_strategy(), s1 in 1i64..10, s2 in 1i64..10) {
        let curve = |slack: i64| {
            let s = x.degree().clone() - x.sigma_at(1) - q(slack, 2);
            CurveClass::new(Number::from_int(1), ex(-s))
        };
        let (a, b) = (curve(s1), curve(s2));
        prop_assert!(dual_volume(&x, &a.add(&b)).is_ok());
    }
}
