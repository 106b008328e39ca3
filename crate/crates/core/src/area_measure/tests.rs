use super::*;
use crate::scalar::Rational;

fn n(v: i64) -> Number {
    Number::from_int(v)
}

fn exact_prism() -> Polytope<Rational> {
    let raw: [[i64; 3]; 6] = [[0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0], [1, 1, 0], [1, 0, 1]];
    let pts: Vec<Vec<Rational>> = raw
        .iter()
        .map(|p| p.iter().map(|&x| Rational::from_i64(x)).collect())
        .collect();
    Polytope::hull_from_vertices(&pts).unwrap()
}

fn mass_at(mu: &AreaMeasure, dir: &[f64]) -> f64 {
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    mu.atoms()
        .iter()
        .find(|a| {
            a.direction_f64()
                .iter()
                .zip(dir)
                .all(|(x, y)| (x - y / norm).abs() < 1e-12)
        })
        .map(|a| a.mass.to_f64())
        .unwrap_or(0.0)
}

#[test]
fn square_measure() {
    let sq = Polytope::cube(2, Rational::from_i64(1)).unwrap();
    let mu = AreaMeasure::of_polytope(&sq).unwrap();
    assert_eq!(mu.atoms().len(), 4);
    for a in mu.atoms() {
        assert_eq!(a.mass, n(1));
    }
}

#[test]
fn prism_measure() {
    let mu = AreaMeasure::of_polytope(&exact_prism()).unwrap();
    assert_eq!(mu.atoms().len(), 5);
    assert_eq!(mass_at(&mu, &[1.0, 0.0, 0.0]), 0.5);
    assert_eq!(mass_at(&mu, &[-1.0, 0.0, 0.0]), 0.5);
    assert_eq!(mass_at(&mu, &[0.0, -1.0, 0.0]), 1.0);
    assert_eq!(mass_at(&mu, &[0.0, 0.0, -1.0]), 1.0);
    assert!((mass_at(&mu, &[0.0, 1.0, 1.0]) - 2f64.sqrt()).abs() < 1e-15);
    assert!(mu.check_minkowski_conditions(1e-12).passes());
}

#[test]
fn cube_measure_masses() {
    for dim in 2..=4 {
        let c = Polytope::cube(dim, Rational::from_i64(3)).unwrap();
        let mu = AreaMeasure::of_polytope(&c).unwrap();
        assert_eq!(mu.atoms().len(), 2 * dim);
        for a in mu.atoms() {
            assert_eq!(a.mass, n(3i64.pow(dim as u32 - 1)));
        }
    }
}

#[test]
fn degenerate_body_has_no_measure() {
    let seg = Polytope::hull_from_vertices(&[vec![Rational::from_i64(0); 2], vec![Rational::from_i64(1); 2]]).unwrap();
    assert!(matches!(
        AreaMeasure::of_polytope(&seg),
        Err(Error::DegenerateBody { .. })
    ));
}

#[test]
fn segment_measure_does_not_span() {
    let mu = AreaMeasure::new(
        2,
        vec![
            Atom::new(&[n(1), n(0)], n(1)).unwrap(),
            Atom::new(&[n(-1), n(0)], n(1)).unwrap(),
        ],
    )
    .unwrap();
    let rep = mu.check_minkowski_conditions(1e-9);
    assert!(rep.centered);
    assert!(!rep.spanning);
    assert!(matches!(mu.reconstruct(1e-9), Err(Error::NotSpanning(_))));
}

fn triangle_measure() -> AreaMeasure {
    let s2 = Number::Approx(Real::from_f64(2.0).sqrt());
    AreaMeasure::new(
        2,
        vec![
            Atom::new(&[n(1), n(0)], n(1)).unwrap(),
            Atom::new(&[n(0), n(1)], n(1)).unwrap(),
            Atom::new(&[n(-1), n(-1)], s2).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn triangle_from_three_atoms() {
    let mu = triangle_measure();
    assert!(mu.check_minkowski_conditions(1e-12).passes());
    let rec = mu.reconstruct(1e-9).unwrap();
    assert_eq!(rec.polytope.vertices().len(), 3);
    assert!((rec.polytope.volume().to_f64() - 0.5).abs() < 1e-12);
}

#[test]
fn uncentered_measure_is_rejected() {
    let mu = AreaMeasure::new(
        2,
        vec![
            Atom::new(&[n(1), n(0)], n(1)).unwrap(),
            Atom::new(&[n(0), n(1)], n(1)).unwrap(),
            Atom::new(&[n(-1), n(-1)], n(3)).unwrap(),
        ],
    )
    .unwrap();
    assert!(matches!(mu.reconstruct(1e-9), Err(Error::NotCentered { .. })));
}

#[test]
fn adding_measures() {
    let sq = AreaMeasure::of_polytope(&Polytope::cube(2, Rational::from_i64(1)).unwrap()).unwrap();
    let sum = sq.add(&AreaMeasure::empty(2)).unwrap();
    assert_eq!(sum.atoms().len(), 4);
    let doubled = sq.add(&sq).unwrap();
    assert_eq!(doubled.atoms().len(), 4);
    assert!(doubled.atoms().iter().all(|a| a.mass == n(2)));
    let t1 = triangle_measure();
    let t2 = AreaMeasure::new(
        2,
        vec![
            Atom::new(&[n(-1), n(0)], n(1)).unwrap(),
            Atom::new(&[n(0), n(-1)], n(1)).unwrap(),
            Atom::new(&[n(1), n(1)], Number::Approx(Real::from_f64(2.0).sqrt())).unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(t1.add(&t2).unwrap().atoms().len(), 6);
    assert!(matches!(
        sq.add(&AreaMeasure::empty(3)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn square_round_trip() {
    let sq = Polytope::cube(2, Rational::from_i64(1)).unwrap();
    let mu = AreaMeasure::of_polytope(&sq).unwrap();
    let rec = mu.reconstruct(1e-9).unwrap();
    let back: Polytope<Real> = sq.convert().unwrap();
    assert!(rec.polytope.hausdorff_distance(&back).unwrap().to_f64() < 1e-12);
}

#[test]
fn doubled_cube_measure_gives_larger_cube() {
    for dim in 2..=4 {
        let c = Polytope::cube(dim, Rational::from_i64(1)).unwrap();
        let mu = AreaMeasure::of_polytope(&c).unwrap();
        let rec = mu.add(&mu).unwrap().reconstruct(1e-9).unwrap();
        let side = 2f64.powf(1.0 / (dim as f64 - 1.0));
        for (a, h) in mu.atoms().iter().zip(&rec.support) {
            let expected = if a.direction_f64().iter().any(|&x| x > 0.5) {
                side
            } else {
                0.0
            };
            assert!((h.to_f64() - expected).abs() < 1e-9, "dim {dim}: {h} vs {expected}");
        }
    }
}

#[test]
fn prism_round_trip() {
    let p = exact_prism();
    let mu = AreaMeasure::of_polytope(&p).unwrap();
    let rec = mu.reconstruct(1e-9).unwrap();
    assert!(rec.residual <= 1e-9);
    let back: Polytope<Real> = p.convert().unwrap();
    assert!(rec.polytope.hausdorff_distance(&back).unwrap().to_f64() < 1e-9);
}

#[test]
fn json_round_trip() {
    let mu = AreaMeasure::of_polytope(&exact_prism()).unwrap();
    let text = serde_json::to_string(&mu.to_json()).unwrap();
    let back = AreaMeasure::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.atoms().len(), 5);
    assert!(back.check_minkowski_conditions(1e-12).passes());
}
