use super::*;
use crate::scalar::{Rational, Real, RealScalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pts(raw: &[&[i64]]) -> Vec<Vec<Rational>> {
    raw.iter()
        .map(|p| p.iter().map(|&x| Rational::from_i64(x)).collect())
        .collect()
}

fn prism() -> Polytope<Rational> {
    Polytope::hull_from_vertices(&pts(&[
        &[0, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 0, 0],
        &[1, 1, 0],
        &[1, 0, 1],
    ]))
    .unwrap()
}

fn facet_with_normal(p: &Polytope<Rational>, n: &[i64]) -> usize {
    let target: Vec<Rational> = n.iter().map(|&x| Rational::from_i64(x)).collect();
    p.facets().iter().position(|f| f.halfspace.normal == target).unwrap()
}

#[test]
fn triangle_has_three_facets() {
    let p = Polytope::hull_from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
    assert_eq!(p.facets().len(), 3);
    assert_eq!(p.volume(), q(1, 2));
}

/// Facets by brute force: every affinely independent n-subset whose
/// hyperplane leaves all points on one side.
fn brute_force_facets(points: &[Vec<Rational>]) -> usize {
    let n = points[0].len();
    let m = points.len();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let dirs: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| crate::linalg::sub(&points[i], &points[idx[0]]))
            .collect();
        let ns = crate::linalg::nullspace(&dirs, n);
        if ns.len() == 1 {
            let w = &ns[0];
            let off = crate::linalg::dot(w, &points[idx[0]]);
            let vals: Vec<Rational> = points.iter().map(|p| crate::linalg::dot(w, p) - &off).collect();
            let pos = vals.iter().any(|v| *v > Rational::from_i64(0));
            let neg = vals.iter().any(|v| *v < Rational::from_i64(0));
            if !(pos && neg) {
                let on: Vec<usize> = (0..m).filter(|&i| vals[i] == Rational::from_i64(0)).collect();
                if !found.contains(&on) {
                    found.push(on);
                }
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return found.len();
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn five_point_polytope_matches_brute_force() {
    let raw = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
    let p = Polytope::hull_from_vertices(&raw).unwrap();
    assert_eq!(p.vertices().len(), 5);
    assert_eq!(p.facets().len(), brute_force_facets(&raw));
    assert_eq!(p.facets().len(), 6);
}

#[test]
fn collinear_points_give_a_segment() {
    let p = Polytope::hull_from_vertices(&pts(&[&[0, 0], &[1, 1]])).unwrap();
    assert_eq!(p.affine_dim(), Some(1));
    assert_eq!(p.volume(), Rational::from_i64(0));
    let p = Polytope::hull_from_vertices(&pts(&[&[0, 0], &[2, 2], &[1, 1]])).unwrap();
    assert_eq!(p.vertices().len(), 2);
}

#[test]
fn rejects_bad_input() {
    assert_eq!(
        Polytope::<Rational>::hull_from_vertices(&[]).unwrap_err(),
        Error::EmptyInput
    );
    let bad = pts(&[&[0, 0], &[1, 0, 0]]);
    assert!(matches!(
        Polytope::hull_from_vertices(&bad),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn volumes() {
    let cube = Polytope::cube(3, Rational::from_i64(1)).unwrap();
    assert_eq!(cube.volume(), Rational::from_i64(1));
    assert_eq!(prism().volume(), q(1, 2));
}

#[test]
fn prism_facet_volumes() {
    let p = prism();
    let slanted = facet_with_normal(&p, &[0, 1, 1]);
    assert_eq!(p.facet_volume_sq(slanted).unwrap(), Rational::from_i64(2));
    for n in [[1, 0, 0], [-1, 0, 0]] {
        assert_eq!(p.facet_volume_sq(facet_with_normal(&p, &n)).unwrap(), q(1, 4));
    }
    let sq = Polytope::cube(2, Rational::from_i64(1)).unwrap();
    for i in 0..4 {
        assert_eq!(sq.facet_volume_sq(i).unwrap(), Rational::from_i64(1));
    }
    assert!(matches!(p.facet_volume(99), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn minkowski_sums() {
    let sq = Polytope::cube(2, Rational::from_i64(1)).unwrap();
    let origin = Polytope::hull_from_vertices(&pts(&[&[0, 0]])).unwrap();
    assert!(sq.minkowski_sum(&origin).unwrap().same_as(&sq));
    let big = Polytope::cube(2, Rational::from_i64(2)).unwrap();
    assert!(sq.minkowski_sum(&sq).unwrap().same_as(&big));
}

fn edge_lengths_sq(p: &Polytope<Rational>) -> Vec<(Vec<Rational>, Rational)> {
    (0..p.facets().len())
        .map(|i| (p.facets()[i].halfspace.normal.clone(), p.facet_volume_sq(i).unwrap()))
        .collect()
}

#[test]
fn triangle_sum_is_hexagon_with_added_edges() {
    let a = Polytope::hull_from_vertices(&pts(&[&[0, 0], &[2, 0], &[0, 1]])).unwrap();
    let b = Polytope::hull_from_vertices(&pts(&[&[0, 0], &[1, 3], &[-2, 1]])).unwrap();
    let s = a.minkowski_sum(&b).unwrap();
    assert_eq!(s.vertices().len(), 6);
    // every edge of the sum is an edge of exactly one summand (distinct normals)
    let mut parts = edge_lengths_sq(&a);
    parts.extend(edge_lengths_sq(&b));
    for (n, len) in edge_lengths_sq(&s) {
        let matching: Vec<&Rational> = parts.iter().filter(|(m, _)| *m == n).map(|(_, l)| l).collect();
        assert_eq!(matching, vec![&len]);
    }
}

#[test]
fn hausdorff_examples() {
    let sq = Polytope::cube(2, Rational::from_i64(1)).unwrap();
    let big = Polytope::cube(2, Rational::from_i64(2)).unwrap();
    assert_eq!(sq.hausdorff_distance_sq(&sq).unwrap(), Rational::from_i64(0));
    assert_eq!(sq.hausdorff_distance_sq(&big).unwrap(), Rational::from_i64(2));
    let v = vec![q(3, 1), q(-4, 1)];
    let moved = sq.translate(&v).unwrap();
    assert_eq!(sq.hausdorff_distance_sq(&moved).unwrap(), Rational::from_i64(25));
}

#[test]
fn slabs() {
    let cube = Polytope::cube(3, Rational::from_i64(1)).unwrap();
    let s = cube.slab(1, &Rational::from_i64(0), &Rational::from_i64(1)).unwrap();
    assert!(s.same_as(&cube));
    let long = Polytope::hull_from_vertices(&pts(&[
        &[0, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[3, 0, 0],
        &[3, 1, 0],
        &[3, 0, 1],
    ]))
    .unwrap();
    let s = long.slab(0, &Rational::from_i64(1), &Rational::from_i64(2)).unwrap();
    assert_eq!(s.volume(), q(1, 2));
    let e = cube.slab(0, &Rational::from_i64(5), &Rational::from_i64(6)).unwrap();
    assert!(e.is_empty());
    let flat = cube.slab(0, &Rational::from_i64(1), &Rational::from_i64(1)).unwrap();
    assert_eq!(flat.affine_dim(), Some(2));
    assert!(matches!(
        cube.slab(0, &Rational::from_i64(1), &Rational::from_i64(0)),
        Err(Error::InvalidSlab { .. })
    ));
}

#[test]
fn scaling_and_canonical_position() {
    let tri = Polytope::simplex(2, Rational::from_i64(1)).unwrap();
    let two = tri.scale(&Rational::from_i64(2)).unwrap();
    assert_eq!(two.volume(), tri.volume() * Rational::from_i64(4));
    let b = Polytope::axis_box(&[q(1, 1), q(1, 1)], &[q(2, 1), q(2, 1)]).unwrap();
    let c = b.canonical_position();
    assert!(c.same_as(&Polytope::cube(2, Rational::from_i64(1)).unwrap()));
    assert!(c.canonical_position().same_as(&c));
    c.certify().unwrap();
}

#[test]
fn approx_mode_matches_exact() {
    let p = prism();
    let r: Polytope<Real> = p.convert().unwrap();
    assert!((r.volume().to_f64() - 0.5).abs() < 1e-30);
    let slanted = facet_with_normal(&p, &[0, 1, 1]);
    let idx = r
        .facets()
        .iter()
        .position(|f| f.halfspace.normal[0].to_f64() == 0.0 && f.halfspace.normal[1].to_f64() > 0.0)
        .unwrap();
    let _ = slanted;
    assert!((r.facet_volume(idx).unwrap().to_f64() - 2f64.sqrt()).abs() < 1e-15);
    let f: Polytope<f64> = p.convert().unwrap();
    assert!((f.volume() - 0.5).abs() < 1e-12);
}

#[test]
fn json_round_trip() {
    let p = prism();
    let json = serde_json::to_string(&p.to_json()).unwrap();
    assert!(json.contains("\"mode\":\"exact\""));
    let back: PolytopeJson = serde_json::from_str(&json).unwrap();
    let q = AnyPolytope::from_json(&back).unwrap();
    match q {
        AnyPolytope::Exact(q) => assert!(q.same_as(&p)),
        AnyPolytope::Approx(_) => panic!("mode changed"),
    }
}

#[test]
fn off_export() {
    let off = prism().to_off().unwrap();
    let mut lines = off.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert_eq!(lines.next(), Some("6 5 0"));
    let four_d = Polytope::cube(4, Rational::from_i64(1)).unwrap();
    assert!(four_d.to_off().is_err());
}

#[test]
fn point_and_cube_lattices() {
    let pt = Polytope::hull_from_vertices(&pts(&[&[1, 2, 3]])).unwrap();
    assert_eq!(pt.affine_dim(), Some(0));
    for n in 2..=5 {
        let c = Polytope::cube(n, Rational::from_i64(1)).unwrap();
        assert_eq!(c.lattice().f_vector()[0], 1 << n);
        assert_eq!(c.lattice().level(n - 1).len(), 2 * n);
        let diam = c.diameter();
        assert!((diam.to_f64() - (n as f64).sqrt()).abs() < 1e-12);
    }
    let _ = Real::from_f64(2.0).sqrt();
}
