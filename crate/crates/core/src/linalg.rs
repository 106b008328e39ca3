//! Small dense linear algebra over any [`Scalar`].

use crate::scalar::Scalar;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + &(x.clone() * y))
}

/// Sum of `|a_i b_i|`: the magnitude against which `dot(a, b)` is judged zero.
pub fn dot_scale<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + &(x.clone() * y).abs())
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn scaled<S: Scalar>(a: &[S], k: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * k).collect()
}

pub fn norm_sq<S: Scalar>(a: &[S]) -> S {
    dot(a, a)
}

fn max_abs<S: Scalar>(rows: &[Vec<S>]) -> S {
    rows.iter()
        .flat_map(|r| r.iter())
        .map(Scalar::abs)
        .fold(S::zero(), S::max_of)
}

fn choose_pivot<S: Scalar>(rows: &[Vec<S>], from: usize, col: usize, scale: &S) -> Option<usize> {
    if S::MODE == crate::scalar::NumericMode::Exact {
        (from..rows.len()).find(|&i| !rows[i][col].is_zero())
    } else {
        let (best, val) =
            (from..rows.len())
                .map(|i| (i, rows[i][col].abs()))
                .fold(
                    (None, S::zero()),
                    |(bi, bv), (i, v)| {
                        if v > bv {
                            (Some(i), v)
                        } else {
                            (bi, bv)
                        }
                    },
                );
        best.filter(|_| !val.is_zero_tol(scale))
    }
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let scale = max_abs(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = choose_pivot(rows, r, c, &scale) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - &(f.clone() * y);
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
pub fn independent_rows<S: Scalar>(rows: &[Vec<S>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<S>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if rank(&trial) == basis.len() + 1 {
            basis.push(row.clone());
            chosen.push(i);
        }
    }
    chosen
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let scale = max_abs(a);
    for c in 0..n {
        let p = choose_pivot(&m, c, c, &scale)?;
        m.swap(c, p);
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x.clone() - &(f.clone() * y);
            }
        }
    }
    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = m[i][n].clone();
        for j in i + 1..n {
            acc = acc - &(m[i][j].clone() * &x[j]);
        }
        x[i] = acc / &m[i][i];
    }
    Some(x)
}

/// Determinant by Gaussian elimination.
pub fn det<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = S::one();
    for c in 0..n {
        let p = if S::MODE == crate::scalar::NumericMode::Exact {
            (c..n).find(|&i| !m[i][c].is_zero())
        } else {
            (c..n)
                .filter(|&i| !m[i][c].is_zero())
                .max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).unwrap())
        };
        let Some(p) = p else {
            return S::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let pivot_row = m[c].clone();
        d = d * &pivot_row[c];
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x.clone() - &(f.clone() * y);
            }
        }
    }
    d
}

/// Gram determinant `det(E E^T)` of the rows of `e`.
pub fn gram_det<S: Scalar>(e: &[Vec<S>]) -> S {
    let g: Vec<Vec<S>> = e.iter().map(|a| e.iter().map(|b| dot(a, b)).collect()).collect();
    det(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_and_det() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let x = solve(&a, &[r(3), r(5)]).unwrap();
        assert_eq!(
            x,
            vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]
        );
        assert_eq!(det(&a), r(5));
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve(&singular, &[r(1), r(1)]).is_none());
        assert_eq!(det(&singular), r(0));
    }

    #[test]
    fn float_solve() {
        let a = vec![vec![1e-3, 1.0], vec![1.0, 1.0]];
        let x = solve(&a, &[1.0, 2.0]).unwrap();
        assert!((x[0] - 1.001_001).abs() < 1e-5 && (x[1] - 0.998_999).abs() < 1e-5);
    }

    #[test]
    fn independent_rows_greedy() {
        let rows = vec![vec![r(1), r(0)], vec![r(2), r(0)], vec![r(0), r(1)]];
        assert_eq!(independent_rows(&rows), vec![0, 2]);
    }
}
