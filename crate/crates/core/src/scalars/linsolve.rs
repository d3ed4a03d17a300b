use super::{Mat, Q};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Row-reduces `[a | b]` in place and returns the pivot columns.
fn echelon(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in 0..rows[i].len() {
                let delta = &f * &rows[r][k];
                rows[i][k] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Exact solution of `a x = b`; free variables are set to zero.
///
/// `context` names the system in the error when it is inconsistent.
pub fn solve_linear(a: &Mat<Q>, b: &[Q], context: &str) -> Result<Vec<Q>> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut rows: Vec<Vec<Q>> = (0..a.rows())
        .map(|i| {
            let mut row: Vec<Q> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows, n);
    for row in rows.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Err(Error::Inconsistent {
                context: context.to_string(),
            });
        }
    }
    let mut x = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Ok(x)
}

pub fn rank(a: &Mat<Q>) -> usize {
    let mut rows: Vec<Vec<Q>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j).clone()).collect())
        .collect();
    echelon(&mut rows, a.cols()).len()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(a: &Mat<Q>) -> Option<Mat<Q>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.extend((0..n).map(|j| if i == j { super::q(1) } else { Q::zero() }));
            row
        })
        .collect();
    if echelon(&mut rows, n).len() < n {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| rows[i][n + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_returns_rhs() {
        let id = Mat::identity(3, &q(1));
        let b = vec![q(1), frac(-2, 3), q(5)];
        assert_eq!(solve_linear(&id, &b, "id").unwrap(), b);
    }

    #[test]
    fn unimodular_integer_system() {
        let a = Mat::from_fn(2, 2, |i, j| q([[2, 1], [1, 1]][i][j]));
        let x = solve_linear(&a, &[q(3), q(2)], "2x2").unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }

    #[test]
    fn random_six_by_six_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Mat::from_fn(6, 6, |_, _| {
                frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))
            });
            let b: Vec<Q> = (0..6).map(|_| q(rng.gen_range(-9..=9))).collect();
            if rank(&a) < 6 {
                continue;
            }
            let x = solve_linear(&a, &b, "random").unwrap();
            assert_eq!(a.mul_vec(&x), b);
            let inv = inverse(&a).unwrap();
            assert_eq!(inv.mul(&a), Mat::identity(6, &q(1)));
        }
    }

    #[test]
    fn inconsistent_system_names_context() {
        let a = Mat::from_fn(2, 1, |_, _| q(1));
        let err = solve_linear(&a, &[q(0), q(1)], "stratum 4").unwrap_err();
        assert_eq!(
            err,
            Error::Inconsistent {
                context: "stratum 4".into()
            }
        );
    }
}
