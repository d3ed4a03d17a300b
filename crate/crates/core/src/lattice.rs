//! Integer and rational linear algebra on small lattices: determinants,
//! unimodular inverses, integer kernels in Hermite normal form, hyperplane
//! normals, and an exact simplex solver.

use crate::scalars::{q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
        .collect()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("lattice entry does not fit in i64"))
        .collect()
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[&Vec<i64>]) -> Vec<Vec<i64>> {
    let n = vectors.first().map_or(0, |v| v.len());
    (0..n)
        .map(|i| vectors.iter().map(|v| v[i]).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Rational inverse of a square integer matrix.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|x| q(*x)).collect();
            r.extend((0..n).map(|j| if i == j { q(1) } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..2 * n {
                    let d = &f * &a[c][k];
                    a[i][k] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix; `None` if it is not unimodular.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = rational_inverse(m)?;
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        x.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Euclidean elimination below row `r` in column `c`; returns whether a
/// pivot was placed at `(r, c)`.
fn clear_column(a: &mut [Vec<BigInt>], r: usize, c: usize) -> bool {
    loop {
        let nonzero: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
        let Some(&best) = nonzero.iter().min_by_key(|&&i| a[i][c].abs()) else {
            return false;
        };
        a.swap(r, best);
        let mut done = true;
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].div_floor(&a[r][c]);
            for k in 0..a[i].len() {
                let d = &f * &a[r][k];
                a[i][k] -= d;
            }
            if !a[i][c].is_zero() {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
}

/// Row Hermite normal form, pivots scanned from the first column.
fn hnf(mut a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        if !clear_column(&mut a, r, c) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            if !f.is_zero() {
                for k in 0..ncols {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Hermite normal form with pivots taken from the last column backwards.
pub fn hnf_from_last_column(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let reversed: Vec<Vec<BigInt>> = big(rows)
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    hnf(reversed)
        .into_iter()
        .map(|mut r| {
            r.reverse();
            small(&r)
        })
        .collect()
}

/// A lattice basis of `{v in Z^d : a v = 0}` for an `n x d` matrix `a`.
pub fn integer_kernel(a: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    // Rows of [a^T | I_d]; unimodular row operations keep the right block a
    // change of basis of Z^d.
    let mut m: Vec<Vec<BigInt>> = (0..d)
        .map(|s| {
            let mut row: Vec<BigInt> = (0..n).map(|i| BigInt::from(a[i][s])).collect();
            row.extend((0..d).map(|j| {
                if j == s {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        if r < d && clear_column(&mut m, r, c) {
            r += 1;
        }
    }
    m[r..].iter().map(|row| small(&row[n..])).collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Primitive integer normal of the hyperplane spanned by `dim - 1` vectors
/// in `Z^dim`, or `None` when they are dependent.
pub fn primitive_normal(vectors: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    assert_eq!(vectors.len() + 1, dim);
    let normal: Vec<i64> = (0..dim)
        .map(|i| {
            let minor: Vec<Vec<i64>> = vectors
                .iter()
                .map(|v| (0..dim).filter(|&j| j != i).map(|j| v[j]).collect())
                .collect();
            let d = det(&minor).to_i64().expect("minor does not fit in i64");
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let g = gcd_all(&normal);
    if g == 0 {
        return None;
    }
    Some(normal.iter().map(|x| x / g).collect())
}

/// Outcome of an exact linear program.
#[derive(Clone, Debug, PartialEq)]
pub enum Lp {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for k in 0..=self.width {
                    let d = &f * &self.rows[r][k];
                    self.rows[i][k] -= d;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's-rule simplex over the columns marked `allowed`.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let reduced = |j: usize| -> Q {
                let mut z = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    z -= &cost[b] * &self.rows[i][j];
                }
                z
            };
            let Some(enter) = (0..self.width).find(|&j| allowed[j] && reduced(j).is_negative())
            else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rows[i][self.width] / a;
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter);
        }
    }
}

/// Minimizes `c.x` subject to `a x = b`, `x >= 0`, exactly.
pub fn minimize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> Lp {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i]
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|j| if i == j { q(1) } else { Q::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };
    let phase_one: Vec<Q> = (0..width)
        .map(|j| if j < n { Q::zero() } else { q(1) })
        .collect();
    t.optimize(&phase_one, &vec![true; width]);
    let infeasibility: Q = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rows[i][width].clone())
        .sum();
    if !infeasibility.is_zero() {
        return Lp::Infeasible;
    }
    // Drive artificial variables out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost: Vec<Q> = c.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    let allowed: Vec<bool> = (0..width).map(|j| j < n).collect();
    if !t.optimize(&cost, &allowed) {
        return Lp::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rows[i][width].clone();
        }
    }
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    Lp::Optimal { x, value }
}
