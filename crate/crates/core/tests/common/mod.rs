//! Oracles computed without the engine: closed-form series, Lagrange
//! inversion, and intersection numbers of toric surfaces.
#![allow(dead_code)]

use logmirror::fan::Fan;
use logmirror::model::{Model, ModelInput, ModelOptions};
use logmirror::scalars::{frac, q, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("P1", Fan::projective_space(1)),
        ("P2", Fan::projective_space(2)),
        ("F2", Fan::hirzebruch(2)),
        ("P1xP1", Fan::p1_times_p1()),
        ("dP1", Fan::blowup_p2()),
    ]
}

pub fn model(name: &str, fan: &Fan, k: i64) -> Model {
    let mut input = ModelInput::from_fan(name, fan);
    input.truncation = Some(k);
    Model::new(&input, ModelOptions::default()).expect("model builds")
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Coefficients of `(1 + c x)^r`, `x^0 .. x^(len-1)`, from generalized
/// binomial coefficients.
pub fn binomial_series(c: &Q, r: &Q, len: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(len);
    let mut coeff = q(1);
    let mut power = q(1);
    for k in 0..len {
        out.push(&coeff * &power);
        coeff = coeff * (r - q(k as i64)) / q(k as i64 + 1);
        power *= c;
    }
    out
}

/// Reversion of `q = tau (1 + tau)^-2` by Lagrange inversion:
/// `[q^n] tau = (1/n) [w^(n-1)] (1 + w)^(2n) = C(2n, n-1) / n`.
pub fn lagrange_tau(len: usize) -> Vec<Q> {
    (0..len)
        .map(|n| {
            if n == 0 {
                q(0)
            } else {
                Q::new(binomial(2 * n as u64, n as u64 - 1), BigInt::from(n))
            }
        })
        .collect()
}

/// `u beta(q) = log(2 / (1 + sqrt(1 - 4q)))`, integrated term by term from
/// `u beta' = ((1 - 4q)^(-1/2) - 1) / (2q)`.
pub fn u_beta(len: usize) -> Vec<Q> {
    let inv_sqrt = binomial_series(&q(-4), &frac(-1, 2), len);
    let mut out = vec![q(0); len];
    for k in 1..len {
        out[k] = &inv_sqrt[k] / q(2) / q(k as i64);
    }
    out
}

/// Intersection form of a complete smooth toric surface on its divisors:
/// `D_i D_j = 1` for adjacent rays, `D_i^2 = -a_i` where
/// `rho_prev + rho_next = a_i rho_i`.
pub fn surface_intersection(fan: &Fan) -> Vec<Vec<i64>> {
    let d = fan.d();
    let mut m = vec![vec![0i64; d]; d];
    let cones = fan.max_cones();
    for c in cones {
        m[c[0]][c[1]] = 1;
        m[c[1]][c[0]] = 1;
    }
    for i in 0..d {
        let nbrs: Vec<usize> = (0..d).filter(|&j| m[i][j] == 1 && j != i).collect();
        assert_eq!(nbrs.len(), 2);
        let s: Vec<i64> = (0..2)
            .map(|x| fan.rays()[nbrs[0]][x] + fan.rays()[nbrs[1]][x])
            .collect();
        let r = &fan.rays()[i];
        let a = if r[0] != 0 { s[0] / r[0] } else { s[1] / r[1] };
        assert_eq!(vec![a * r[0], a * r[1]], s);
        m[i][i] = -a;
    }
    m
}
