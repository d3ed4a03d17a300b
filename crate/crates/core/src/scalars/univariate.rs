//! Dense one-variable power series `c_0 + c_1 x + ... + c_n x^n`, used to
//! compare computed mirror maps against closed forms.

use super::{q, Q};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

pub type Series = Vec<Q>;

fn fit(mut a: Series, len: usize) -> Series {
    a.resize(len, Q::zero());
    a
}

pub fn mul(a: &[Q], b: &[Q]) -> Series {
    let len = a.len().min(b.len());
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn inverse(a: &[Q]) -> Result<Series> {
    if a[0].is_zero() {
        return Err(Error::NonUnit);
    }
    let inv0 = a[0].recip();
    let mut out = vec![Q::zero(); a.len()];
    out[0] = inv0.clone();
    for k in 1..a.len() {
        let mut acc = Q::zero();
        for j in 1..=k {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc * &inv0;
    }
    Ok(out)
}

/// `exp(a)` for `a(0) = 0`, via `(exp a)' = a' exp a`.
pub fn exp(a: &[Q]) -> Result<Series> {
    if !a[0].is_zero() {
        return Err(Error::Model(
            "exp needs a series without constant term".into(),
        ));
    }
    let mut out = vec![Q::zero(); a.len()];
    out[0] = q(1);
    for k in 1..a.len() {
        let mut acc = Q::zero();
        for j in 1..=k {
            acc += q(j as i64) * &a[j] * &out[k - j];
        }
        out[k] = acc / q(k as i64);
    }
    Ok(out)
}

/// `log(a)` for `a(0) = 1`.
pub fn log(a: &[Q]) -> Result<Series> {
    if !a[0].is_one() {
        return Err(Error::Model("log needs constant term 1".into()));
    }
    let inv = inverse(a)?;
    let deriv: Series = (0..a.len())
        .map(|k| {
            if k + 1 < a.len() {
                q(k as i64 + 1) * &a[k + 1]
            } else {
                Q::zero()
            }
        })
        .collect();
    let quotient = mul(&deriv, &inv);
    let mut out = vec![Q::zero(); a.len()];
    for k in 1..a.len() {
        out[k] = &quotient[k - 1] / q(k as i64);
    }
    Ok(out)
}

/// `f(g(x))` for `g(0) = 0`, by Horner's rule.
pub fn compose(f: &[Q], g: &[Q]) -> Result<Series> {
    if !g[0].is_zero() {
        return Err(Error::Model(
            "inner series of a composition needs g(0) = 0".into(),
        ));
    }
    let len = f.len().min(g.len());
    let mut out = vec![Q::zero(); len];
    for c in f.iter().take(len).rev() {
        out = mul(&out, g);
        out[0] += c;
    }
    Ok(out)
}

/// Compositional inverse of `s = x + O(x^2)`: the series `r` with
/// `s(r(x)) = x` to the available order.
pub fn revert(s: &[Q]) -> Result<Series> {
    let len = s.len();
    if len < 2 || !s[0].is_zero() || !s[1].is_one() {
        return Err(Error::Model(
            "reversion needs a series of the form x + O(x^2)".into(),
        ));
    }
    // r <- r - (s(r) - x); each pass fixes one more coefficient.
    let mut r = fit(vec![Q::zero(), q(1)], len);
    for _ in 1..len {
        let sr = compose(s, &r)?;
        let mut changed = false;
        for k in 0..len {
            let target = if k == 1 { q(1) } else { Q::zero() };
            let delta = &sr[k] - target;
            if !delta.is_zero() {
                r[k] -= delta;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(r)
}

/// `x` as a series of the given length.
pub fn identity(len: usize) -> Series {
    fit(vec![Q::zero(), q(1)], len)
}

/// `(1 + c x)^e` for rational `e`, by the binomial series.
pub fn binomial_power(c: &Q, e: &Q, len: usize) -> Series {
    let mut out = vec![Q::zero(); len];
    let mut coeff = q(1);
    let mut cpow = q(1);
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = &coeff * &cpow;
        coeff = coeff * (e - q(k as i64)) / q(k as i64 + 1);
        cpow *= c;
    }
    out
}
