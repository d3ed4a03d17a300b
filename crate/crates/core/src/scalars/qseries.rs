use super::{q, Ring, Q};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Exponent of a q/t monomial: a curve class in kernel coordinates plus
/// exponents of the unfolding variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub q: Vec<i64>,
    pub t: Vec<u32>,
}

impl Key {
    pub fn new(q: Vec<i64>, t: Vec<u32>) -> Self {
        Self { q, t }
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(|x| *x == 0) && self.t.iter().all(|x| *x == 0)
    }

    pub fn t_order(&self) -> u32 {
        self.t.iter().sum()
    }

    pub fn plus(&self, other: &Key) -> Key {
        Key {
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Where q/t series are cut off: `lambda(q) <= order` and total t-degree
/// `<= t_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub lambda: Vec<i64>,
    pub order: i64,
    pub t_count: usize,
    pub t_order: u32,
}

impl Truncation {
    pub fn new(lambda: Vec<i64>, order: i64, t_count: usize, t_order: u32) -> Arc<Self> {
        Arc::new(Self {
            lambda,
            order,
            t_count,
            t_order,
        })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda_of(&self, class: &[i64]) -> i64 {
        self.lambda.iter().zip(class).map(|(a, b)| a * b).sum()
    }

    pub fn keeps(&self, key: &Key) -> bool {
        self.lambda_of(&key.q) <= self.order && key.t_order() <= self.t_order
    }

    pub fn zero_key(&self) -> Key {
        Key::new(vec![0; self.rank()], vec![0; self.t_count])
    }
}

/// A truncated power series in the Mori-monoid variables `q` and the
/// unfolding variables `t`, with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct QSeries {
    trunc: Arc<Truncation>,
    terms: BTreeMap<Key, Q>,
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.trunc == other.trunc
    }
}

impl QSeries {
    pub fn zero(trunc: &Arc<Truncation>) -> Self {
        Self {
            trunc: trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: &Arc<Truncation>) -> Self {
        Self::constant(trunc, q(1))
    }

    pub fn constant(trunc: &Arc<Truncation>, c: Q) -> Self {
        Self::monomial(trunc, trunc.zero_key(), c)
    }

    pub fn monomial(trunc: &Arc<Truncation>, key: Key, c: Q) -> Self {
        let mut out = Self::zero(trunc);
        out.add_term(key, c);
        out
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    /// Adds `c * key`, silently dropping keys beyond the truncation.
    pub fn add_term(&mut self, key: Key, c: Q) {
        debug_assert_eq!(key.q.len(), self.trunc.rank());
        debug_assert_eq!(key.t.len(), self.trunc.t_count);
        if Zero::is_zero(&c) || !self.trunc.keeps(&key) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if Zero::is_zero(slot) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, key: &Key) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&self.trunc.zero_key())
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Key) -> bool) -> Self {
        Self {
            trunc: self.trunc.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Multiplies each coefficient by a function of its key.
    pub fn weighted(&self, w: impl Fn(&Key) -> Q) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * w(k));
        }
        out
    }

    /// `q_a d/dq_a`, the derivation along `log q_a`.
    pub fn log_derivative(&self, a: usize) -> Self {
        self.weighted(|k| q(k.q[a]))
    }

    /// `d/dt_j`.
    pub fn t_derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (k, v) in &self.terms {
            if k.t[j] > 0 {
                let mut key = k.clone();
                key.t[j] -= 1;
                out.add_term(key, v * q(k.t[j] as i64));
            }
        }
        out
    }

    /// Multiplies by the monomial `key`.
    pub fn shift(&self, key: &Key) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (k, v) in &self.terms {
            out.add_term(k.plus(key), v.clone());
        }
        out
    }

    /// Re-reads the same terms under another truncation (which must have the
    /// same variables), dropping what no longer fits.
    pub fn retruncate(&self, trunc: &Arc<Truncation>) -> Self {
        assert_eq!(trunc.rank(), self.trunc.rank());
        assert_eq!(trunc.t_count, self.trunc.t_count);
        let mut out = Self::zero(trunc);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if Zero::is_zero(&c0) {
            return Err(Error::NonUnit);
        }
        let inv_c0 = c0.recip();
        let zero_key = self.trunc.zero_key();
        // 1/(c0 (1 + x)) with x nilpotent modulo the truncation.
        let x = self.filter(|k| *k != zero_key).scale(&inv_c0);
        let mut out = Self::one(&self.trunc);
        let mut power = Self::one(&self.trunc);
        loop {
            power = power.mul(&x).neg();
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.scale(&inv_c0))
    }

    /// `exp(x)` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !Zero::is_zero(&self.constant_term()) {
            return Err(Error::Model("exp of a series with a constant term".into()));
        }
        let mut out = Self::one(&self.trunc);
        let mut term = Self::one(&self.trunc);
        let mut k = 1i64;
        loop {
            term = term.mul(self).scale(&Q::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            k += 1;
        }
        Ok(out)
    }

    /// `log(x)` for a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Model(
                "log of a series whose constant term is not 1".into(),
            ));
        }
        let x = self.sub(&Self::one(&self.trunc));
        let mut out = Self::zero(&self.trunc);
        let mut power = Self::one(&self.trunc);
        let mut k = 1i64;
        loop {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Q::new(sign.into(), k.into())));
            k += 1;
        }
        Ok(out)
    }
}

impl Ring for QSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.trunc)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.trunc)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                out.add_term(ka.plus(kb), a * b);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return Self::zero(&self.trunc);
        }
        Self {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(order: i64) -> Arc<Truncation> {
        Truncation::new(vec![1], order, 0, 0)
    }

    fn qk(k: i64) -> Key {
        Key::new(vec![k], vec![])
    }

    #[test]
    fn geometric_series_inverse() {
        let tr = one_var(4);
        let mut x = QSeries::one(&tr);
        x.add_term(qk(1), q(-4));
        let inv = x.inverse().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(&qk(k)), q(4i64.pow(k as u32)));
        }
        assert_eq!(inv.len(), 5);
    }

    #[test]
    fn one_plus_q_times_alternating_is_one() {
        let tr = one_var(9);
        let mut a = QSeries::one(&tr);
        a.add_term(qk(1), q(1));
        let mut b = QSeries::zero(&tr);
        for k in 0..=9 {
            b.add_term(qk(k), q(if k % 2 == 0 { 1 } else { -1 }));
        }
        assert_eq!(a.mul(&b), QSeries::one(&tr));
        assert!(a.mul(&QSeries::zero(&tr)).is_zero());
    }

    #[test]
    fn exp_log_inverse_pair() {
        let tr = Truncation::new(vec![1, 2], 6, 0, 0);
        let mut x = QSeries::zero(&tr);
        x.add_term(Key::new(vec![1, 0], vec![]), q(3));
        x.add_term(Key::new(vec![0, 1], vec![]), crate::scalars::frac(-1, 2));
        let e = x.exp().unwrap();
        assert_eq!(e.log().unwrap(), x);
        assert!(QSeries::one(&tr).inverse().unwrap() == QSeries::one(&tr));
        assert!(QSeries::zero(&tr).inverse().is_err());
    }

    #[test]
    fn t_derivative_lowers_order() {
        let tr = Truncation::new(vec![1], 3, 1, 2);
        let mut x = QSeries::zero(&tr);
        x.add_term(Key::new(vec![1], vec![2]), q(5));
        let d = x.t_derivative(0);
        assert_eq!(d.coeff(&Key::new(vec![1], vec![1])), q(10));
    }
}
