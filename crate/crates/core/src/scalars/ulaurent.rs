use super::{Key, Laurent, QSeries, Ring, Truncation, Q};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Laurent polynomial in `u` whose coefficients are truncated q/t series.
#[derive(Clone, Debug)]
pub struct ULaurent {
    trunc: Arc<Truncation>,
    terms: BTreeMap<i32, QSeries>,
}

impl PartialEq for ULaurent {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.trunc == other.trunc
    }
}

impl ULaurent {
    pub fn zero(trunc: &Arc<Truncation>) -> Self {
        Self {
            trunc: trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: &Arc<Truncation>) -> Self {
        Self::from_series(0, QSeries::one(trunc))
    }

    pub fn from_series(power: i32, s: QSeries) -> Self {
        let mut out = Self::zero(s.truncation());
        out.add_series(power, &s);
        out
    }

    /// Embeds a constant Laurent polynomial in `u`.
    pub fn from_laurent(trunc: &Arc<Truncation>, x: &Laurent) -> Self {
        let mut out = Self::zero(trunc);
        for (j, c) in x.terms() {
            out.add_series(j, &QSeries::constant(trunc, c.clone()));
        }
        out
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn add_series(&mut self, power: i32, s: &QSeries) {
        if s.is_zero() {
            return;
        }
        let next = match self.terms.get(&power) {
            Some(cur) => cur.add(s),
            None => s.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&power);
        } else {
            self.terms.insert(power, next);
        }
    }

    /// Adds `c * key * u^power`.
    pub fn add_term(&mut self, power: i32, key: Key, c: Q) {
        self.add_series(power, &QSeries::monomial(&self.trunc, key, c));
    }

    pub fn coeff(&self, power: i32) -> QSeries {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(&self.trunc))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QSeries)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            trunc: self.trunc.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k + by, v.clone()))
                .collect(),
        }
    }

    pub fn map_series(&self, f: impl Fn(&QSeries) -> QSeries) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (j, s) in &self.terms {
            out.add_series(*j, &f(s));
        }
        out
    }

    pub fn log_derivative(&self, a: usize) -> Self {
        self.map_series(|s| s.log_derivative(a))
    }

    pub fn t_derivative(&self, j: usize) -> Self {
        self.map_series(|s| s.t_derivative(j))
    }

    /// `u d/du`.
    pub fn u_degree(&self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (j, s) in &self.terms {
            out.add_series(*j, &s.scale(&super::q(*j as i64)));
        }
        out
    }

    /// Keeps terms of total t-degree at most `max`.
    pub fn t_truncate(&self, max: u32) -> Self {
        self.map_series(|s| s.filter(|k| k.t_order() <= max))
    }

    /// The coefficient of a single q/t monomial, as a Laurent polynomial in `u`.
    pub fn at_key(&self, key: &Key) -> Laurent {
        let mut out = Laurent::zero();
        for (j, s) in &self.terms {
            out.add_term(*j, s.coeff(key));
        }
        out
    }

    /// All q/t monomials that occur, with their Laurent coefficients.
    pub fn by_key(&self) -> BTreeMap<Key, Laurent> {
        let mut out: BTreeMap<Key, Laurent> = BTreeMap::new();
        for (j, s) in &self.terms {
            for (k, c) in s.terms() {
                out.entry(k.clone()).or_default().add_term(*j, c.clone());
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn retruncate(&self, trunc: &Arc<Truncation>) -> Self {
        let mut out = Self::zero(trunc);
        for (j, s) in &self.terms {
            out.add_series(*j, &s.retruncate(trunc));
        }
        out
    }
}

impl Ring for ULaurent {
    fn zero_like(&self) -> Self {
        Self::zero(&self.trunc)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.trunc)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, s) in &other.terms {
            out.add_series(*j, s);
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, s) in &other.terms {
            out.add_series(*j, &s.neg());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_series(i + j, &a.mul(b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_series(|s| s.neg())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Q) -> Self {
        self.map_series(|s| s.scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q;

    #[test]
    fn products_convolve_in_u() {
        let tr = Truncation::new(vec![1], 3, 0, 0);
        let qk = |k| Key::new(vec![k], vec![]);
        let mut a = ULaurent::zero(&tr);
        a.add_term(-1, qk(1), q(2));
        a.add_term(0, qk(0), q(1));
        let b = a.mul(&a);
        assert_eq!(b.coeff(-2).coeff(&qk(2)), q(4));
        assert_eq!(b.coeff(-1).coeff(&qk(1)), q(4));
        assert_eq!(b.coeff(0).coeff(&qk(0)), q(1));
        assert_eq!(b.u_degree().coeff(-2).coeff(&qk(2)), q(-8));
        assert_eq!(b.by_key().len(), 3);
    }
}
