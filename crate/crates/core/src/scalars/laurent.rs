use super::{q, Ring, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Laurent polynomial in `u` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<i32, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, q(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(power: i32, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(power, c);
        out
    }

    pub fn add_term(&mut self, power: i32, c: Q) {
        if Zero::is_zero(&c) {
            return;
        }
        let slot = self.terms.entry(power).or_insert_with(Q::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&power);
        }
    }

    pub fn coeff(&self, power: i32) -> Q {
        self.terms.get(&power).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
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
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k + by, v.clone()))
                .collect(),
        }
    }

    /// Terms with `u`-power below zero.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .range(..0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Terms with `u`-power at least zero.
    pub fn nonnegative_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .range(0..)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// The substitution `u -> -u`.
    pub fn flip_u(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, if k % 2 == 0 { v.clone() } else { -v }))
                .collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| *k == 0)
    }
}

impl Ring for Laurent {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, -v);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
}
