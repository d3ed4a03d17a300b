use super::{Ring, Q};
use std::collections::BTreeMap;

/// Polynomial in the formal log variables `l_1, .., l_r` (`l_a` stands for
/// `log q_a`) with coefficients in a ring `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly<C: Ring> {
    vars: usize,
    zero: C,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Ring> LogPoly<C> {
    pub fn zero(vars: usize, zero: C) -> Self {
        Self {
            vars,
            zero: zero.zero_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: C) -> Self {
        let mut out = Self::zero(vars, c.zero_like());
        out.add_term(vec![0; vars], c);
        out
    }

    /// The variable `l_a`.
    pub fn var(vars: usize, a: usize, one: C) -> Self {
        let mut exps = vec![0; vars];
        exps[a] = 1;
        let mut out = Self::zero(vars, one.zero_like());
        out.add_term(exps, one);
        out
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&exps) {
            Some(cur) => cur.add(&c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, next);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn map_coeffs<D: Ring>(&self, zero: D, f: impl Fn(&C) -> D) -> LogPoly<D> {
        let mut out = LogPoly::zero(self.vars, zero);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<C: Ring> Ring for LogPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.vars, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.vars, self.zero.one_like())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a.mul(b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_coeffs(self.zero.clone(), |c| c.neg())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, c: &Q) -> Self {
        self.map_coeffs(self.zero.clone(), |x| x.scale(c))
    }
}
