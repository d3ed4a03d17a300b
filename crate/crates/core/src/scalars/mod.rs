//! Exact scalar tower: rationals, truncated q-series, u-Laurent polynomials,
//! polynomials in the log variables, and dense matrices over any of them.

mod laurent;
mod linsolve;
mod logpoly;
mod matrix;
mod qseries;
mod rational;
mod ulaurent;
pub mod univariate;

pub use laurent::Laurent;
pub use linsolve::{inverse, rank, solve_linear};
pub use logpoly::LogPoly;
pub use matrix::Mat;
pub use qseries::{Key, QSeries, Truncation};
pub(crate) use rational::format_q_short;
pub use rational::{format_q, frac, parse_q, q, Q};
pub use ulaurent::ULaurent;

/// Commutative ring operations shared by every scalar in the tower.
///
/// `zero_like`/`one_like` exist because truncated series carry their
/// truncation context and cannot be built from nothing.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &Q) -> Self;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        q(0)
    }
    fn one_like(&self) -> Self {
        q(1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
}
