//! Curve classes: the kernel lattice of the ray map, the Mori monoid with its
//! nef description, the anticanonical weight and the truncation functional.

use crate::error::{Error, Result};
use crate::fan::{self, Fan, ReferenceFrame, Wall};
use crate::lattice;
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// Facet enumeration of the Mori cone is attempted up to this Picard rank.
pub const DEFAULT_RANK_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveData {
    /// Basis of the kernel of `Z^d -> Z^n`, in Hermite normal form.
    pub kernel_basis: Vec<Vec<i64>>,
    /// Wall relations in kernel coordinates, deduplicated and sorted.
    pub wall_classes: Vec<Vec<i64>>,
    /// `nu` with `nu . p >= 0` exactly on the Mori cone.
    pub nef_inequalities: Vec<Vec<i64>>,
    /// Anticanonical weight `2 * (sum of entries)` of each basis class.
    pub qc_weights: Vec<i64>,
    /// Integral functional, positive on the Mori monoid minus the origin.
    pub lambda: Vec<i64>,
    /// Rays outside the first maximal cone; their coordinates determine a class.
    complement: Vec<usize>,
    /// Inverse of the kernel basis restricted to `complement`.
    complement_inverse: Vec<Vec<i64>>,
}

impl CurveData {
    /// Picard rank `d - n`.
    pub fn rank(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Kernel coordinates of a relation `v` (a vector of `Z^d` with `sum v_s rho_s = 0`).
    pub fn kernel_coords(&self, v: &[i64]) -> Vec<i64> {
        let r = self.rank();
        let out: Vec<i64> = (0..r)
            .map(|a| {
                self.complement
                    .iter()
                    .enumerate()
                    .map(|(c, &s)| v[s] * self.complement_inverse[c][a])
                    .sum()
            })
            .collect();
        debug_assert_eq!(self.lift(&out), v, "not a relation");
        out
    }

    /// The relation in `Z^d` with the given kernel coordinates.
    pub fn lift(&self, p: &[i64]) -> Vec<i64> {
        let d = self.kernel_basis.first().map_or(0, |k| k.len());
        (0..d)
            .map(|s| {
                p.iter()
                    .zip(&self.kernel_basis)
                    .map(|(c, k)| c * k[s])
                    .sum()
            })
            .collect()
    }

    pub fn qc(&self, p: &[i64]) -> i64 {
        p.iter().zip(&self.qc_weights).map(|(a, b)| a * b).sum()
    }

    pub fn lambda_of(&self, p: &[i64]) -> i64 {
        p.iter().zip(&self.lambda).map(|(a, b)| a * b).sum()
    }

    /// Membership in the Mori monoid.
    pub fn member(&self, p: &[i64]) -> bool {
        self.nef_inequalities
            .iter()
            .all(|nu| nu.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }

    /// All classes of the monoid with `lambda <= order`, sorted by `(lambda, coordinates)`.
    pub fn classes_up_to(&self, order: i64) -> Vec<Vec<i64>> {
        if order < 0 {
            return Vec::new();
        }
        let r = self.rank();
        let bounds: Vec<i64> = (0..r)
            .map(|a| {
                self.wall_classes
                    .iter()
                    .map(|w| order * w[a].abs() / self.lambda_of(w))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out: Vec<Vec<i64>> = bounds
            .iter()
            .map(|&b| -b..=b)
            .multi_cartesian_product()
            .chain(std::iter::once(vec![]).filter(|_| r == 0))
            .filter(|p| self.lambda_of(p) <= order && self.member(p))
            .collect();
        out.sort_by_key(|p| (self.lambda_of(p), p.clone()));
        out
    }

    /// Anticanonical class is nef: every wall class has `qc >= 0`.
    pub fn is_semi_fano(&self) -> bool {
        self.wall_classes.iter().all(|w| self.qc(w) >= 0)
    }

    pub fn is_fano(&self) -> bool {
        self.wall_classes.iter().all(|w| self.qc(w) > 0)
    }
}

fn facets(generators: &[Vec<i64>], r: usize, bound: usize) -> Result<Vec<Vec<i64>>> {
    if r > bound {
        return Err(Error::UnsupportedRank { rank: r, bound });
    }
    if r == 1 {
        let sign = generators
            .iter()
            .map(|g| g[0].signum())
            .find(|s| *s != 0)
            .unwrap_or(1);
        if generators.iter().any(|g| g[0].signum() == -sign) {
            return Err(Error::Model("Mori cone contains a line".into()));
        }
        return Ok(vec![vec![sign]]);
    }
    let mut out = BTreeSet::new();
    for subset in generators.iter().cloned().combinations(r - 1) {
        let Some(normal) = lattice::primitive_normal(&subset, r) else {
            continue;
        };
        let values: Vec<i64> = generators
            .iter()
            .map(|g| g.iter().zip(&normal).map(|(a, b)| a * b).sum())
            .collect();
        if values.iter().all(|v| *v >= 0) {
            out.insert(normal);
        } else if values.iter().all(|v| *v <= 0) {
            out.insert(normal.iter().map(|x| -x).collect());
        }
    }
    if out.is_empty() {
        return Err(Error::Model("Mori cone has no facets".into()));
    }
    Ok(out.into_iter().collect())
}

pub fn curve_data(fan: &Fan, walls: &[Wall]) -> Result<CurveData> {
    curve_data_with_bound(fan, walls, DEFAULT_RANK_BOUND)
}

pub fn curve_data_with_bound(fan: &Fan, walls: &[Wall], rank_bound: usize) -> Result<CurveData> {
    let n = fan.n();
    let d = fan.d();
    let ray_matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| fan.rays().iter().map(|r| r[i]).collect())
        .collect();
    let kernel_basis = lattice::hnf_from_last_column(&lattice::integer_kernel(&ray_matrix, d));
    let r = kernel_basis.len();
    let complement: Vec<usize> = (0..d).filter(|s| !fan.max_cones()[0].contains(s)).collect();
    let restricted: Vec<Vec<i64>> = kernel_basis
        .iter()
        .map(|k| complement.iter().map(|&s| k[s]).collect())
        .collect();
    let complement_inverse = if r == 0 {
        Vec::new()
    } else {
        lattice::inverse_unimodular(&restricted).ok_or_else(|| {
            Error::Model("kernel basis is not unimodular off the first cone".into())
        })?
    };
    let qc_weights = kernel_basis
        .iter()
        .map(|k| 2 * k.iter().sum::<i64>())
        .collect();
    let mut cd = CurveData {
        kernel_basis,
        wall_classes: Vec::new(),
        nef_inequalities: Vec::new(),
        qc_weights,
        lambda: vec![0; r],
        complement,
        complement_inverse,
    };
    let classes: BTreeSet<Vec<i64>> = walls
        .iter()
        .map(|w| cd.kernel_coords(&w.relation))
        .collect();
    cd.wall_classes = classes.into_iter().collect();
    cd.nef_inequalities = if r == 0 {
        Vec::new()
    } else {
        facets(&cd.wall_classes, r, rank_bound)?
    };

    let psi = fan::convexity_witness(fan, walls)
        .ok_or_else(|| Error::Validation("fan is not projective".into()))?;
    let raw: Vec<_> = cd
        .kernel_basis
        .iter()
        .map(|k| {
            k.iter()
                .zip(&psi)
                .map(|(c, p)| p * num_bigint::BigInt::from(*c))
                .sum::<crate::scalars::Q>()
        })
        .collect();
    let denom = raw
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = raw.iter().map(|x| (x * &denom).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
    cd.lambda = ints
        .iter()
        .map(|x| (x / &g).to_i64().expect("lambda fits in i64"))
        .collect();
    for w in &cd.wall_classes {
        if cd.lambda_of(w) < 1 || !cd.member(w) {
            return Err(Error::Model(format!(
                "wall class {w:?} is not strictly positive"
            )));
        }
    }
    debug_assert!(cd.lambda.iter().all(|x| !x.is_negative() || r > 0));
    Ok(cd)
}

/// Classes `p_l` with `z_l = prod_i z_i^{a_il} z^{p_l}` relative to the reference cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayExcess {
    pub classes: Vec<Vec<i64>>,
}

/// The relation `e_s - sum_i a_is e_{ref_i}` in `Z^d`.
pub fn ray_relation(fan: &Fan, frame: &ReferenceFrame, s: usize) -> Vec<i64> {
    let mut v = vec![0i64; fan.d()];
    v[s] += 1;
    for (i, &r) in frame.rays.iter().enumerate() {
        v[r] -= frame.exponents[i][s];
    }
    v
}

pub fn ray_excess(fan: &Fan, cd: &CurveData, frame: &ReferenceFrame) -> Result<RayExcess> {
    let mut classes = Vec::with_capacity(fan.d());
    for s in 0..fan.d() {
        let p = cd.kernel_coords(&ray_relation(fan, frame, s));
        if !cd.member(&p) {
            return Err(Error::Model(format!(
                "excess class of ray {} is not effective",
                s + 1
            )));
        }
        let degree: i64 = frame.exponents.iter().map(|row| row[s]).sum();
        if 2 * degree + cd.qc(&p) != 2 {
            return Err(Error::Model(format!(
                "weight balance fails for ray {}",
                s + 1
            )));
        }
        classes.push(p);
    }
    Ok(RayExcess { classes })
}
