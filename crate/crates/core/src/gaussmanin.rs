//! The Gauss-Manin connection on the good basis: matrices of `u nabla` in the
//! q- and t-directions and of `nabla_{u d/du}`, their residues, and the
//! structural checks (flatness, Euler identity, nilpotency, homogeneity).

use crate::error::{Error, Result};
use crate::hodge::Engine;
use crate::monoidring::{HodgeElement, Monoid};
use crate::scalars::{q, Key, Laurent, Mat, Ring, ULaurent, Q};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Matrices with `u nabla_X (phi_1, .., phi_mu) = (phi_1, .., phi_mu) M_X`:
/// column `k` holds the coordinates of `u nabla_X phi_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    /// `u nabla` along `q_a d/dq_a`.
    pub q: Vec<Mat<ULaurent>>,
    /// `u nabla` along `d/dt_j`.
    pub t: Vec<Mat<ULaurent>>,
    /// `nabla_{u d/du}` itself (not multiplied by `u`).
    pub u: Mat<ULaurent>,
}

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// Turns a failure into a model error.
    pub fn require(self) -> Result<()> {
        if self.pass {
            Ok(())
        } else {
            Err(Error::Model(format!("{}: {}", self.name, self.detail)))
        }
    }
}

/// `dF` along `log q_a`: `sum_s (p_s)_a z_s + sum_j t_j excess_ref(phi_j)_a phi_j`.
pub fn potential_derivative(monoid: &Monoid, a: usize) -> HodgeElement {
    let mut out = HodgeElement::zero();
    for (s, p) in monoid.ray_excess().classes.iter().enumerate() {
        if p[a] != 0 {
            out.add_term(monoid.ray(s), &Laurent::constant(q(p[a])));
        }
    }
    for (j, &k) in monoid.t_directions().iter().enumerate() {
        let phi = &monoid.basis()[k];
        let c = monoid.excess_ref(phi)[a];
        if c != 0 {
            let mut mono = phi.clone();
            mono.t[j] += 1;
            out.add_term(mono, &Laurent::constant(q(c)));
        }
    }
    out
}

/// The potential `F = z_1 + .. + z_d + sum_j t_j phi_j`.
pub fn potential(monoid: &Monoid) -> HodgeElement {
    let mut out = HodgeElement::zero();
    for s in 0..monoid.fan().d() {
        out.add_term(monoid.ray(s), &Laurent::one());
    }
    for (j, &k) in monoid.t_directions().iter().enumerate() {
        let mut mono = monoid.basis()[k].clone();
        mono.t[j] += 1;
        out.add_term(mono, &Laurent::one());
    }
    out
}

/// Coordinates of `u nabla_{q_a d/dq_a} phi_k`.
pub fn nabla_q(engine: &Engine, a: usize, k: usize) -> Result<Vec<ULaurent>> {
    let monoid = engine.monoid();
    let phi = monoid.basis_element(k);
    let mut coords = engine.reduce(&monoid.mul_elements(&potential_derivative(monoid, a), &phi))?;
    let c = monoid.excess_ref(&monoid.basis()[k])[a];
    if c != 0 {
        let key = engine.truncation().zero_key();
        coords[k].add_term(1, key, q(c));
    }
    Ok(coords)
}

/// Coordinates of `u nabla_{d/dt_j} phi_k = phi_{dir j} phi_k`.
pub fn nabla_t(engine: &Engine, j: usize, k: usize) -> Result<Vec<ULaurent>> {
    let monoid = engine.monoid();
    let dir = monoid.t_directions()[j];
    engine.reduce(&monoid.mul_elements(&monoid.basis_element(dir), &monoid.basis_element(k)))
}

/// Coordinates of `nabla_{u d/du} phi_k = -(1/u) F phi_k`.
pub fn nabla_u(engine: &Engine, k: usize) -> Result<Vec<ULaurent>> {
    let monoid = engine.monoid();
    let prod = monoid.mul_elements(&potential(monoid), &monoid.basis_element(k));
    Ok(engine
        .reduce(&prod.shift_u(-1))?
        .into_iter()
        .map(|c| c.neg())
        .collect())
}

fn matrix(
    mu: usize,
    parallel: bool,
    column: impl Fn(usize) -> Result<Vec<ULaurent>> + Sync,
) -> Result<Mat<ULaurent>> {
    let cols: Vec<Vec<ULaurent>> = if parallel {
        (0..mu)
            .into_par_iter()
            .map(&column)
            .collect::<Result<_>>()?
    } else {
        (0..mu).map(&column).collect::<Result<_>>()?
    };
    Ok(Mat::from_columns(&cols))
}

pub fn connection(engine: &Engine, parallel: bool) -> Result<Connection> {
    let monoid = engine.monoid();
    let mu = monoid.mu();
    let top = monoid.basis_weights().into_iter().max().unwrap_or(0);
    let weights: Vec<i64> = (0..=top + 2 * monoid.n() as i64 + 2).collect();
    let weights: Vec<i64> = weights
        .into_iter()
        .filter(|w| *w <= engine.max_weight())
        .collect();
    if parallel {
        engine.prepare(&weights, true)?;
    }
    let q = (0..monoid.rank())
        .map(|a| matrix(mu, parallel, |k| nabla_q(engine, a, k)))
        .collect::<Result<_>>()?;
    let t = (0..monoid.t_directions().len())
        .map(|j| matrix(mu, parallel, |k| nabla_t(engine, j, k)))
        .collect::<Result<_>>()?;
    let u = matrix(mu, parallel, |k| nabla_u(engine, k))?;
    Ok(Connection { q, t, u })
}

fn map_entries(m: &Mat<ULaurent>, f: impl Fn(&ULaurent) -> ULaurent) -> Mat<ULaurent> {
    m.map(|x| f(x))
}

/// Derivative of a matrix along a direction: `X < rank` is `q_X d/dq_X`,
/// otherwise `d/dt_{X - rank}`.
fn derive(m: &Mat<ULaurent>, x: usize, rank: usize) -> Mat<ULaurent> {
    if x < rank {
        map_entries(m, |e| e.log_derivative(x))
    } else {
        map_entries(m, |e| e.t_derivative(x - rank))
    }
}

fn direction_name(monoid: &Monoid, x: usize) -> String {
    let r = monoid.rank();
    if x < r {
        format!("q{}", x + 1)
    } else {
        format!("t{}", monoid.t_directions()[x - r] + 1)
    }
}

fn first_nonzero(monoid: &Monoid, m: &Mat<ULaurent>) -> Option<String> {
    m.entries()
        .find(|(_, _, e)| !e.is_zero())
        .map(|(i, k, e)| format!("entry ({}, {}) = {}", i + 1, k + 1, monoid.render_scalar(e)))
}

impl Connection {
    /// All directions: q-directions first, then t-directions.
    pub fn all(&self) -> Vec<&Mat<ULaurent>> {
        self.q.iter().chain(self.t.iter()).collect()
    }

    /// `u (d_X M_Y - d_Y M_X) + [M_X, M_Y] = 0` for every pair of directions;
    /// pairs involving t are compared below the top t-order.
    pub fn curvature(&self, monoid: &Monoid) -> Vec<Outcome> {
        let r = monoid.rank();
        let mats = self.all();
        let t_order = monoid.truncation().t_order;
        let mut out = Vec::new();
        for x in 0..mats.len() {
            for y in x + 1..mats.len() {
                let mut f = derive(mats[y], x, r)
                    .sub(&derive(mats[x], y, r))
                    .map(|e| e.shift(1))
                    .add(&mats[x].commutator(mats[y]));
                if x >= r || y >= r {
                    f = map_entries(&f, |e| e.t_truncate(t_order.saturating_sub(1)));
                }
                let name = format!(
                    "curvature ({}, {})",
                    direction_name(monoid, x),
                    direction_name(monoid, y)
                );
                out.push(match first_nonzero(monoid, &f) {
                    None => Outcome::new(name, true, "vanishes"),
                    Some(e) => Outcome::new(name, false, e),
                });
            }
        }
        out
    }

    /// `u d_X V - (u d/du) M_X + M_X + [M_X, V] = 0` in the q-directions.
    pub fn extended_flatness(&self, monoid: &Monoid) -> Vec<Outcome> {
        let mut out = Vec::new();
        for (a, m) in self.q.iter().enumerate() {
            let f = map_entries(&self.u, |e| e.log_derivative(a).shift(1))
                .sub(&map_entries(m, |e| e.u_degree()))
                .add(m)
                .add(&m.commutator(&self.u));
            let name = format!("flatness (q{}, u)", a + 1);
            out.push(match first_nonzero(monoid, &f) {
                None => Outcome::new(name, true, "vanishes"),
                Some(e) => Outcome::new(name, false, e),
            });
        }
        out
    }

    /// `u V + sum_a (qc_a / 2) M_a + sum_j (deg t_j / 2) t_j M_{t_j} = u diag(wt / 2)`.
    pub fn euler_identity(&self, monoid: &Monoid) -> Outcome {
        let trunc = monoid.truncation();
        let mut lhs = map_entries(&self.u, |e| e.shift(1));
        for (a, m) in self.q.iter().enumerate() {
            lhs = lhs.add(&m.scale(&(q(monoid.curves().qc_weights[a]) / q(2))));
        }
        for (j, (m, d)) in self.t.iter().zip(monoid.t_degrees()).enumerate() {
            let mut key = trunc.zero_key();
            key.t[j] = 1;
            let tj = ULaurent::from_series(
                0,
                crate::scalars::QSeries::monomial(trunc, key, q(d) / q(2)),
            );
            lhs = lhs.add(&map_entries(m, |e| e.mul(&tj)));
        }
        let wt = monoid.basis_weights();
        let zero = ULaurent::zero(trunc);
        let rhs = Mat::from_fn(monoid.mu(), monoid.mu(), |i, k| {
            if i == k {
                ULaurent::from_laurent(trunc, &Laurent::monomial(1, q(wt[i]) / q(2)))
            } else {
                zero.clone()
            }
        });
        match first_nonzero(monoid, &lhs.sub(&rhs)) {
            None => Outcome::new("euler identity", true, "holds"),
            Some(e) => Outcome::new("euler identity", false, e),
        }
    }

    /// Entry `(i, k)` of a q-direction matrix has weight `2 + wt_k - wt_i`,
    /// of a t-direction matrix `2 - deg t_j + wt_k - wt_i`, of `V` `wt_k - wt_i`.
    pub fn homogeneity(&self, monoid: &Monoid) -> Outcome {
        let wt = monoid.basis_weights();
        let degrees = monoid.t_degrees();
        let check = |m: &Mat<ULaurent>, shift: i64, label: String| -> Option<String> {
            for (i, k, e) in m.entries() {
                for (j, s) in e.terms() {
                    for (key, _) in s.terms() {
                        let w =
                            monoid.weight(&monoid.shift(&monoid.unit(), key)) + 2 * i64::from(j);
                        if w != shift + wt[k] - wt[i] {
                            return Some(format!(
                                "{label} entry ({}, {}) has a term of weight {w}",
                                i + 1,
                                k + 1
                            ));
                        }
                    }
                }
            }
            None
        };
        let mut failures = Vec::new();
        for (a, m) in self.q.iter().enumerate() {
            failures.extend(check(m, 2, format!("q{}", a + 1)));
        }
        for (j, m) in self.t.iter().enumerate() {
            failures.extend(check(
                m,
                2 - degrees[j],
                format!("t{}", monoid.t_directions()[j] + 1),
            ));
        }
        failures.extend(check(&self.u, 0, "u".into()));
        match failures.first() {
            None => Outcome::new("connection homogeneity", true, "every entry is homogeneous"),
            Some(f) => Outcome::new("connection homogeneity", false, f.clone()),
        }
    }

    /// Every q-direction entry has u-powers in `{0, 1}`.
    pub fn u_powers(&self, monoid: &Monoid) -> Outcome {
        for (a, m) in self.q.iter().enumerate() {
            for (i, k, e) in m.entries() {
                if e.min_power().is_some_and(|p| p < 0) || e.max_power().is_some_and(|p| p > 1) {
                    return Outcome::new(
                        "u-powers of the connection",
                        false,
                        format!(
                            "q{} entry ({}, {}) = {}",
                            a + 1,
                            i + 1,
                            k + 1,
                            monoid.render_scalar(e)
                        ),
                    );
                }
            }
        }
        Outcome::new("u-powers of the connection", true, "all in [0, 1]")
    }

    /// For semi-Fano fans the first row of each `M_a` at `t = 0` only involves
    /// classes of anticanonical weight above 2.
    pub fn semi_fano_first_row(&self, monoid: &Monoid) -> Outcome {
        let name = "semi-Fano first row";
        if !monoid.curves().is_semi_fano() {
            return Outcome::new(name, true, "not applicable: fan is not semi-Fano");
        }
        for (a, m) in self.q.iter().enumerate() {
            for k in 0..monoid.mu() {
                for (key, c) in m.get(0, k).by_key() {
                    if key.t_order() == 0 && monoid.curves().qc(&key.q) <= 2 && !c.is_zero() {
                        return Outcome::new(
                            name,
                            false,
                            format!("q{} entry (1, {}) has class {:?}", a + 1, k + 1, key.q),
                        );
                    }
                }
            }
        }
        Outcome::new(
            name,
            true,
            "first rows lie in the ideal of classes of weight > 2",
        )
    }
}

/// The residue `N_a`: the `q = t = 0` part of `M_a`, which must be constant in `u`.
pub fn residues(monoid: &Monoid, conn: &Connection) -> Result<Vec<Mat<Q>>> {
    let zero_key = monoid.truncation().zero_key();
    conn.q
        .iter()
        .enumerate()
        .map(|(a, m)| {
            for (i, k, e) in m.entries() {
                let at0 = e.at_key(&zero_key);
                if at0.terms().any(|(j, _)| j != 0) {
                    return Err(Error::Model(format!(
                        "residue of q{} has u-dependence at entry ({}, {})",
                        a + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
            Ok(m.map(|e| e.at_key(&zero_key).coeff(0)))
        })
        .collect()
}

/// Nilpotency and pairwise commutation of the residues.
pub fn residue_checks(residues: &[Mat<Q>]) -> Vec<Outcome> {
    let mut out = Vec::new();
    for (a, n) in residues.iter().enumerate() {
        let mut power = n.clone();
        for _ in 1..n.rows() {
            power = power.mul(n);
        }
        out.push(Outcome::new(
            format!("residue q{} nilpotent", a + 1),
            power.is_zero(),
            if power.is_zero() {
                "N^mu = 0"
            } else {
                "N^mu != 0"
            },
        ));
    }
    for a in 0..residues.len() {
        for b in a + 1..residues.len() {
            let c = residues[a].commutator(&residues[b]);
            out.push(Outcome::new(
                format!("residues q{} and q{} commute", a + 1, b + 1),
                c.is_zero(),
                if c.is_zero() {
                    "[N_a, N_b] = 0"
                } else {
                    "[N_a, N_b] != 0"
                },
            ));
        }
    }
    out
}

/// Entry of a matrix at one q/t monomial, as a Laurent polynomial in `u`.
pub fn entry_at(m: &Mat<ULaurent>, i: usize, k: usize, key: &Key) -> Laurent {
    m.get(i, k).at_key(key)
}

/// Runs every structural check on a computed connection.
pub fn check_connection(monoid: &Arc<Monoid>, conn: &Connection) -> Result<Vec<Outcome>> {
    let mut out = conn.curvature(monoid);
    out.extend(conn.extended_flatness(monoid));
    out.push(conn.euler_identity(monoid));
    out.push(conn.homogeneity(monoid));
    out.push(conn.u_powers(monoid));
    out.push(conn.semi_fano_first_row(monoid));
    let n = residues(monoid, conn)?;
    out.extend(residue_checks(&n));
    Ok(out)
}

/// Whether a rational matrix is zero (used by callers comparing residues).
pub fn is_zero_matrix(m: &Mat<Q>) -> bool {
    m.entries().all(|(_, _, x)| Zero::is_zero(x))
}
