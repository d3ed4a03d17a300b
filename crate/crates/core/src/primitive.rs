//! Flat frame (Deligne extension), Birkhoff factorization, primitive form,
//! the flat unit section in the log variables, and the period (mirror) map.
//!
//! Everything here lives at `t = 0` and works with matrices graded by curve
//! class: `X = sum_e X_e q^e` with `X_e` a matrix of u-Laurent polynomials.

use crate::error::{Error, Result};
use crate::gaussmanin::{Connection, Outcome};
use crate::monoidring::Monoid;
use crate::scalars::{q, Key, Laurent, LogPoly, Mat, QSeries, Ring, ULaurent, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A matrix series in the q-variables, truncated at `lambda <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded {
    mu: usize,
    lambda: Vec<i64>,
    order: i64,
    terms: BTreeMap<Vec<i64>, Mat<Laurent>>,
}

impl Graded {
    pub fn zero(mu: usize, lambda: &[i64], order: i64) -> Self {
        Graded {
            mu,
            lambda: lambda.to_vec(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(mu: usize, lambda: &[i64], order: i64) -> Self {
        let mut out = Self::zero(mu, lambda, order);
        out.set(vec![0; lambda.len()], Mat::identity(mu, &Laurent::one()));
        out
    }

    fn lambda_of(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.lambda).map(|(a, b)| a * b).sum()
    }

    fn zero_mat(&self) -> Mat<Laurent> {
        Mat::filled(self.mu, self.mu, &Laurent::zero())
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn get(&self, e: &[i64]) -> Mat<Laurent> {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.zero_mat())
    }

    pub fn set(&mut self, e: Vec<i64>, m: Mat<Laurent>) {
        if m.is_zero() || self.lambda_of(&e) > self.order {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, m);
        }
    }

    fn add_at(&mut self, e: Vec<i64>, m: &Mat<Laurent>) {
        let next = self.get(&e).add(m);
        self.set(e, next);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Mat<Laurent>)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, m) in other.terms() {
            out.add_at(e.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.map(|x| x.neg()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.mu, &self.lambda, self.order);
        for (e1, a) in self.terms() {
            for (e2, b) in other.terms() {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                if out.lambda_of(&e) <= out.order {
                    out.add_at(e, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        let mut out = Self::zero(self.mu, &self.lambda, self.order);
        for (e, m) in self.terms() {
            out.set(e.clone(), m.map(&f));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.mu, &self.lambda, self.order);
        for (e, m) in self.terms() {
            out.set(e.clone(), m.transpose());
        }
        out
    }

    /// `q_a d/dq_a`.
    pub fn log_derivative(&self, a: usize) -> Self {
        let mut out = Self::zero(self.mu, &self.lambda, self.order);
        for (e, m) in self.terms() {
            out.set(e.clone(), m.scale(&q(e[a])));
        }
        out
    }

    pub fn negative_part(&self) -> Self {
        self.map(|x| x.negative_part())
    }

    pub fn nonnegative_part(&self) -> Self {
        self.map(|x| x.nonnegative_part())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inverse of a series with identity constant term.
    pub fn inverse(&self) -> Result<Self> {
        let zero = vec![0; self.lambda.len()];
        if self.get(&zero) != Mat::identity(self.mu, &Laurent::one()) {
            return Err(Error::Model(
                "graded inverse needs identity constant term".into(),
            ));
        }
        let x = {
            let mut x = self.clone();
            x.terms.remove(&zero);
            x
        };
        // (1 + x)^-1 = sum (-x)^k, finite under the truncation.
        let mut out = Self::identity(self.mu, &self.lambda, self.order);
        let mut power = out.clone();
        loop {
            power = power.mul(&x).map(|c| c.neg());
            if power.is_zero() {
                return Ok(out);
            }
            out = out.add(&power);
        }
    }

    pub fn column(
        &self,
        k: usize,
        trunc: &std::sync::Arc<crate::scalars::Truncation>,
    ) -> Vec<ULaurent> {
        (0..self.mu)
            .map(|i| {
                let mut out = ULaurent::zero(trunc);
                for (e, m) in self.terms() {
                    let key = Key::new(e.clone(), vec![0; trunc.t_count]);
                    for (j, c) in m.get(i, k).terms() {
                        out.add_term(j, key.clone(), c.clone());
                    }
                }
                out
            })
            .collect()
    }

    pub fn to_matrix(&self, trunc: &std::sync::Arc<crate::scalars::Truncation>) -> Mat<ULaurent> {
        let cols: Vec<Vec<ULaurent>> = (0..self.mu).map(|k| self.column(k, trunc)).collect();
        Mat::from_columns(&cols)
    }

    /// The `t = 0` part of a matrix over `ULaurent`.
    pub fn from_matrix(m: &Mat<ULaurent>, lambda: &[i64], order: i64) -> Self {
        let mu = m.rows();
        let mut out = Self::zero(mu, lambda, order);
        for (i, k, e) in m.entries() {
            for (key, c) in e.by_key() {
                if key.t_order() != 0 {
                    continue;
                }
                let mut cur = out.get(&key.q);
                cur.set(i, k, cur.get(i, k).add(&c));
                out.set(key.q.clone(), cur);
            }
        }
        out
    }

    /// Classes that occur, in increasing `(lambda, coordinates)` order.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.terms.keys().cloned().collect();
        out.sort_by_key(|e| (self.lambda_of(e), e.clone()));
        out
    }
}

fn ad(n: &Mat<Laurent>, x: &Mat<Laurent>) -> Mat<Laurent> {
    n.mul(x).sub(&x.mul(n))
}

fn rational_to_laurent(m: &Mat<Q>) -> Mat<Laurent> {
    m.map(|x| Laurent::constant(x.clone()))
}

/// The q-direction connection matrices at `t = 0`, graded by class.
pub fn graded_connection(monoid: &Monoid, conn: &Connection) -> Vec<Graded> {
    let trunc = monoid.truncation();
    conn.q
        .iter()
        .map(|m| Graded::from_matrix(m, &trunc.lambda, trunc.order))
        .collect()
}

/// Solves `u d_a A + M_a A = A N_a` for all `a` with `A = Id` at `q = 0`,
/// class by class in `(lambda, coordinates)` order.
pub fn deligne_extend(monoid: &Monoid, m: &[Graded], n: &[Mat<Q>]) -> Result<Graded> {
    let trunc = monoid.truncation();
    let mu = monoid.mu();
    let mut a_mat = Graded::identity(mu, &trunc.lambda, trunc.order);
    let nl: Vec<Mat<Laurent>> = n.iter().map(rational_to_laurent).collect();
    for e in monoid.curves().classes_up_to(trunc.order) {
        if e.iter().all(|x| *x == 0) {
            continue;
        }
        // R_a = -sum_{e' != 0} M_{a,e'} A_{e - e'}.
        let rhs: Vec<Mat<Laurent>> = m
            .iter()
            .map(|ma| {
                let mut acc = a_mat.zero_mat();
                for (e1, block) in ma.terms() {
                    if e1.iter().all(|x| *x == 0) {
                        continue;
                    }
                    let rest: Vec<i64> = e.iter().zip(e1).map(|(x, y)| x - y).collect();
                    if let Some(prev) = a_mat.terms.get(&rest) {
                        acc = acc.sub(&block.mul(prev));
                    }
                }
                acc
            })
            .collect();
        let Some(lead) = e.iter().position(|x| *x != 0) else {
            unreachable!()
        };
        // (c u + ad N) A_e = R  =>  A_e = sum_k (-1)^k (c u)^(-k-1) ad_N^k R.
        let c = q(e[lead]);
        let mut term = rhs[lead].clone();
        let mut solution = a_mat.zero_mat();
        for k in 0..=2 * mu {
            if term.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 { q(1) } else { q(-1) };
            let factor = Laurent::monomial(-(k as i32) - 1, sign / c.pow(k as i32 + 1));
            solution = solution.add(&term.map(|x| x.mul(&factor)));
            term = ad(&nl[lead], &term);
        }
        for (b, r) in rhs.iter().enumerate() {
            let lhs = solution
                .map(|x| x.shift(1).scale(&q(e[b])))
                .add(&ad(&nl[b], &solution));
            if lhs != *r {
                return Err(Error::Model(format!(
                    "flat frame equations disagree in direction q{} at class {e:?}",
                    b + 1
                )));
            }
        }
        a_mat.set(e, solution);
    }
    Ok(a_mat)
}

/// `u d_a A + M_a A - A N_a = 0` for every direction.
pub fn flatness_residual(m: &[Graded], n: &[Mat<Q>], a: &Graded) -> Vec<Outcome> {
    m.iter()
        .zip(n)
        .enumerate()
        .map(|(idx, (ma, na))| {
            let mut nag = Graded::zero(a.mu, &a.lambda, a.order);
            nag.set(vec![0; a.lambda.len()], rational_to_laurent(na));
            let res = a
                .log_derivative(idx)
                .map(|x| x.shift(1))
                .add(&ma.mul(a))
                .sub(&a.mul(&nag));
            let name = format!("flat frame residual q{}", idx + 1);
            match res.classes().first() {
                None => Outcome::new(name, true, "vanishes"),
                Some(e) => Outcome::new(name, false, format!("nonzero at class {e:?}")),
            }
        })
        .collect()
}

/// Column `k` of `A` has weight `wt_k - wt_i` in row `i`.
pub fn frame_homogeneity(monoid: &Monoid, a: &Graded) -> Outcome {
    let wt = monoid.basis_weights();
    for (e, m) in a.terms() {
        let qc = monoid.curves().qc(e);
        for (i, k, x) in m.entries() {
            for (j, _) in x.terms() {
                if qc + 2 * i64::from(j) != wt[k] - wt[i] {
                    return Outcome::new(
                        "flat frame homogeneity",
                        false,
                        format!("entry ({}, {}) at class {e:?} has u^{j}", i + 1, k + 1),
                    );
                }
            }
        }
    }
    Outcome::new(
        "flat frame homogeneity",
        true,
        "every column is homogeneous",
    )
}

/// `A = C B^-1` with `B = Id + O(u^-1)` and `C` free of negative u-powers.
#[derive(Clone, Debug, PartialEq)]
pub struct BirkhoffPair {
    pub b: Graded,
    pub c: Graded,
}

/// Graded schedule: `C_e = B_e + sum_{e' != 0} A_e' B_{e - e'}`.
pub fn birkhoff(monoid: &Monoid, a: &Graded) -> Result<BirkhoffPair> {
    let mu = a.mu;
    let mut b = Graded::identity(mu, &a.lambda, a.order);
    let mut c = Graded::identity(mu, &a.lambda, a.order);
    for e in monoid.curves().classes_up_to(a.order) {
        if e.iter().all(|x| *x == 0) {
            continue;
        }
        let mut s = a.zero_mat();
        for (e1, block) in a.terms() {
            if e1.iter().all(|x| *x == 0) {
                continue;
            }
            let rest: Vec<i64> = e.iter().zip(e1).map(|(x, y)| x - y).collect();
            if let Some(prev) = b.terms.get(&rest) {
                s = s.add(&block.mul(prev));
            }
        }
        b.set(e.clone(), s.map(|x| x.negative_part().neg()));
        c.set(e, s.map(|x| x.nonnegative_part()));
    }
    if c != a.mul(&b) {
        return Err(Error::Model(
            "Birkhoff factors do not multiply back to the frame".into(),
        ));
    }
    Ok(BirkhoffPair { b, c })
}

/// Fixed-point schedule `B <- Id - neg((A - Id) B)`, run to stability.
pub fn birkhoff_fixed_point(a: &Graded) -> Result<BirkhoffPair> {
    let id = Graded::identity(a.mu, &a.lambda, a.order);
    let shifted = a.sub(&id);
    let mut b = id.clone();
    for _ in 0..a.order + 3 {
        let next = id.sub(&shifted.mul(&b).negative_part());
        if next == b {
            let c = a.mul(&b);
            return Ok(BirkhoffPair { b, c });
        }
        b = next;
    }
    Err(Error::Model("Birkhoff iteration did not stabilise".into()))
}

pub fn birkhoff_checks(pair: &BirkhoffPair, other: &BirkhoffPair) -> Vec<Outcome> {
    let neg_c = pair.c.negative_part();
    let b_pos = pair.b.nonnegative_part();
    let id = Graded::identity(pair.b.mu, &pair.b.lambda, pair.b.order);
    vec![
        Outcome::new("Birkhoff C has no negative u-powers", neg_c.is_zero(), ""),
        Outcome::new("Birkhoff B is Id plus negative u-powers", b_pos == id, ""),
        Outcome::new(
            "Birkhoff schedules agree",
            pair == other,
            if pair == other {
                "graded and fixed-point factors coincide"
            } else {
                "factors differ"
            },
        ),
    ]
}

/// `exp(-sum_a l_a N_a / u) e_1` in the flat-frame basis.
pub fn flat_unit(monoid: &Monoid, n: &[Mat<Q>]) -> Vec<LogPoly<ULaurent>> {
    let trunc = monoid.truncation();
    let r = n.len();
    let mu = monoid.mu();
    let zero = ULaurent::zero(trunc);
    let one = ULaurent::one(trunc);
    let lp_zero = LogPoly::zero(r, zero.clone());
    let mut v: Vec<LogPoly<ULaurent>> = (0..mu)
        .map(|i| {
            if i == 0 {
                LogPoly::constant(r, one.clone())
            } else {
                lp_zero.clone()
            }
        })
        .collect();
    let mut total = v.clone();
    for k in 1..=mu {
        let factor = ULaurent::from_laurent(trunc, &Laurent::monomial(-1, q(-1) / q(k as i64)));
        let next: Vec<LogPoly<ULaurent>> = (0..mu)
            .map(|i| {
                let mut acc = lp_zero.clone();
                for (a, na) in n.iter().enumerate() {
                    let ell = LogPoly::var(r, a, factor.clone());
                    for (j, vj) in v.iter().enumerate() {
                        let c = na.get(i, j);
                        if Zero::is_zero(c) {
                            continue;
                        }
                        acc = acc.add(&ell.mul(vj).scale(c));
                    }
                }
                acc
            })
            .collect();
        if next.iter().all(|x| x.is_zero()) {
            break;
        }
        total = total.iter().zip(&next).map(|(x, y)| x.add(y)).collect();
        v = next;
    }
    total
}

/// One flat coordinate: `log tau_i = sum_a ell[a] l_a + series` when
/// `logarithmic`, otherwise `tau_i = series`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatCoordinate {
    pub index: usize,
    pub logarithmic: bool,
    pub ell: Vec<Q>,
    pub series: QSeries,
}

impl FlatCoordinate {
    /// `tau_i` itself: `q^ell exp(series)` or the series.
    pub fn tau(&self, monoid: &Monoid) -> Result<QSeries> {
        if !self.logarithmic {
            return Ok(self.series.clone());
        }
        let exps: Vec<i64> = self
            .ell
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer().try_into().unwrap_or(i64::MAX))
                } else {
                    Err(Error::Model("non-integral log coefficient".into()))
                }
            })
            .collect::<Result<_>>()?;
        let key = Key::new(exps, vec![0; monoid.truncation().t_count]);
        Ok(self.series.exp()?.shift(&key))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMap {
    pub coordinates: Vec<FlatCoordinate>,
    /// Primitive form in the flat-frame basis, `B e_1`.
    pub zeta_flat: Vec<ULaurent>,
    /// Primitive form in the good basis, `C e_1`.
    pub zeta_basis: Vec<ULaurent>,
}

/// The `u^0` part of `u (zeta - 1)` in the flat-frame basis.
pub fn period_map(monoid: &Monoid, pair: &BirkhoffPair, n: &[Mat<Q>]) -> Result<PeriodMap> {
    let trunc = monoid.truncation();
    let zeta_flat = pair.b.column(0, trunc);
    let zeta_basis = pair.c.column(0, trunc);
    let unit = flat_unit(monoid, n);
    let r = n.len();
    let wt = monoid.basis_weights();
    let mut coordinates = Vec::new();
    for i in 1..monoid.mu() {
        // u (B e_1 - unit): the u^0 part, split into l-linear and series parts.
        let mut series = QSeries::zero(trunc);
        for (j, s) in zeta_flat[i].terms() {
            if j == -1 {
                series = series.add(s);
            }
        }
        let mut ell = vec![Q::zero(); r];
        for (exps, c) in unit[i].terms() {
            let deg: u32 = exps.iter().sum();
            for (j, s) in c.terms() {
                if j + 1 != 0 {
                    continue;
                }
                if deg != 1
                    || s.len() != 1
                    || !Zero::is_zero(&(s.constant_term() - s.terms().next().unwrap().1))
                {
                    return Err(Error::Model(format!(
                        "flat unit contributes a non-linear u^0 term at index {}",
                        i + 1
                    )));
                }
                let a = exps.iter().position(|x| *x == 1).unwrap();
                ell[a] -= s.constant_term();
            }
        }
        coordinates.push(FlatCoordinate {
            index: i,
            logarithmic: wt[i] == 2,
            ell,
            series,
        });
    }
    Ok(PeriodMap {
        coordinates,
        zeta_flat,
        zeta_basis,
    })
}

/// For semi-Fano fans: `zeta = phi_1` and only weight-2 coordinates are corrected.
pub fn semi_fano_checks(monoid: &Monoid, pm: &PeriodMap) -> Vec<Outcome> {
    if !monoid.curves().is_semi_fano() {
        return vec![Outcome::new(
            "semi-Fano period map",
            true,
            "not applicable: fan is not semi-Fano",
        )];
    }
    let trunc = monoid.truncation();
    let trivial_zeta = pm.zeta_basis.iter().enumerate().all(|(i, c)| {
        *c == if i == 0 {
            ULaurent::one(trunc)
        } else {
            ULaurent::zero(trunc)
        }
    });
    let offenders: Vec<String> = pm
        .coordinates
        .iter()
        .filter(|c| !c.logarithmic && !c.series.is_zero())
        .map(|c| format!("tau_{}", c.index + 1))
        .collect();
    let weight_zero = pm
        .coordinates
        .iter()
        .filter(|c| c.logarithmic)
        .all(|c| c.series.terms().all(|(k, _)| monoid.curves().qc(&k.q) == 0));
    vec![
        Outcome::new(
            "primitive form is the unit",
            trivial_zeta,
            if trivial_zeta {
                "zeta = phi_1"
            } else {
                "zeta != phi_1"
            },
        ),
        Outcome::new(
            "non-logarithmic flat coordinates vanish",
            offenders.is_empty(),
            if offenders.is_empty() {
                "all vanish".to_string()
            } else {
                offenders.join(", ")
            },
        ),
        Outcome::new(
            "log corrections have weight zero",
            weight_zero,
            if weight_zero {
                "series in weight-0 classes only"
            } else {
                "a correction has nonzero weight"
            },
        ),
    ]
}

/// Pairing shadow: `A(u)^-T G A(-u)^-1` has no negative u-powers and equals
/// `G` at `q = 0, u = 0`; also `N^T G = G N` for each residue.
pub fn pairing_shadow(a: &Graded, g: &Mat<Q>, n: &[Mat<Q>]) -> Result<Vec<Outcome>> {
    let inv = a.inverse()?;
    let mut gg = Graded::zero(a.mu, &a.lambda, a.order);
    gg.set(vec![0; a.lambda.len()], rational_to_laurent(g));
    let k = inv.transpose().mul(&gg).mul(&inv.map(|x| x.flip_u()));
    let negative_free = k.negative_part().is_zero();
    let leading = k
        .get(&vec![0; a.lambda.len()])
        .map(|x| Laurent::constant(x.coeff(0)));
    let leading_ok = leading == rational_to_laurent(g);
    let mut out = vec![
        Outcome::new(
            "pairing shadow has no negative u-powers",
            negative_free,
            if negative_free {
                "A(u)^-T G A(-u)^-1 is regular in u"
            } else {
                "negative u-powers present"
            },
        ),
        Outcome::new(
            "pairing shadow leading term",
            leading_ok,
            "q = 0, u = 0 part equals the Poincare pairing",
        ),
    ];
    for (idx, na) in n.iter().enumerate() {
        let ok = na.transpose().mul(g) == g.mul(na);
        out.push(Outcome::new(
            format!("residue q{} is self-adjoint", idx + 1),
            ok,
            "N^T G = G N",
        ));
    }
    Ok(out)
}

/// Coefficients of `x_a^k`, `k = 0..len`, in a q-series with all other
/// classes coordinates zero.
pub fn restrict_to_axis(series: &QSeries, a: usize, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (key, c) in series.terms() {
        let on_axis =
            key.q.iter().enumerate().all(|(b, x)| b == a || *x == 0) && key.t_order() == 0;
        if on_axis && key.q[a] >= 0 && (key.q[a] as usize) < len {
            out[key.q[a] as usize] += c;
        }
    }
    out
}

/// Coefficient-wise comparison of two one-variable series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub computed: Vec<Q>,
    pub expected: Vec<Q>,
    pub equal: bool,
}

pub fn compare(computed: Vec<Q>, expected: Vec<Q>) -> SeriesComparison {
    let equal = computed == expected;
    SeriesComparison {
        computed,
        expected,
        equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::gaussmanin::{connection, residues};
    use crate::hodge::{central_ring, Engine, PivotOrder};
    use crate::monoidring::MonoidOptions;
    use crate::scalars::univariate;
    use std::sync::Arc;

    struct Setup {
        monoid: Arc<Monoid>,
        m: Vec<Graded>,
        n: Vec<Mat<Q>>,
        a: Graded,
    }

    fn setup(fan: Fan, k: i64) -> Setup {
        let opts = MonoidOptions {
            truncation: k,
            ..MonoidOptions::default()
        };
        let monoid = Arc::new(Monoid::new(fan, &opts).unwrap());
        let engine = Engine::new(monoid.clone(), PivotOrder::Ascending);
        let conn = connection(&engine, false).unwrap();
        let n = residues(&monoid, &conn).unwrap();
        let m = graded_connection(&monoid, &conn);
        let a = deligne_extend(&monoid, &m, &n).unwrap();
        Setup { monoid, m, n, a }
    }

    #[test]
    fn flat_frame_is_flat() {
        for fan in [
            Fan::projective_space(1),
            Fan::projective_space(2),
            Fan::hirzebruch(2),
            Fan::p1_times_p1(),
            Fan::blowup_p2(),
        ] {
            let s = setup(fan, 4);
            for o in flatness_residual(&s.m, &s.n, &s.a) {
                assert!(o.pass, "{}: {}", o.name, o.detail);
            }
            assert!(frame_homogeneity(&s.monoid, &s.a).pass);
            let pair = birkhoff(&s.monoid, &s.a).unwrap();
            let other = birkhoff_fixed_point(&s.a).unwrap();
            for o in birkhoff_checks(&pair, &other) {
                assert!(o.pass, "{}", o.name);
            }
            let g = central_ring(&s.monoid).unwrap().pairing();
            for o in pairing_shadow(&s.a, &g, &s.n).unwrap() {
                assert!(o.pass, "{}: {}", o.name, o.detail);
            }
            let pm = period_map(&s.monoid, &pair, &s.n).unwrap();
            for o in semi_fano_checks(&s.monoid, &pm) {
                assert!(o.pass, "{}: {}", o.name, o.detail);
            }
        }
    }

    #[test]
    fn hirzebruch_mirror_map() {
        let k = 6;
        let s = setup(Fan::hirzebruch(2), k);
        let pair = birkhoff(&s.monoid, &s.a).unwrap();
        let pm = period_map(&s.monoid, &pair, &s.n).unwrap();
        let tau2 = pm.coordinates[0].tau(&s.monoid).unwrap();
        let computed = restrict_to_axis(&tau2, 1, k as usize + 1);
        // q = tau / (1 + tau)^2, reverted.
        let len = k as usize + 1;
        let mut t = univariate::identity(len);
        t = univariate::mul(&t, &univariate::binomial_power(&q(1), &q(-2), len));
        let expected = univariate::revert(&t).unwrap();
        assert_eq!(computed, expected);
        assert_eq!(computed[1..5], [q(1), q(2), q(5), q(14)]);
    }

    #[test]
    fn projective_plane_is_trivial() {
        let s = setup(Fan::projective_space(2), 5);
        let pair = birkhoff(&s.monoid, &s.a).unwrap();
        let pm = period_map(&s.monoid, &pair, &s.n).unwrap();
        assert!(pm.coordinates.iter().all(|c| c.series.is_zero()));
        assert_eq!(pm.coordinates[0].ell, vec![q(1)]);
    }
}
