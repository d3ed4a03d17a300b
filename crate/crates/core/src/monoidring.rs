//! Canonical monomials of the graded monoid `P_phi`, their products and
//! weights, elements with u-Laurent coefficients, and the text grammar
//! `c*z1^2*z4*q(1,0)*t1^2*u^-1`.

use crate::error::{Error, Result};
use crate::fan::{self, Fan, FultonOrder, ReferenceFrame, Wall};
use crate::lattice;
use crate::moricone::{self, CurveData, RayExcess};
use crate::scalars::{
    format_q_short, parse_q, Key, Laurent, QSeries, Ring, Truncation, ULaurent, Q,
};
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

/// A point of `P_phi`: lattice point `m`, excess class over `phi(m)`, and
/// exponents of the unfolding variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub m: Vec<i64>,
    pub excess: Vec<i64>,
    pub t: Vec<u32>,
}

/// Weight of an element: zero elements have no weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// Options fixing the coefficient ring of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidOptions {
    /// Keep classes with `lambda <= truncation`.
    pub truncation: i64,
    /// Add one unfolding variable per basis element of weight other than 2.
    pub include_t_directions: bool,
    /// Reference cone (index into the input cone list); defaults to `sigma_1`.
    pub reference_cone: Option<usize>,
    pub rank_bound: usize,
}

impl Default for MonoidOptions {
    fn default() -> Self {
        MonoidOptions {
            truncation: 8,
            include_t_directions: false,
            reference_cone: None,
            rank_bound: moricone::DEFAULT_RANK_BOUND,
        }
    }
}

/// The validated fan with everything needed to do arithmetic in `C[P_phi]`.
#[derive(Clone, Debug)]
pub struct Monoid {
    fan: Fan,
    walls: Vec<Wall>,
    order: FultonOrder,
    frame: ReferenceFrame,
    curves: CurveData,
    excess: RayExcess,
    cone_inverses: Vec<Vec<Vec<i64>>>,
    basis: Vec<Monomial>,
    t_directions: Vec<usize>,
    trunc: Arc<Truncation>,
}

impl Monoid {
    pub fn new(fan: Fan, options: &MonoidOptions) -> Result<Monoid> {
        if options.truncation < 0 {
            return Err(Error::Input("truncation order must be nonnegative".into()));
        }
        let report = fan::validate(&fan);
        if !report.passed() {
            return Err(Error::Validation(report.summary()));
        }
        let walls = fan::walls(&fan)?;
        let order = fan::fulton_order(&fan, &walls)?;
        let curves = moricone::curve_data_with_bound(&fan, &walls, options.rank_bound)?;
        let ref_cone = options.reference_cone.unwrap_or(order.cone_order[0]);
        let frame = fan::reference_frame(&fan, ref_cone)?;
        let excess = moricone::ray_excess(&fan, &curves, &frame)?;
        let cone_inverses = (0..fan.mu())
            .map(|c| lattice::inverse_unimodular(&fan.cone_matrix(c)).expect("smooth cone"))
            .collect();
        let r = curves.rank();
        let mut monoid = Monoid {
            fan,
            walls,
            order,
            frame,
            curves,
            excess,
            cone_inverses,
            basis: Vec::new(),
            t_directions: Vec::new(),
            trunc: Truncation::new(Vec::new(), 0, 0, 0),
        };
        monoid.basis = monoid
            .order
            .faces
            .iter()
            .map(|tau| {
                let m = (0..monoid.n())
                    .map(|i| tau.iter().map(|&s| monoid.fan.rays()[s][i]).sum())
                    .collect();
                Monomial {
                    m,
                    excess: vec![0; r],
                    t: Vec::new(),
                }
            })
            .collect();
        let weights = monoid.order.weights();
        if options.include_t_directions {
            monoid.t_directions = (0..weights.len()).filter(|&k| weights[k] != 2).collect();
        }
        let t_count = monoid.t_directions.len();
        monoid.trunc = Truncation::new(
            monoid.curves.lambda.clone(),
            options.truncation,
            t_count,
            u32::from(t_count > 0),
        );
        for b in &mut monoid.basis {
            b.t = vec![0; t_count];
        }
        Ok(monoid)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn order(&self) -> &FultonOrder {
        &self.order
    }

    pub fn frame(&self) -> &ReferenceFrame {
        &self.frame
    }

    pub fn curves(&self) -> &CurveData {
        &self.curves
    }

    pub fn ray_excess(&self) -> &RayExcess {
        &self.excess
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn n(&self) -> usize {
        self.fan.n()
    }

    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    /// Picard rank, the number of q-variables.
    pub fn rank(&self) -> usize {
        self.curves.rank()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_weights(&self) -> Vec<i64> {
        self.order.weights()
    }

    /// Basis indices carrying an unfolding variable `t_k`.
    pub fn t_directions(&self) -> &[usize] {
        &self.t_directions
    }

    /// `deg t_j = 2 - weight(phi_j)`.
    pub fn t_degrees(&self) -> Vec<i64> {
        let w = self.basis_weights();
        self.t_directions.iter().map(|&k| 2 - w[k]).collect()
    }

    pub fn unit(&self) -> Monomial {
        Monomial {
            m: vec![0; self.n()],
            excess: vec![0; self.rank()],
            t: vec![0; self.t_directions.len()],
        }
    }

    /// First maximal cone containing `m`.
    pub fn containing_cone(&self, m: &[i64]) -> Option<usize> {
        self.cone_inverses
            .iter()
            .position(|u| lattice::mat_vec(u, m).iter().all(|x| *x >= 0))
    }

    /// Nonnegative ray exponents of `m` in its cone (the values of `phi`).
    pub fn beta(&self, m: &[i64]) -> Vec<i64> {
        let c = self
            .containing_cone(m)
            .expect("complete fan covers every point");
        let coords = lattice::mat_vec(&self.cone_inverses[c], m);
        let mut out = vec![0i64; self.fan.d()];
        for (i, &s) in self.fan.max_cones()[c].iter().enumerate() {
            out[s] = coords[i];
        }
        out
    }

    /// Exponents of `m` on the reference rays, extended linearly.
    pub fn beta_ref(&self, m: &[i64]) -> Vec<i64> {
        let coords = self.frame.coords(m);
        let mut out = vec![0i64; self.fan.d()];
        for (i, &s) in self.frame.rays.iter().enumerate() {
            out[s] = coords[i];
        }
        out
    }

    /// `z^alpha q^p t^t` as a canonical monomial, `None` when it vanishes.
    pub fn canonicalize(&self, alpha: &[i64], p: &[i64], t: &[u32]) -> Option<Monomial> {
        let m: Vec<i64> = (0..self.n())
            .map(|i| {
                alpha
                    .iter()
                    .zip(self.fan.rays())
                    .map(|(a, r)| a * r[i])
                    .sum()
            })
            .collect();
        let beta = self.beta(&m);
        let diff: Vec<i64> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let excess: Vec<i64> = self
            .curves
            .kernel_coords(&diff)
            .iter()
            .zip(p)
            .map(|(a, b)| a + b)
            .collect();
        if !self.curves.member(&excess) {
            return None;
        }
        Some(Monomial {
            m,
            excess,
            t: t.to_vec(),
        })
    }

    pub fn ray(&self, s: usize) -> Monomial {
        let mut alpha = vec![0; self.fan.d()];
        alpha[s] = 1;
        self.canonicalize(
            &alpha,
            &vec![0; self.rank()],
            &vec![0; self.t_directions.len()],
        )
        .expect("rays are monomials")
    }

    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let alpha: Vec<i64> = self
            .beta(&a.m)
            .iter()
            .zip(self.beta(&b.m))
            .map(|(x, y)| x + y)
            .collect();
        let p: Vec<i64> = a.excess.iter().zip(&b.excess).map(|(x, y)| x + y).collect();
        let t: Vec<u32> = a.t.iter().zip(&b.t).map(|(x, y)| x + y).collect();
        self.canonicalize(&alpha, &p, &t)
    }

    /// Multiplies by `q^p t^e`.
    pub fn shift(&self, a: &Monomial, key: &Key) -> Monomial {
        Monomial {
            m: a.m.clone(),
            excess: a.excess.iter().zip(&key.q).map(|(x, y)| x + y).collect(),
            t: a.t.iter().zip(&key.t).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn weight(&self, a: &Monomial) -> i64 {
        let z: i64 = self.beta(&a.m).iter().sum();
        let t: i64 =
            a.t.iter()
                .zip(self.t_degrees())
                .map(|(e, d)| i64::from(*e) * d)
                .sum();
        2 * z + self.curves.qc(&a.excess) + t
    }

    /// Ray-exponent degree `|beta(m)|`.
    pub fn z_degree(&self, m: &[i64]) -> i64 {
        self.beta(m).iter().sum()
    }

    /// Excess over the linear extension of `phi` from the reference cone.
    pub fn excess_ref(&self, a: &Monomial) -> Vec<i64> {
        let diff: Vec<i64> = self
            .beta(&a.m)
            .iter()
            .zip(self.beta_ref(&a.m))
            .map(|(x, y)| x - y)
            .collect();
        self.curves
            .kernel_coords(&diff)
            .iter()
            .zip(&a.excess)
            .map(|(x, y)| x + y)
            .collect()
    }

    /// Coefficient key of the monomial's q/t part.
    pub fn key(&self, a: &Monomial) -> Key {
        Key::new(a.excess.clone(), a.t.clone())
    }

    /// The monomial with its q/t part removed.
    pub fn strip(&self, a: &Monomial) -> Monomial {
        Monomial {
            m: a.m.clone(),
            excess: vec![0; self.rank()],
            t: vec![0; self.t_directions.len()],
        }
    }

    pub fn keeps(&self, a: &Monomial) -> bool {
        self.trunc.keeps(&self.key(a))
    }

    /// Lattice points with `|beta(m)| = degree`, sorted.
    pub fn points_of_degree(&self, degree: i64) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut out = BTreeSet::new();
        if degree < 0 {
            return Vec::new();
        }
        for cone in self.fan.max_cones() {
            for parts in compositions(degree, n) {
                let m: Vec<i64> = (0..n)
                    .map(|i| {
                        parts
                            .iter()
                            .zip(cone)
                            .map(|(c, &s)| c * self.fan.rays()[s][i])
                            .sum()
                    })
                    .collect();
                out.insert(m);
            }
        }
        out.into_iter().collect()
    }

    pub fn element_weight(&self, x: &HodgeElement) -> Weight {
        let mut found = None;
        for (mono, coeff) in x.terms() {
            for (j, _) in coeff.terms() {
                let w = self.weight(mono) + 2 * i64::from(j);
                match found {
                    None => found = Some(w),
                    Some(v) if v != w => return Weight::Inhomogeneous,
                    _ => {}
                }
            }
        }
        found.map_or(Weight::Zero, Weight::Homogeneous)
    }

    pub fn mul_elements(&self, a: &HodgeElement, b: &HodgeElement) -> HodgeElement {
        let mut out = HodgeElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some(m) = self.mul(ma, mb) {
                    if self.keeps(&m) {
                        out.add_term(m, &ca.mul(cb));
                    }
                }
            }
        }
        out
    }

    /// The element `sum c q^p t^e u^j` at `m = 0`.
    pub fn element_from_scalar(&self, x: &ULaurent) -> HodgeElement {
        let mut out = HodgeElement::zero();
        for (j, s) in x.terms() {
            for (key, c) in s.terms() {
                let mono = self.shift(&self.unit(), key);
                out.add_term(mono, &Laurent::monomial(j, c.clone()));
            }
        }
        out
    }

    /// Inverse of [`Monoid::element_from_scalar`]; fails on terms with `m != 0`.
    pub fn scalar_from_element(&self, x: &HodgeElement) -> Result<ULaurent> {
        let mut out = ULaurent::zero(&self.trunc);
        for (mono, coeff) in x.terms() {
            if mono.m.iter().any(|v| *v != 0) {
                return Err(Error::Input("expected a scalar, found a z-monomial".into()));
            }
            for (j, c) in coeff.terms() {
                out.add_term(j, self.key(mono), c.clone());
            }
        }
        Ok(out)
    }

    pub fn render_monomial(&self, a: &Monomial) -> String {
        let mut factors = Vec::new();
        for (s, e) in self.beta(&a.m).iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("z{}", s + 1)),
                e => factors.push(format!("z{}^{e}", s + 1)),
            }
        }
        if a.excess.iter().any(|x| *x != 0) {
            let items: Vec<String> = a.excess.iter().map(|x| x.to_string()).collect();
            factors.push(format!("q({})", items.join(",")));
        }
        for (j, e) in a.t.iter().enumerate() {
            let k = self.t_directions[j] + 1;
            match e {
                0 => {}
                1 => factors.push(format!("t{k}")),
                e => factors.push(format!("t{k}^{e}")),
            }
        }
        factors.join("*")
    }

    /// Terms are listed by z-degree, then ray exponents (`z1` before `z3`),
    /// then q, t and u exponents.
    pub fn render(&self, x: &HodgeElement) -> String {
        let mut sorted: Vec<(&Monomial, &Laurent)> = x.terms().collect();
        sorted.sort_by_cached_key(|(mono, _)| {
            let beta = self.beta(&mono.m);
            let degree: i64 = beta.iter().sum();
            (
                degree,
                std::cmp::Reverse(beta),
                mono.excess.clone(),
                mono.t.clone(),
            )
        });
        let mut terms = Vec::new();
        for (mono, coeff) in sorted {
            for (j, c) in coeff.terms() {
                let mut body = self.render_monomial(mono);
                let u = match j {
                    0 => String::new(),
                    1 => "u".into(),
                    j => format!("u^{j}"),
                };
                if !u.is_empty() {
                    if !body.is_empty() {
                        body.push('*');
                    }
                    body.push_str(&u);
                }
                let mut term = String::new();
                if body.is_empty() {
                    term.push_str(&format_q_short(c));
                } else if c.is_one() {
                    term.push_str(&body);
                } else {
                    let _ = write!(term, "{}*{body}", format_q_short(c));
                }
                terms.push(term);
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn render_scalar(&self, x: &ULaurent) -> String {
        self.render(&self.element_from_scalar(x))
    }

    pub fn parse(&self, text: &str) -> Result<HodgeElement> {
        let text = text.trim();
        let mut out = HodgeElement::zero();
        if text == "0" {
            return Ok(out);
        }
        for term in text.split(" + ") {
            let (mono, coeff) = self.parse_term(term.trim())?;
            if let Some(mono) = mono {
                out.add_term(mono, &coeff);
            }
        }
        Ok(out)
    }

    pub fn parse_scalar(&self, text: &str) -> Result<ULaurent> {
        self.scalar_from_element(&self.parse(text)?)
    }

    fn parse_term(&self, term: &str) -> Result<(Option<Monomial>, Laurent)> {
        let bad = |why: &str| Error::Input(format!("cannot parse term {term:?}: {why}"));
        let int = |s: &str| -> Result<i64> { s.parse().map_err(|_| bad("bad integer")) };
        let split_power = |s: &str| -> Result<(String, i64)> {
            match s.split_once('^') {
                Some((b, e)) => Ok((b.to_string(), int(e)?)),
                None => Ok((s.to_string(), 1)),
            }
        };
        let mut coeff = Q::one();
        let mut alpha = vec![0i64; self.fan.d()];
        let mut p = vec![0i64; self.rank()];
        let mut t = vec![0u32; self.t_directions.len()];
        let mut u = 0i32;
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        for (pos, factor) in term.split('*').enumerate() {
            let first = factor.chars().next().ok_or_else(|| bad("empty factor"))?;
            if first.is_ascii_digit() || first == '-' {
                if pos != 0 {
                    return Err(bad("coefficient must come first"));
                }
                coeff = parse_q(factor)?;
            } else if let Some(inner) = factor.strip_prefix("q(").and_then(|s| s.strip_suffix(')'))
            {
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != self.rank() {
                    return Err(bad("q class has the wrong length"));
                }
                for (a, s) in parts.iter().enumerate() {
                    p[a] += int(s.trim())?;
                }
            } else if let Some(rest) = factor.strip_prefix('z') {
                let (idx, e) = split_power(rest)?;
                let s = int(&idx)?;
                if s < 1 || s as usize > self.fan.d() {
                    return Err(bad("no such ray"));
                }
                alpha[s as usize - 1] += e;
            } else if let Some(rest) = factor.strip_prefix('t') {
                let (idx, e) = split_power(rest)?;
                let k = int(&idx)? - 1;
                let j = self
                    .t_directions
                    .iter()
                    .position(|&d| d as i64 == k)
                    .ok_or_else(|| bad("no such unfolding variable"))?;
                t[j] += u32::try_from(e).map_err(|_| bad("negative t exponent"))?;
            } else if let Some(rest) = factor.strip_prefix('u') {
                let e = if rest.is_empty() {
                    1
                } else {
                    int(rest.strip_prefix('^').ok_or_else(|| bad("bad u power"))?)?
                };
                u += i32::try_from(e).map_err(|_| bad("u power out of range"))?;
            } else {
                return Err(bad("unknown factor"));
            }
        }
        Ok((
            self.canonicalize(&alpha, &p, &t),
            Laurent::monomial(u, coeff),
        ))
    }

    /// `phi_k` as an element.
    pub fn basis_element(&self, k: usize) -> HodgeElement {
        HodgeElement::monomial(self.basis[k].clone(), Laurent::one())
    }

    /// Converts a coordinate vector on the basis into an element.
    pub fn from_coords(&self, coords: &[ULaurent]) -> HodgeElement {
        let mut out = HodgeElement::zero();
        for (k, c) in coords.iter().enumerate() {
            out = out.add(&self.mul_elements(&self.element_from_scalar(c), &self.basis_element(k)));
        }
        out
    }

    pub fn zero_scalar(&self) -> ULaurent {
        ULaurent::zero(&self.trunc)
    }

    pub fn one_scalar(&self) -> ULaurent {
        ULaurent::one(&self.trunc)
    }

    /// `q^p` as a series.
    pub fn q_monomial(&self, p: &[i64]) -> QSeries {
        let key = Key::new(p.to_vec(), vec![0; self.t_directions.len()]);
        QSeries::monomial(&self.trunc, key, Q::one())
    }
}

/// All `parts`-tuples of nonnegative integers summing to `total`.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Finite combination of monomials with u-Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeElement {
    terms: BTreeMap<Monomial, Laurent>,
}

impl HodgeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Laurent) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &Laurent) {
        if Ring::is_zero(c) {
            return;
        }
        let next = match self.terms.get(&m) {
            Some(cur) => cur.add(c),
            None => c.clone(),
        };
        if Ring::is_zero(&next) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Laurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (m, x) in self.terms() {
            out.add_term(m.clone(), &x.scale(c));
        }
        out
    }

    /// Multiplies by `u^by`.
    pub fn shift_u(&self, by: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.shift(by)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q;

    pub(crate) fn f2() -> Monoid {
        Monoid::new(Fan::hirzebruch(2), &MonoidOptions::default()).unwrap()
    }

    fn z(monoid: &Monoid, exps: &[i64]) -> Option<Monomial> {
        monoid.canonicalize(
            exps,
            &vec![0; monoid.rank()],
            &vec![0; monoid.t_directions().len()],
        )
    }

    #[test]
    fn hirzebruch_relations() {
        let f = f2();
        let z2z4 = z(&f, &[0, 1, 0, 1]).unwrap();
        assert_eq!(
            z2z4,
            Monomial {
                m: vec![0, 0],
                excess: vec![1, 0],
                t: vec![]
            }
        );
        assert_eq!(f.render_monomial(&z2z4), "q(1,0)");
        let z1z3 = z(&f, &[1, 0, 1, 0]).unwrap();
        assert_eq!(f.render_monomial(&z1z3), "z2^2*q(0,1)");
        assert_eq!(f.weight(&z1z3), 4);
        assert_eq!(f.render_monomial(&z(&f, &[1, 0, 0, 0]).unwrap()), "z1");
        let q1 = Monomial {
            m: vec![0, 0],
            excess: vec![1, 0],
            t: vec![],
        };
        assert_eq!(f.weight(&q1), 4);
        let z2 = f.ray(1);
        assert_eq!(f.render_monomial(&f.mul(&z2, &z2z4).unwrap()), "z2*q(1,0)");
        let z1z4 = f.mul(&f.ray(0), &f.ray(3)).unwrap();
        let prod = f.mul(&z1z4, &f.ray(3)).unwrap();
        assert_eq!(f.render_monomial(&prod), "z1*z4^2");
        assert_eq!(prod.m, vec![1, -2]);
    }

    #[test]
    fn basis_and_weights() {
        let f = f2();
        let names: Vec<String> = f.basis().iter().map(|b| f.render_monomial(b)).collect();
        assert_eq!(names, vec!["", "z3", "z4", "z1*z4"]);
        assert_eq!(f.basis_weights(), vec![0, 2, 2, 4]);
        let x = f.parse("z1*z4*u^-1").unwrap();
        assert_eq!(f.element_weight(&x), Weight::Homogeneous(2));
        assert_eq!(
            f.element_weight(&f.parse("u").unwrap()),
            Weight::Homogeneous(2)
        );
        assert_eq!(
            f.element_weight(&f.parse("z1 + u^2").unwrap()),
            Weight::Inhomogeneous
        );
    }

    #[test]
    fn non_faces_vanish_only_through_excess() {
        let f = f2();
        // z1 z3 is a non-face but not zero: it equals q2 z2^2.
        assert!(z(&f, &[1, 0, 1, 0]).is_some());
        assert!(f.canonicalize(&[0, 1, 0, 1], &[-1, 0], &[]).is_some());
        assert!(f.canonicalize(&[0, 1, 0, 1], &[-2, 0], &[]).is_none());
    }

    #[test]
    fn ray_round_trip_with_excess() {
        let f = f2();
        for s in 0..4 {
            let mut alpha = vec![0i64; 4];
            for (i, &r) in f.frame().rays.iter().enumerate() {
                alpha[r] += f.frame().exponents[i][s];
            }
            let via_ref = f
                .canonicalize(&alpha, &f.ray_excess().classes[s], &[])
                .unwrap();
            assert_eq!(via_ref, f.ray(s));
        }
    }

    #[test]
    fn grammar_round_trip() {
        let f = f2();
        for text in [
            "0",
            "1",
            "-3/2",
            "z3 + 2*z4*u",
            "z1*z4*q(1,0) + -1*z2^2*u^-1",
            "q(1,0)*u + 1/4*q(0,2)",
        ] {
            let x = f.parse(text).unwrap();
            assert_eq!(f.parse(&f.render(&x)).unwrap(), x);
        }
        assert_eq!(f.render(&f.parse("z1*z3").unwrap()), "z2^2*q(0,1)");
        assert_eq!(f.render(&f.parse("u*q(1,0)").unwrap()), "q(1,0)*u");
        assert!(f.parse("z9").is_err());
        assert!(f.parse("z1*3").is_err());
        assert!(f.parse("w").is_err());
    }

    #[test]
    fn element_products_and_scalars() {
        let f = f2();
        let a = f.parse("z2 + u").unwrap();
        let sq = f.mul_elements(&a, &a);
        assert_eq!(sq, f.parse("z2^2 + 2*z2*u + u^2").unwrap());
        let s = f.parse_scalar("q(1,0)*u + 1/2").unwrap();
        assert_eq!(s.coeff(0).constant_term(), q(1) / q(2));
        assert_eq!(f.render_scalar(&s), "1/2 + q(1,0)*u");
    }

    #[test]
    fn t_variables() {
        let opts = MonoidOptions {
            include_t_directions: true,
            ..MonoidOptions::default()
        };
        let f = Monoid::new(Fan::hirzebruch(2), &opts).unwrap();
        assert_eq!(f.t_directions(), &[0, 3]);
        assert_eq!(f.t_degrees(), vec![2, -2]);
        let x = f.parse("t4*z1*z4").unwrap();
        assert_eq!(f.element_weight(&x), Weight::Homogeneous(2));
        assert_eq!(f.render(&x), "z1*z4*t4");
        assert!(f.parse("t2").is_err());
    }

    #[test]
    fn degree_points() {
        let f = f2();
        assert_eq!(f.points_of_degree(0), vec![vec![0, 0]]);
        assert_eq!(f.points_of_degree(1).len(), 4);
        for m in f.points_of_degree(3) {
            assert_eq!(f.z_degree(&m), 3);
        }
    }
}
