//! Complete smooth projective fans: input checks, validation with witnesses,
//! walls, primitive collections, the Fulton ordering of maximal cones and
//! the reference chart.

use crate::error::{Error, Result};
use crate::lattice::{self, Lp};
use crate::scalars::{q, Q};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    n: usize,
    faces: BTreeSet<u64>,
}

fn mask(rays: &[usize]) -> u64 {
    rays.iter().fold(0u64, |m, r| m | (1u64 << r))
}

impl Fan {
    /// Builds a fan from rays and maximal cones given by 1-based ray indices.
    ///
    /// Only well-formedness is checked here; the geometric axioms are checked
    /// by [`validate`].
    pub fn new(rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let bad = |msg: String| Err(Error::Input(msg));
        if rays.is_empty() {
            return bad("the fan has no rays".into());
        }
        let n = rays[0].len();
        if n == 0 {
            return bad("rays must have positive dimension".into());
        }
        if rays.len() > 64 {
            return bad("at most 64 rays are supported".into());
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return bad(format!(
                    "ray {} has dimension {}, expected {n}",
                    i + 1,
                    r.len()
                ));
            }
            if r.iter().all(|x| *x == 0) {
                return bad(format!("ray {} is zero", i + 1));
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return bad(format!("rays {} and {} coincide", j + 1, i + 1));
            }
        }
        if max_cones.is_empty() {
            return bad("the fan has no maximal cones".into());
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut seen = BTreeSet::new();
        for (c, cone) in max_cones.iter().enumerate() {
            let mut zero_based = Vec::with_capacity(cone.len());
            for &i in cone {
                if i == 0 || i > rays.len() {
                    return bad(format!("cone {} refers to missing ray {i}", c + 1));
                }
                zero_based.push(i - 1);
            }
            zero_based.sort_unstable();
            zero_based.dedup();
            if zero_based.len() != n || cone.len() != n {
                return bad(format!("cone {} must list {n} distinct rays", c + 1));
            }
            if !seen.insert(zero_based.clone()) {
                return bad(format!("cone {} is listed twice", c + 1));
            }
            cones.push(zero_based);
        }
        let mut faces = BTreeSet::new();
        for cone in &cones {
            for size in 0..=n {
                for sub in cone.iter().copied().combinations(size) {
                    faces.insert(mask(&sub));
                }
            }
        }
        Ok(Fan {
            rays,
            max_cones: cones,
            n,
            faces,
        })
    }

    /// Projective space: rays `e_1, .., e_n, -(e_1 + .. + e_n)`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let cones = (1..=n + 1).combinations(n).collect();
        Fan::new(rays, cones).expect("projective space is well formed")
    }

    /// Hirzebruch surface `F_a` with rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
        )
        .expect("Hirzebruch surface is well formed")
    }

    pub fn p1_times_p1() -> Fan {
        Fan::hirzebruch(0)
    }

    /// Blow-up of the projective plane at one torus-fixed point.
    pub fn blowup_p2() -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]],
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
        )
        .expect("blow-up of the plane is well formed")
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Lattice rank.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rays.
    pub fn d(&self) -> usize {
        self.rays.len()
    }

    /// Number of maximal cones.
    pub fn mu(&self) -> usize {
        self.max_cones.len()
    }

    /// `n x n` matrix whose columns are the rays of cone `c`.
    pub fn cone_matrix(&self, c: usize) -> Vec<Vec<i64>> {
        let cols: Vec<&Vec<i64>> = self.max_cones[c].iter().map(|&r| &self.rays[r]).collect();
        lattice::columns(&cols)
    }

    /// Coordinates of `v` in the ray basis of cone `c`.
    pub fn cone_coords(&self, c: usize, v: &[i64]) -> Option<Vec<Q>> {
        let inv = lattice::rational_inverse(&self.cone_matrix(c))?;
        Some(
            inv.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * q(*b)).sum())
                .collect(),
        )
    }

    /// Whether the rays span a cone of the fan.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.faces.contains(&mask(rays))
    }

    /// Number of cones of each dimension `0..=n`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.n + 1];
        for m in &self.faces {
            f[m.count_ones() as usize] += 1;
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn ok() -> Self {
        Check {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        Check {
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub primitive: Check,
    pub smooth: Check,
    pub complete: Check,
    pub projective: Check,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.primitive.pass && self.smooth.pass && self.complete.pass && self.projective.pass
    }

    /// One line naming each failed axiom and its witness.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = [
            ("primitive", &self.primitive),
            ("smooth", &self.smooth),
            ("complete", &self.complete),
            ("projective", &self.projective),
        ]
        .iter()
        .filter(|(_, c)| !c.pass)
        .map(|(name, c)| format!("{name}: {}", c.witness.clone().unwrap_or_default()))
        .collect();
        if parts.is_empty() {
            "all checks passed".into()
        } else {
            parts.join("; ")
        }
    }
}

/// A codimension-one wall `sigma_i ∩ sigma_j` with its curve relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub cones: (usize, usize),
    pub face: Vec<usize>,
    /// The ray of `cones.0` and the ray of `cones.1` off the wall.
    pub opposite: (usize, usize),
    /// `sum_s c_s rho_s = 0`, with coefficient 1 on both opposite rays.
    pub relation: Vec<i64>,
}

fn covered(fan: &Fan, v: &[i64]) -> bool {
    (0..fan.mu()).any(|c| {
        fan.cone_coords(c, v)
            .is_some_and(|x| x.iter().all(|t| !t.is_negative()))
    })
}

/// Facets with the cones on each side: `facet -> [(cone, opposite ray)]`.
fn facet_incidence(fan: &Fan) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
    let mut out: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, cone) in fan.max_cones.iter().enumerate() {
        for &a in cone {
            let facet: Vec<usize> = cone.iter().copied().filter(|&r| r != a).collect();
            out.entry(facet).or_default().push((c, a));
        }
    }
    out
}

fn ray_list(rays: &[usize]) -> String {
    let items: Vec<String> = rays.iter().map(|r| (r + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn check_complete(fan: &Fan) -> Check {
    for c in 0..fan.mu() {
        if lattice::det(&fan.cone_matrix(c)).is_zero() {
            return Check::fail(format!("cone {} is not full-dimensional", c + 1));
        }
    }
    for (facet, sides) in facet_incidence(fan) {
        match sides.as_slice() {
            [(c, a)] => {
                // Step across the facet to find an uncovered direction.
                let base: Vec<i64> = (0..fan.n)
                    .map(|i| facet.iter().map(|&w| fan.rays[w][i]).sum())
                    .collect();
                for scale in 1..=32 {
                    let v: Vec<i64> = (0..fan.n)
                        .map(|i| scale * base[i] - fan.rays[*a][i])
                        .collect();
                    if !covered(fan, &v) {
                        return Check::fail(format!(
                            "direction {v:?} is not covered (facet {} of cone {} has no neighbour)",
                            ray_list(&facet),
                            c + 1
                        ));
                    }
                }
                return Check::fail(format!(
                    "facet {} of cone {} has no neighbour",
                    ray_list(&facet),
                    c + 1
                ));
            }
            [(c, a), (c2, b)] => {
                let x = fan
                    .cone_coords(*c, &fan.rays[*b])
                    .expect("full-dimensional cone");
                let pos = fan.max_cones[*c].iter().position(|r| r == a).unwrap();
                if !x[pos].is_negative() {
                    return Check::fail(format!(
                        "cones {} and {} overlap across facet {}",
                        c + 1,
                        c2 + 1,
                        ray_list(&facet)
                    ));
                }
            }
            many => {
                return Check::fail(format!(
                    "facet {} lies in {} maximal cones",
                    ray_list(&facet),
                    many.len()
                ));
            }
        }
    }
    // Every facet has a neighbour on the other side, so the covering degree is
    // constant; a generic point fixes it.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let v: Vec<i64> = (0..fan.n).map(|_| rng.gen_range(-1000..=1000)).collect();
        let mut interior = 0;
        let mut boundary = false;
        for c in 0..fan.mu() {
            let x = fan.cone_coords(c, &v).unwrap();
            if x.iter().all(|t| !t.is_negative()) {
                if x.iter().any(|t| t.is_zero()) {
                    boundary = true;
                }
                interior += 1;
            }
        }
        if boundary {
            continue;
        }
        return if interior == 1 {
            Check::ok()
        } else {
            Check::fail(format!("direction {v:?} lies in {interior} maximal cones"))
        };
    }
    Check::fail("no generic direction found".into())
}

/// Walls of a complete simplicial fan with unimodular cones.
pub fn walls(fan: &Fan) -> Result<Vec<Wall>> {
    let mut out = Vec::new();
    for (facet, sides) in facet_incidence(fan) {
        let [(c1, a), (c2, b)] = sides.as_slice() else {
            return Err(Error::Validation(format!(
                "facet {} is not shared by exactly two cones",
                ray_list(&facet)
            )));
        };
        let x = fan
            .cone_coords(*c1, &fan.rays[*b])
            .ok_or_else(|| Error::Validation(format!("cone {} is degenerate", c1 + 1)))?;
        let mut relation = vec![0i64; fan.d()];
        relation[*b] = 1;
        for (pos, &r) in fan.max_cones[*c1].iter().enumerate() {
            if !x[pos].is_integer() {
                return Err(Error::Validation(format!("cone {} is not smooth", c1 + 1)));
            }
            let v: i64 = x[pos].to_integer().try_into().expect("small coordinate");
            relation[r] = -v;
        }
        if relation[*a] != 1 {
            return Err(Error::Validation(format!(
                "cones {} and {} do not meet along a wall",
                c1 + 1,
                c2 + 1
            )));
        }
        out.push(Wall {
            cones: (*c1, *c2),
            face: facet.clone(),
            opposite: (*a, *b),
            relation,
        });
    }
    Ok(out)
}

/// A strictly convex piecewise-linear function, as values on the rays with
/// `<psi, relation> >= 1` on every wall; `None` when none exists.
///
/// Among all such functions the one minimizing the total wall degree is
/// returned, found by exact simplex.
pub fn convexity_witness(fan: &Fan, walls: &[Wall]) -> Option<Vec<Q>> {
    let d = fan.d();
    let m = walls.len();
    // Variables: psi+ (d), psi- (d), slack (m).
    let mut a = Vec::with_capacity(m);
    for (w, wall) in walls.iter().enumerate() {
        let mut row = vec![Q::zero(); 2 * d + m];
        for s in 0..d {
            row[s] = q(wall.relation[s]);
            row[d + s] = q(-wall.relation[s]);
        }
        row[2 * d + w] = q(-1);
        a.push(row);
    }
    let mut c = vec![Q::zero(); 2 * d + m];
    for wall in walls {
        for s in 0..d {
            c[s] += q(wall.relation[s]);
            c[d + s] -= q(wall.relation[s]);
        }
    }
    match lattice::minimize(&c, &a, &vec![q(1); m]) {
        Lp::Optimal { x, .. } => Some((0..d).map(|s| &x[s] - &x[d + s]).collect()),
        _ => None,
    }
}

pub fn validate(fan: &Fan) -> ValidationReport {
    let primitive = match fan.rays.iter().position(|r| lattice::gcd_all(r) != 1) {
        Some(i) => Check::fail(format!(
            "ray {} = {:?} is not primitive",
            i + 1,
            fan.rays[i]
        )),
        None => Check::ok(),
    };
    let smooth = match (0..fan.mu()).find(|&c| !lattice::det(&fan.cone_matrix(c)).abs().is_one()) {
        Some(c) => Check::fail(format!(
            "cone {} has determinant {}",
            c + 1,
            lattice::det(&fan.cone_matrix(c))
        )),
        None => Check::ok(),
    };
    let complete = check_complete(fan);
    let projective = if !(complete.pass && smooth.pass) {
        Check::fail("not decided: requires a complete smooth fan".into())
    } else {
        match walls(fan) {
            Err(e) => Check::fail(e.to_string()),
            Ok(ws) => match convexity_witness(fan, &ws) {
                Some(_) => Check::ok(),
                None => Check::fail(
                    "the strict convexity system <psi, wall relation> >= 1 is infeasible".into(),
                ),
            },
        }
    };
    ValidationReport {
        primitive,
        smooth,
        complete,
        projective,
    }
}

/// Minimal non-faces of the fan (0-based ray indices).
pub fn primitive_collections(fan: &Fan) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=fan.n + 1 {
        for set in (0..fan.d()).combinations(size) {
            if fan.is_face(&set) {
                continue;
            }
            let minimal = set
                .iter()
                .copied()
                .combinations(size - 1)
                .all(|sub| fan.is_face(&sub));
            if minimal {
                out.push(set);
            }
        }
    }
    out
}

/// `h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_i`; these are the even Betti numbers.
pub fn h_vector(fan: &Fan) -> Vec<i64> {
    let f = fan.f_vector();
    let n = fan.n as i64;
    let binom = |a: i64, b: i64| -> i64 {
        if b < 0 || b > a {
            return 0;
        }
        (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
    };
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(n - i, k - i) * f[i as usize] as i64
                })
                .sum()
        })
        .collect()
}

/// An ordering of the maximal cones with the faces `tau_i` of the good basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FultonOrder {
    /// Indices into `Fan::max_cones`.
    pub cone_order: Vec<usize>,
    /// `tau_i`: rays of `sigma_i` whose opposite neighbour comes earlier.
    pub faces: Vec<Vec<usize>>,
}

impl FultonOrder {
    pub fn mu(&self) -> usize {
        self.cone_order.len()
    }

    /// Weights `2 |tau_i|` of the basis monomials.
    pub fn weights(&self) -> Vec<i64> {
        self.faces.iter().map(|t| 2 * t.len() as i64).collect()
    }
}

/// `(cone, ray of cone) -> neighbouring cone across the opposite facet`.
fn neighbours(walls: &[Wall]) -> BTreeMap<(usize, usize), usize> {
    let mut nb = BTreeMap::new();
    for w in walls {
        nb.insert((w.cones.0, w.opposite.0), w.cones.1);
        nb.insert((w.cones.1, w.opposite.1), w.cones.0);
    }
    nb
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

struct Search<'a> {
    fan: &'a Fan,
    nb: BTreeMap<(usize, usize), usize>,
    placed: Vec<usize>,
    faces: Vec<Vec<usize>>,
    used: Vec<bool>,
    budget: usize,
}

impl Search<'_> {
    fn restriction(&self, cone: usize) -> Vec<usize> {
        self.fan.max_cones[cone]
            .iter()
            .copied()
            .filter(|&r| self.used[self.nb[&(cone, r)]])
            .collect()
    }

    fn extend(&mut self) -> bool {
        if self.placed.len() == self.fan.mu() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        for cand in 0..self.fan.mu() {
            if self.used[cand] {
                continue;
            }
            let tau = self.restriction(cand);
            if self
                .placed
                .iter()
                .any(|&p| is_subset(&tau, &self.fan.max_cones[p]))
            {
                continue;
            }
            self.placed.push(cand);
            self.faces.push(tau);
            self.used[cand] = true;
            if self.extend() {
                return true;
            }
            self.used[cand] = false;
            self.faces.pop();
            self.placed.pop();
        }
        false
    }
}

/// Orders the maximal cones so that `tau_i ⊆ sigma_j` implies `i <= j`.
///
/// Depth-first search over orderings, trying cones in input order; the result
/// is then re-verified by [`verify_fulton`].
pub fn fulton_order(fan: &Fan, walls: &[Wall]) -> Result<FultonOrder> {
    let mut search = Search {
        fan,
        nb: neighbours(walls),
        placed: Vec::new(),
        faces: Vec::new(),
        used: vec![false; fan.mu()],
        budget: 1_000_000,
    };
    if !search.extend() {
        return Err(Error::Model(
            "no ordering of the maximal cones satisfies the tau condition".into(),
        ));
    }
    let order = FultonOrder {
        cone_order: search.placed,
        faces: search.faces,
    };
    verify_fulton(fan, walls, &order).map_err(Error::Model)?;
    Ok(order)
}

/// Exhaustive check of an ordering: recomputed faces, the tau condition,
/// distinct faces, and the weight histogram against the h-vector.
pub fn verify_fulton(
    fan: &Fan,
    walls: &[Wall],
    order: &FultonOrder,
) -> std::result::Result<(), String> {
    let nb = neighbours(walls);
    let mu = fan.mu();
    if order.cone_order.len() != mu || order.cone_order.iter().collect::<BTreeSet<_>>().len() != mu
    {
        return Err("cone order is not a permutation".into());
    }
    let position: BTreeMap<usize, usize> = order
        .cone_order
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    for (i, &c) in order.cone_order.iter().enumerate() {
        // tau_i = sigma_i ∩ (all later wall-neighbours).
        let mut tau = fan.max_cones[c].clone();
        for &r in &fan.max_cones[c] {
            let other = nb[&(c, r)];
            if position[&other] > i {
                tau.retain(|&x| x != r);
            }
        }
        if tau != order.faces[i] {
            return Err(format!("face tau_{} does not match its definition", i + 1));
        }
        for (j, &cj) in order.cone_order.iter().enumerate() {
            if is_subset(&tau, &fan.max_cones[cj]) && i > j {
                return Err(format!(
                    "tau_{} lies in sigma_{} with {} > {}",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    if order.faces.iter().collect::<BTreeSet<_>>().len() != mu {
        return Err("faces tau_i are not distinct".into());
    }
    let mut hist = vec![0i64; fan.n + 1];
    for t in &order.faces {
        hist[t.len()] += 1;
    }
    if hist != h_vector(fan) {
        return Err(format!(
            "basis histogram {hist:?} differs from the h-vector {:?}",
            h_vector(fan)
        ));
    }
    if !order.faces[0].is_empty() {
        return Err("the first basis element is not 1".into());
    }
    Ok(())
}

/// Chart attached to one maximal cone: its rays become the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceFrame {
    pub ref_cone: usize,
    /// Rays of the reference cone, in the order used as coordinates.
    pub rays: Vec<usize>,
    /// Unimodular matrix sending the reference rays to the standard basis.
    pub change_basis: Vec<Vec<i64>>,
    /// `exponents[i][l]`: `rho_l = sum_i exponents[i][l] rho_{rays[i]}`.
    pub exponents: Vec<Vec<i64>>,
}

impl ReferenceFrame {
    /// Coordinates of a lattice point in the reference basis.
    pub fn coords(&self, m: &[i64]) -> Vec<i64> {
        lattice::mat_vec(&self.change_basis, m)
    }
}

pub fn reference_frame(fan: &Fan, cone: usize) -> Result<ReferenceFrame> {
    if cone >= fan.mu() {
        return Err(Error::Input(format!(
            "reference cone {} does not exist",
            cone + 1
        )));
    }
    let change_basis = lattice::inverse_unimodular(&fan.cone_matrix(cone))
        .ok_or_else(|| Error::Validation(format!("cone {} is not smooth", cone + 1)))?;
    let per_ray: Vec<Vec<i64>> = fan
        .rays
        .iter()
        .map(|r| lattice::mat_vec(&change_basis, r))
        .collect();
    let exponents = (0..fan.n)
        .map(|i| per_ray.iter().map(|v| v[i]).collect())
        .collect();
    Ok(ReferenceFrame {
        ref_cone: cone,
        rays: fan.max_cones[cone].clone(),
        change_basis,
        exponents,
    })
}
