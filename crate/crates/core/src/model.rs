//! A fan together with its Hodge engine and the derived mirror data.

use crate::error::{Error, Result};
use crate::fan::{self, Fan};
use crate::gaussmanin::{self, Connection, Outcome};
use crate::hodge::{self, CentralRing, Engine, PivotOrder};
use crate::monoidring::{HodgeElement, Monoid, MonoidOptions};
use crate::primitive::{self, BirkhoffPair, Graded, PeriodMap};
use crate::scalars::{Laurent, Mat, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

pub const DEFAULT_TRUNCATION: i64 = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Fan input as read from JSON. Ray indices in `max_cones` and
/// `reference_cone` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    #[serde(default)]
    pub include_t_directions: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_cone: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ModelInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed model input: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_fan(name: &str, fan: &Fan) -> Self {
        ModelInput {
            name: Some(name.to_string()),
            rays: fan.rays().to_vec(),
            max_cones: fan
                .max_cones()
                .iter()
                .map(|c| c.iter().map(|s| s + 1).collect())
                .collect(),
            truncation: None,
            include_t_directions: false,
            reference_cone: None,
            format: None,
        }
    }

    pub fn fan(&self) -> Result<Fan> {
        Fan::new(self.rays.clone(), self.max_cones.clone())
    }

    pub fn truncation(&self) -> i64 {
        self.truncation.unwrap_or(DEFAULT_TRUNCATION)
    }

    pub fn monoid_options(&self) -> Result<MonoidOptions> {
        let truncation = self.truncation();
        if truncation < 1 {
            return Err(Error::Input(format!(
                "truncation must be at least 1, got {truncation}"
            )));
        }
        let reference_cone = match self.reference_cone {
            None => None,
            Some(0) => return Err(Error::Input("reference_cone is 1-based".into())),
            Some(c) if c > self.max_cones.len() => {
                return Err(Error::Input(format!(
                    "reference_cone {c} out of range (fan has {} maximal cones)",
                    self.max_cones.len()
                )))
            }
            Some(c) => Some(c - 1),
        };
        Ok(MonoidOptions {
            truncation,
            include_t_directions: self.include_t_directions,
            reference_cone,
            ..MonoidOptions::default()
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModelOptions {
    pub parallel: bool,
    pub pivot: PivotOrder,
}

/// Everything derived from the connection at `t = 0`.
#[derive(Clone, Debug)]
pub struct Mirror {
    pub residues: Vec<Mat<Q>>,
    pub graded: Vec<Graded>,
    pub frame: Graded,
    pub birkhoff: BirkhoffPair,
    pub period_map: PeriodMap,
}

pub struct Model {
    monoid: Arc<Monoid>,
    engine: Engine,
    options: ModelOptions,
}

impl Model {
    pub fn new(input: &ModelInput, options: ModelOptions) -> Result<Model> {
        let fan = input.fan()?;
        let monoid = Arc::new(Monoid::new(fan, &input.monoid_options()?)?);
        Ok(Self::from_monoid(monoid, options))
    }

    pub fn from_monoid(monoid: Arc<Monoid>, options: ModelOptions) -> Model {
        let engine = Engine::new(monoid.clone(), options.pivot);
        Model {
            monoid,
            engine,
            options,
        }
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn central_ring(&self) -> Result<CentralRing> {
        hodge::central_ring(&self.monoid)
    }

    pub fn connection(&self) -> Result<Connection> {
        gaussmanin::connection(&self.engine, self.options.parallel)
    }

    /// Flat frame, Birkhoff factors and period map; the connection must pass
    /// its structural checks first.
    pub fn mirror(&self, conn: &Connection) -> Result<Mirror> {
        for o in gaussmanin::check_connection(&self.monoid, conn)? {
            o.require()?;
        }
        let residues = gaussmanin::residues(&self.monoid, conn)?;
        let graded = primitive::graded_connection(&self.monoid, conn);
        let frame = primitive::deligne_extend(&self.monoid, &graded, &residues)?;
        let birkhoff = primitive::birkhoff(&self.monoid, &frame)?;
        let period_map = primitive::period_map(&self.monoid, &birkhoff, &residues)?;
        Ok(Mirror {
            residues,
            graded,
            frame,
            birkhoff,
            period_map,
        })
    }

    /// The full property suite. Errors are reserved for computations that
    /// cannot be carried out at all; failed properties come back as outcomes.
    pub fn check(&self) -> Result<Vec<Outcome>> {
        let monoid = &self.monoid;
        let fan = monoid.fan();
        let mut out = Vec::new();
        let report = fan::validate(fan);
        out.push(Outcome::new(
            "fan is smooth, complete and projective",
            report.passed(),
            report.summary(),
        ));
        let fulton = fan::verify_fulton(fan, monoid.walls(), monoid.order());
        out.push(Outcome::new(
            "Fulton ordering",
            fulton.is_ok(),
            fulton
                .err()
                .unwrap_or_else(|| "every cone adds exactly its face".into()),
        ));
        out.push(betti_check(monoid));
        let ring = self.central_ring()?;
        let g = ring.pairing();
        let nondegenerate = crate::scalars::rank(&g) == monoid.mu();
        out.push(Outcome::new(
            "Poincare pairing is nondegenerate",
            nondegenerate,
            "",
        ));
        out.push(pivot_independence(monoid, 100, 0)?);

        let conn = self.connection()?;
        out.extend(gaussmanin::check_connection(monoid, &conn)?);
        if out.iter().any(|o| !o.pass) {
            return Ok(out);
        }
        let residues = gaussmanin::residues(monoid, &conn)?;
        let graded = primitive::graded_connection(monoid, &conn);
        let frame = primitive::deligne_extend(monoid, &graded, &residues)?;
        out.extend(primitive::flatness_residual(&graded, &residues, &frame));
        out.push(primitive::frame_homogeneity(monoid, &frame));
        let pair = primitive::birkhoff(monoid, &frame)?;
        let other = primitive::birkhoff_fixed_point(&frame)?;
        out.extend(primitive::birkhoff_checks(&pair, &other));
        out.extend(primitive::pairing_shadow(&frame, &g, &residues)?);
        let pm = primitive::period_map(monoid, &pair, &residues)?;
        out.extend(primitive::semi_fano_checks(monoid, &pm));
        Ok(out)
    }
}

/// Basis weight histogram against the h-vector of the fan.
pub fn betti_check(monoid: &Monoid) -> Outcome {
    let h = fan::h_vector(monoid.fan());
    let mut hist = vec![0i64; h.len()];
    for w in monoid.basis_weights() {
        hist[(w / 2) as usize] += 1;
    }
    Outcome::new(
        "basis weights match Betti numbers",
        hist == h,
        format!("histogram {hist:?}, h-vector {h:?}"),
    )
}

/// A random homogeneous element of weight `weight`: sums of ray products
/// times powers of `u`, with small rational coefficients.
pub fn random_homogeneous(monoid: &Monoid, weight: i64, rng: &mut impl Rng) -> HodgeElement {
    let d = monoid.fan().d();
    let mut out = HodgeElement::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(0..=weight / 2);
        let mut mono = monoid.unit();
        for _ in 0..k {
            let ray = monoid.ray(rng.gen_range(0..d));
            mono = monoid.mul(&mono, &ray).expect("ray products are nonzero");
        }
        let c = Laurent::monomial(
            (weight / 2 - k) as i32,
            crate::scalars::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
        );
        out.add_term(mono, &c);
    }
    out
}

/// Reduction agrees under both pivot orders on `count` random elements.
pub fn pivot_independence(monoid: &Arc<Monoid>, count: usize, seed: u64) -> Result<Outcome> {
    let asc = Engine::new(monoid.clone(), PivotOrder::Ascending);
    let desc = Engine::new(monoid.clone(), PivotOrder::Descending);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 2 * monoid.n() as i64 + 2;
    for i in 0..count {
        let weight = 2 * rng.gen_range(0..=top / 2);
        let x = random_homogeneous(monoid, weight, &mut rng);
        if asc.reduce(&x)? != desc.reduce(&x)? {
            return Ok(Outcome::new(
                "reduction is pivot-order independent",
                false,
                format!("element {i} differs: {}", monoid.render(&x)),
            ));
        }
    }
    Ok(Outcome::new(
        "reduction is pivot-order independent",
        true,
        format!("{count} random homogeneous elements agree"),
    ))
}
