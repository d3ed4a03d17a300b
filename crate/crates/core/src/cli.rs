//! Command dispatch and the serialized reports of the `logmirror` tool.
//!
//! Every report is plain data: rationals are `"n/d"` strings and ring
//! elements use the monomial grammar of [`Monoid::render`], so the JSON
//! output is exact and parses back into the same report.

use crate::error::{Error, Result};
use crate::fan::{self, ValidationReport};
use crate::gaussmanin::{self, Outcome};
use crate::hodge::PivotOrder;
use crate::model::{Format, Model, ModelInput, ModelOptions};
use crate::monoidring::Monoid;
use crate::primitive::{self, Graded};
use crate::scalars::{format_q, LogPoly, Mat, ULaurent, Q};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Validate,
    Basis,
    Cohomology,
    Connection,
    Flatframe,
    Periodmap,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "logmirror",
    version,
    about = "Mirror Hodge data of smooth projective toric manifolds"
)]
pub struct Args {
    /// Fan description in JSON (rays and 1-based maximal cones).
    #[arg(long)]
    pub input: PathBuf,
    /// Truncation order K; overrides the input file.
    #[arg(long)]
    pub trunc: Option<i64>,
    #[arg(long, value_enum, default_value = "check")]
    pub command: Command,
    /// Output format; overrides the input file.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub parallel: bool,
    /// 1-based reference cone; overrides the input file.
    #[arg(long = "ref-cone")]
    pub ref_cone: Option<usize>,
}

pub type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub name: Option<String>,
    pub passed: bool,
    pub checks: ValidationReport,
    /// 1-based ray indices.
    pub primitive_collections: Vec<Vec<usize>>,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub element: String,
    pub weight: i64,
    /// 1-based rays of the face `tau_i`.
    pub face: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub kernel_basis: Vec<Vec<i64>>,
    pub wall_classes: Vec<Vec<i64>>,
    pub nef_inequalities: Vec<Vec<i64>>,
    pub qc_weights: Vec<i64>,
    pub lambda: Vec<i64>,
    pub semi_fano: bool,
    pub fano: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub name: Option<String>,
    pub basis: Vec<BasisEntry>,
    /// 1-based indices of the maximal cones in Fulton order.
    pub cone_order: Vec<usize>,
    pub reference_cone: usize,
    pub betti: Vec<i64>,
    pub curves: CurveReport,
    /// 1-based basis indices carrying an unfolding variable.
    pub t_directions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub name: Option<String>,
    pub basis: Vec<String>,
    /// `products[i][j]` is `phi_i phi_j` at `q = 0`.
    pub products: Matrix,
    pub pairing: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionReport {
    pub name: Option<String>,
    pub truncation: i64,
    pub basis: Vec<String>,
    /// `nabla_{q_a d/dq_a}`; column k is the image of `phi_k`.
    pub nabla_q: Vec<Matrix>,
    /// `nabla_{d/dt_j}`.
    pub nabla_t: Vec<Matrix>,
    /// `nabla_{u d/du}`.
    pub nabla_u: Matrix,
    pub residues: Vec<Matrix>,
    pub checks: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatFrameReport {
    pub name: Option<String>,
    pub truncation: i64,
    pub basis: Vec<String>,
    /// Column k is the flat extension of `phi_k`.
    pub frame: Matrix,
    pub birkhoff_b: Matrix,
    pub birkhoff_c: Matrix,
    /// Flat unit in the flat-frame basis, polynomial in `l_a = log q_a`.
    pub flat_unit: Vec<String>,
    pub checks: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateReport {
    pub index: usize,
    pub basis: String,
    pub logarithmic: bool,
    /// Coefficients of `l_a` in `log tau` (zero for non-logarithmic entries).
    pub ell: Vec<String>,
    /// Series part: `log tau - sum ell_a l_a`, or `tau` itself.
    pub series: String,
    /// `tau` as a series in `q`.
    pub tau: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodMapReport {
    pub name: Option<String>,
    pub truncation: i64,
    pub coordinates: Vec<CoordinateReport>,
    pub zeta_flat: Vec<String>,
    pub zeta_basis: Vec<String>,
    pub checks: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: Option<String>,
    pub truncation: i64,
    pub passed: bool,
    pub outcomes: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "report", rename_all = "lowercase")]
pub enum Report {
    Validate(ValidateReport),
    Basis(BasisReport),
    Cohomology(CohomologyReport),
    Connection(ConnectionReport),
    Flatframe(FlatFrameReport),
    Periodmap(PeriodMapReport),
    Check(CheckReport),
}

impl Report {
    /// Exit status implied by the report itself.
    pub fn exit_code(&self) -> i32 {
        let failed = |checks: &[Outcome]| checks.iter().any(|o| !o.pass);
        match self {
            Report::Validate(r) if !r.passed => 2,
            Report::Connection(r) if failed(&r.checks) => 3,
            Report::Flatframe(r) if failed(&r.checks) => 3,
            Report::Periodmap(r) if failed(&r.checks) => 3,
            Report::Check(r) if !r.passed => 3,
            _ => 0,
        }
    }

    /// JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed report: {e}")))
    }

    /// Indented `key: value` listing of the same data.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        write_text(&value, 0, &mut out);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn write_text(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_flat(v) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                if is_flat(v) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(v)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(v, indent + 1, out);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn is_flat(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        serde_json::Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => "-".into(),
        serde_json::Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn basis_names(monoid: &Monoid) -> Vec<String> {
    (0..monoid.mu())
        .map(|k| {
            let s = monoid.render(&monoid.basis_element(k));
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect()
}

fn rational_matrix(m: &Mat<Q>) -> Matrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_q(m.get(i, j))).collect())
        .collect()
}

fn scalar_matrix(monoid: &Monoid, m: &Mat<ULaurent>) -> Matrix {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| monoid.render_scalar(m.get(i, j)))
                .collect()
        })
        .collect()
}

fn graded_matrix(monoid: &Monoid, g: &Graded) -> Matrix {
    scalar_matrix(monoid, &g.to_matrix(monoid.truncation()))
}

fn shifted(m: &Mat<ULaurent>, by: i32) -> Mat<ULaurent> {
    m.map(|x| x.shift(by))
}

/// `l1^2*l2`-style rendering of a polynomial in the log variables.
pub fn render_log_poly(monoid: &Monoid, p: &LogPoly<ULaurent>) -> String {
    let mut terms = Vec::new();
    for (exps, c) in p.terms() {
        let coeff = monoid.render_scalar(c);
        let logs: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(a, e)| {
                if *e == 1 {
                    format!("l{}", a + 1)
                } else {
                    format!("l{}^{e}", a + 1)
                }
            })
            .collect();
        let logs = logs.join("*");
        let term = if logs.is_empty() {
            coeff
        } else if coeff == "1" {
            logs
        } else if coeff.contains(" + ") {
            format!("({coeff})*{logs}")
        } else {
            format!("{coeff}*{logs}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn validate_report(input: &ModelInput) -> Result<ValidateReport> {
    let fan = input.fan()?;
    let checks = fan::validate(&fan);
    let complete = checks.complete.pass;
    Ok(ValidateReport {
        name: input.name.clone(),
        passed: checks.passed(),
        checks,
        primitive_collections: fan::primitive_collections(&fan)
            .into_iter()
            .map(|c| c.into_iter().map(|s| s + 1).collect())
            .collect(),
        f_vector: fan.f_vector(),
        h_vector: if complete {
            fan::h_vector(&fan)
        } else {
            Vec::new()
        },
    })
}

pub fn basis_report(name: Option<String>, model: &Model) -> BasisReport {
    let monoid = model.monoid();
    let names = basis_names(monoid);
    let weights = monoid.basis_weights();
    let curves = monoid.curves();
    BasisReport {
        name,
        basis: names
            .into_iter()
            .enumerate()
            .map(|(k, element)| BasisEntry {
                index: k + 1,
                element,
                weight: weights[k],
                face: monoid.order().faces[k].iter().map(|s| s + 1).collect(),
            })
            .collect(),
        cone_order: monoid.order().cone_order.iter().map(|c| c + 1).collect(),
        reference_cone: monoid.frame().ref_cone + 1,
        betti: fan::h_vector(monoid.fan()),
        curves: CurveReport {
            kernel_basis: curves.kernel_basis.clone(),
            wall_classes: curves.wall_classes.clone(),
            nef_inequalities: curves.nef_inequalities.clone(),
            qc_weights: curves.qc_weights.clone(),
            lambda: curves.lambda.clone(),
            semi_fano: curves.is_semi_fano(),
            fano: curves.is_fano(),
        },
        t_directions: monoid.t_directions().iter().map(|k| k + 1).collect(),
    }
}

pub fn cohomology_report(name: Option<String>, model: &Model) -> Result<CohomologyReport> {
    let monoid = model.monoid();
    let ring = model.central_ring()?;
    let names = basis_names(monoid);
    let mu = monoid.mu();
    let products = (0..mu)
        .map(|i| {
            (0..mu)
                .map(|j| {
                    let coords: Vec<ULaurent> = ring
                        .product(i, j)
                        .iter()
                        .map(|c| {
                            let mut x = monoid.zero_scalar();
                            x.add_term(0, monoid.truncation().zero_key(), c.clone());
                            x
                        })
                        .collect();
                    monoid.render(&monoid.from_coords(&coords))
                })
                .collect()
        })
        .collect();
    Ok(CohomologyReport {
        name,
        basis: names,
        products,
        pairing: rational_matrix(&ring.pairing()),
    })
}

pub fn connection_report(name: Option<String>, model: &Model) -> Result<ConnectionReport> {
    let monoid = model.monoid();
    let conn = model.connection()?;
    let checks = gaussmanin::check_connection(monoid, &conn)?;
    let residues = gaussmanin::residues(monoid, &conn)?;
    Ok(ConnectionReport {
        name,
        truncation: monoid.truncation().order,
        basis: basis_names(monoid),
        nabla_q: conn
            .q
            .iter()
            .map(|m| scalar_matrix(monoid, &shifted(m, -1)))
            .collect(),
        nabla_t: conn
            .t
            .iter()
            .map(|m| scalar_matrix(monoid, &shifted(m, -1)))
            .collect(),
        nabla_u: scalar_matrix(monoid, &conn.u),
        residues: residues.iter().map(rational_matrix).collect(),
        checks,
    })
}

pub fn flat_frame_report(name: Option<String>, model: &Model) -> Result<FlatFrameReport> {
    let monoid = model.monoid();
    let conn = model.connection()?;
    let mirror = model.mirror(&conn)?;
    let mut checks = primitive::flatness_residual(&mirror.graded, &mirror.residues, &mirror.frame);
    checks.push(primitive::frame_homogeneity(monoid, &mirror.frame));
    let other = primitive::birkhoff_fixed_point(&mirror.frame)?;
    checks.extend(primitive::birkhoff_checks(&mirror.birkhoff, &other));
    let unit = primitive::flat_unit(monoid, &mirror.residues);
    Ok(FlatFrameReport {
        name,
        truncation: monoid.truncation().order,
        basis: basis_names(monoid),
        frame: graded_matrix(monoid, &mirror.frame),
        birkhoff_b: graded_matrix(monoid, &mirror.birkhoff.b),
        birkhoff_c: graded_matrix(monoid, &mirror.birkhoff.c),
        flat_unit: unit.iter().map(|p| render_log_poly(monoid, p)).collect(),
        checks,
    })
}

pub fn period_map_report(name: Option<String>, model: &Model) -> Result<PeriodMapReport> {
    let monoid = model.monoid();
    let conn = model.connection()?;
    let mirror = model.mirror(&conn)?;
    let pm = &mirror.period_map;
    let names = basis_names(monoid);
    let as_scalar = |s: &crate::scalars::QSeries| ULaurent::from_series(0, s.clone());
    let coordinates = pm
        .coordinates
        .iter()
        .map(|c| {
            Ok(CoordinateReport {
                index: c.index + 1,
                basis: names[c.index].clone(),
                logarithmic: c.logarithmic,
                ell: c.ell.iter().map(format_q).collect(),
                series: monoid.render_scalar(&as_scalar(&c.series)),
                tau: monoid.render_scalar(&as_scalar(&c.tau(monoid)?)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodMapReport {
        name,
        truncation: monoid.truncation().order,
        coordinates,
        zeta_flat: pm
            .zeta_flat
            .iter()
            .map(|x| monoid.render_scalar(x))
            .collect(),
        zeta_basis: pm
            .zeta_basis
            .iter()
            .map(|x| monoid.render_scalar(x))
            .collect(),
        checks: primitive::semi_fano_checks(monoid, pm),
    })
}

pub fn check_report(name: Option<String>, model: &Model) -> Result<CheckReport> {
    let outcomes = model.check()?;
    Ok(CheckReport {
        name,
        truncation: model.monoid().truncation().order,
        passed: outcomes.iter().all(|o| o.pass),
        outcomes,
    })
}

/// Builds the report for one command.
pub fn run(command: Command, input: &ModelInput, options: ModelOptions) -> Result<Report> {
    if command == Command::Validate {
        return validate_report(input).map(Report::Validate);
    }
    input.monoid_options()?;
    let model = Model::new(input, options)?;
    let name = input.name.clone();
    Ok(match command {
        Command::Validate => unreachable!(),
        Command::Basis => Report::Basis(basis_report(name, &model)),
        Command::Cohomology => Report::Cohomology(cohomology_report(name, &model)?),
        Command::Connection => Report::Connection(connection_report(name, &model)?),
        Command::Flatframe => Report::Flatframe(flat_frame_report(name, &model)?),
        Command::Periodmap => Report::Periodmap(period_map_report(name, &model)?),
        Command::Check => Report::Check(check_report(name, &model)?),
    })
}

/// Result of one invocation: what to print and the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(args: &Args) -> Invocation {
    let fail = |e: Error| Invocation {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("logmirror: {e}\n"),
    };
    let mut input = match ModelInput::from_path(&args.input) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    if let Some(k) = args.trunc {
        input.truncation = Some(k);
    }
    if let Some(c) = args.ref_cone {
        input.reference_cone = Some(c);
    }
    let format = match args.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Text) => Format::Text,
        None => input.format.unwrap_or_default(),
    };
    let options = ModelOptions {
        parallel: args.parallel,
        pivot: PivotOrder::Ascending,
    };
    match run(args.command, &input, options) {
        Ok(report) => Invocation {
            code: report.exit_code(),
            stdout: report.render(format),
            stderr: String::new(),
        },
        Err(e) => fail(e),
    }
}
