//! Flat frame and Birkhoff factorization for F2, plus the flat unit section.

use logmirror::cli::render_log_poly;
use logmirror::fan::Fan;
use logmirror::model::{Model, ModelInput, ModelOptions};
use logmirror::primitive::{birkhoff_checks, birkhoff_fixed_point, flat_unit, flatness_residual};

pub fn run_example() -> logmirror::Result<()> {
    let mut input = ModelInput::from_fan("F2", &Fan::hirzebruch(2));
    input.truncation = Some(3);
    let model = Model::new(&input, ModelOptions::default())?;
    let monoid = model.monoid();
    let conn = model.connection()?;
    let mirror = model.mirror(&conn)?;
    let a = mirror.frame.to_matrix(monoid.truncation());
    for k in 0..monoid.mu() {
        let col = monoid.from_coords(&a.column(k));
        println!("DE(phi_{}) = {}", k + 1, monoid.render(&col));
    }
    let mut checks = flatness_residual(&mirror.graded, &mirror.residues, &mirror.frame);
    checks.extend(birkhoff_checks(
        &mirror.birkhoff,
        &birkhoff_fixed_point(&mirror.frame)?,
    ));
    for o in checks {
        println!("[{}] {}", if o.pass { "ok" } else { "FAIL" }, o.name);
    }
    for (k, p) in flat_unit(monoid, &mirror.residues).iter().enumerate() {
        println!(
            "unit, DE(phi_{}) coefficient: {}",
            k + 1,
            render_log_poly(monoid, p)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
