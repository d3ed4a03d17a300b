//! Flat coordinates of every bundled surface: log-linear part and series
//! correction, with the semi-Fano checks.

use logmirror::fan::Fan;
use logmirror::model::{Model, ModelInput, ModelOptions};
use logmirror::primitive::semi_fano_checks;
use logmirror::scalars::ULaurent;

pub fn run_example() -> logmirror::Result<()> {
    let fans = [
        ("P2", Fan::projective_space(2)),
        ("F2", Fan::hirzebruch(2)),
        ("P1xP1", Fan::p1_times_p1()),
        ("dP1", Fan::blowup_p2()),
    ];
    for (name, fan) in fans {
        let mut input = ModelInput::from_fan(name, &fan);
        input.truncation = Some(5);
        let model = Model::new(&input, ModelOptions::default())?;
        let monoid = model.monoid();
        let conn = model.connection()?;
        let mirror = model.mirror(&conn)?;
        println!("{name}");
        for c in &mirror.period_map.coordinates {
            let series = monoid.render_scalar(&ULaurent::from_series(0, c.series.clone()));
            let ell: Vec<String> = c.ell.iter().map(|x| x.to_string()).collect();
            let lhs = if c.logarithmic { "log tau" } else { "tau" };
            println!(
                "  {lhs}_{} = [{}] . l + {series}",
                c.index + 1,
                ell.join(", ")
            );
        }
        for o in semi_fano_checks(monoid, &mirror.period_map) {
            println!("  [{}] {}", if o.pass { "ok" } else { "FAIL" }, o.name);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
