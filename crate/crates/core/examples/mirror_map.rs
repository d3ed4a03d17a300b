//! The F2 mirror map against its closed form q2 = tau2 (1 + tau2)^-2 and
//! q1 = tau3 (1 + tau2), to order 10.

use logmirror::fan::Fan;
use logmirror::model::{Model, ModelInput, ModelOptions};
use logmirror::primitive::{compare, restrict_to_axis};
use logmirror::scalars::{q, univariate, Q};

pub fn run_example() -> logmirror::Result<()> {
    let k = 10;
    let len = k as usize + 1;
    let mut input = ModelInput::from_fan("F2", &Fan::hirzebruch(2));
    input.truncation = Some(k);
    let model = Model::new(&input, ModelOptions::default())?;
    let conn = model.connection()?;
    let mirror = model.mirror(&conn)?;
    let coords = &mirror.period_map.coordinates;

    let tau2 = restrict_to_axis(&coords[0].tau(model.monoid())?, 1, len);
    let closed = univariate::mul(
        &univariate::identity(len),
        &univariate::binomial_power(&q(1), &q(-2), len),
    );
    let tau2_check = compare(tau2.clone(), univariate::revert(&closed)?);
    println!("tau2 = {:?}", show(&tau2_check.computed));
    println!(
        "reversion of q2 = tau2 (1 + tau2)^-2 agrees: {}",
        tau2_check.equal
    );

    let tau3 = coords[1].tau(model.monoid())?;
    let over_q1: Vec<Q> = (0..k)
        .map(|j| {
            tau3.terms()
                .find(|(key, _)| key.q == vec![1, j])
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| q(0))
        })
        .collect();
    let mut one_plus_tau2 = tau2[..k as usize].to_vec();
    one_plus_tau2[0] += q(1);
    let flat = compare(over_q1.clone(), univariate::inverse(&one_plus_tau2)?);
    let variant = compare(
        over_q1,
        univariate::binomial_power(&q(1), &q(-1), k as usize),
    );
    println!("tau3 / q1 = {:?}", show(&flat.computed));
    println!("q1 = tau3 (1 + tau2) agrees: {}", flat.equal);
    println!("q1 = tau3 (1 + q2) agrees: {}", variant.equal);
    Ok(())
}

fn show(xs: &[Q]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
