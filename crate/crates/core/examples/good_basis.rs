//! Fulton ordering, good basis and Mori cone data of a Hirzebruch surface.

use logmirror::fan::Fan;
use logmirror::monoidring::{Monoid, MonoidOptions};

pub fn run_example() -> logmirror::Result<()> {
    let monoid = Monoid::new(Fan::hirzebruch(2), &MonoidOptions::default())?;
    let order: Vec<usize> = monoid.order().cone_order.iter().map(|c| c + 1).collect();
    println!("cone order {order:?}");
    for (k, w) in monoid.basis_weights().iter().enumerate() {
        let name = monoid.render(&monoid.basis_element(k));
        println!(
            "phi_{} = {:<6} weight {w}",
            k + 1,
            if name.is_empty() { "1" } else { &name }
        );
    }
    let curves = monoid.curves();
    println!("kernel basis {:?}", curves.kernel_basis);
    println!("wall classes {:?}", curves.wall_classes);
    println!(
        "lambda {:?}, anticanonical weights {:?}",
        curves.lambda, curves.qc_weights
    );
    println!(
        "semi-Fano {}, Fano {}",
        curves.is_semi_fano(),
        curves.is_fano()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
