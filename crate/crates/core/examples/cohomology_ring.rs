//! Cohomology ring and Poincare pairing of the blow-up of the plane, read off
//! the Hodge module at q = u = 0.

use logmirror::fan::Fan;
use logmirror::hodge::central_ring;
use logmirror::monoidring::{Monoid, MonoidOptions};
use std::sync::Arc;

pub fn run_example() -> logmirror::Result<()> {
    let monoid = Arc::new(Monoid::new(Fan::blowup_p2(), &MonoidOptions::default())?);
    let ring = central_ring(&monoid)?;
    let mu = monoid.mu();
    for i in 1..mu {
        for j in i..mu {
            let row: Vec<String> = ring.product(i, j).iter().map(|c| c.to_string()).collect();
            println!("phi_{} * phi_{} = [{}]", i + 1, j + 1, row.join(", "));
        }
    }
    let g = ring.pairing();
    for i in 0..mu {
        let row: Vec<String> = (0..mu).map(|j| g.get(i, j).to_string()).collect();
        println!("G[{}] = [{}]", i + 1, row.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
