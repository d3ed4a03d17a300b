//! Gauss-Manin connection of F2 on the good basis, with its structural checks.

use logmirror::fan::Fan;
use logmirror::gaussmanin::{check_connection, connection};
use logmirror::hodge::{Engine, PivotOrder};
use logmirror::monoidring::{Monoid, MonoidOptions};
use std::sync::Arc;

pub fn run_example() -> logmirror::Result<()> {
    let opts = MonoidOptions {
        truncation: 3,
        ..MonoidOptions::default()
    };
    let monoid = Arc::new(Monoid::new(Fan::hirzebruch(2), &opts)?);
    let engine = Engine::new(monoid.clone(), PivotOrder::Ascending);
    let conn = connection(&engine, true)?;
    for (a, m) in conn.q.iter().enumerate() {
        for k in 0..monoid.mu() {
            let image = monoid.from_coords(&m.column(k));
            let source = monoid.render(&monoid.basis_element(k));
            let source = if source.is_empty() {
                "1".to_string()
            } else {
                source
            };
            println!("u nabla_q{} ({source}) = {}", a + 1, monoid.render(&image));
        }
    }
    for o in check_connection(&monoid, &conn)? {
        println!(
            "[{}] {}: {}",
            if o.pass { "ok" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
