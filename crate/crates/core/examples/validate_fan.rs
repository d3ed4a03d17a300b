//! Validates the bundled fans, including an incomplete one, and prints the
//! witness for every failed axiom.

use logmirror::cli::validate_report;
use logmirror::model::ModelInput;
use std::path::Path;

pub fn run_example() -> logmirror::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fans");
    for name in ["P2", "F2", "dP1", "incomplete"] {
        let input = ModelInput::from_path(&dir.join(format!("{name}.json")))?;
        let report = validate_report(&input)?;
        println!("{name}: {}", report.checks.summary());
        println!(
            "  primitive collections {:?}, f-vector {:?}",
            report.primitive_collections, report.f_vector
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logmirror::Result<()> {
    run_example()
}
