//! Regression corpus: reports for the five test fans at K = 4. Set
//! `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

mod common;

use logmirror::cli::{run, Command, Report};
use logmirror::model::{Model, ModelInput, ModelOptions};
use logmirror::monoidring::Monoid;
use logmirror::scalars::ULaurent;
use serde::Deserialize;
use std::path::{Path, PathBuf};

const K: i64 = 4;
const FANS: [&str; 5] = ["P1", "P2", "F2", "P1xP1", "dP1"];
const COMMANDS: [(Command, &str); 6] = [
    (Command::Basis, "basis"),
    (Command::Cohomology, "cohomology"),
    (Command::Connection, "connection"),
    (Command::Flatframe, "flatframe"),
    (Command::Periodmap, "periodmap"),
    (Command::Check, "check"),
];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn input(fan: &str) -> ModelInput {
    let mut x = ModelInput::from_path(&root().join(format!("data/fans/{fan}.json"))).unwrap();
    x.truncation = Some(K);
    x
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for fan in FANS {
        for (command, name) in COMMANDS {
            let report = run(command, &input(fan), ModelOptions::default()).unwrap();
            assert_eq!(report.exit_code(), 0, "{fan} {name}");
            let text = report.to_json();
            let path = root().join(format!("tests/golden/{fan}.{name}.json"));
            if update {
                std::fs::write(&path, &text).unwrap();
                continue;
            }
            let golden = std::fs::read_to_string(&path).unwrap_or_default();
            if golden != text {
                stale.push(path.display().to_string());
            }
            assert_eq!(
                Report::from_json(&golden).ok(),
                Some(report),
                "{}",
                path.display()
            );
        }
    }
    assert!(stale.is_empty(), "golden files differ: {stale:?}");
}

fn parse_matrix(monoid: &Monoid, m: &[Vec<String>]) -> Vec<Vec<ULaurent>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|e| monoid.parse_scalar(e).unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn golden_connections_parse_back() {
    for fan in FANS {
        let inp = input(fan);
        let model = Model::new(&inp, ModelOptions::default()).unwrap();
        let monoid = model.monoid();
        let conn = model.connection().unwrap();
        let text =
            std::fs::read_to_string(root().join(format!("tests/golden/{fan}.connection.json")))
                .unwrap();
        let Report::Connection(r) = Report::from_json(&text).unwrap() else {
            panic!("{fan}: not a connection report")
        };
        for (a, m) in r.nabla_q.iter().enumerate() {
            let parsed = parse_matrix(monoid, m);
            for (i, row) in parsed.iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    assert_eq!(
                        x.shift(1),
                        *conn.q[a].get(i, k),
                        "{fan} q{} ({i}, {k})",
                        a + 1
                    );
                }
            }
        }
        let parsed = parse_matrix(monoid, &r.nabla_u);
        for (i, row) in parsed.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                assert_eq!(*x, *conn.u.get(i, k), "{fan} u ({i}, {k})");
            }
        }
    }
}

#[derive(Deserialize)]
struct Annotation {
    direction: usize,
    column: usize,
    computed: String,
    reference: String,
    agrees: bool,
}

#[test]
fn f2_annotations() {
    let text = std::fs::read_to_string(root().join("tests/golden/F2.annotations.json")).unwrap();
    let notes: Vec<Annotation> = serde_json::from_str(&text).unwrap();
    let model = Model::new(&input("F2"), ModelOptions::default()).unwrap();
    let monoid = model.monoid();
    let conn = model.connection().unwrap();
    assert_eq!(notes.len(), 8);
    for n in notes {
        let got = monoid.from_coords(&conn.q[n.direction - 1].column(n.column - 1));
        let computed = monoid.parse(&n.computed).unwrap();
        let reference = monoid.parse(&n.reference).unwrap();
        assert_eq!(got, computed, "q{} column {}", n.direction, n.column);
        assert_eq!(
            got == reference,
            n.agrees,
            "q{} column {}",
            n.direction,
            n.column
        );
    }
}
