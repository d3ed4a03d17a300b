mod common;

use common::fans;
use logmirror::hodge::{Engine, PivotOrder};
use logmirror::model::random_homogeneous;
use logmirror::monoidring::{Monoid, MonoidOptions};
use logmirror::scalars::{Ring, ULaurent};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::{Arc, OnceLock};

struct Setup {
    monoid: Arc<Monoid>,
    asc: Engine,
    desc: Engine,
    low: Engine,
}

fn setups() -> &'static Vec<Setup> {
    static CELL: OnceLock<Vec<Setup>> = OnceLock::new();
    CELL.get_or_init(|| {
        fans()
            .into_iter()
            .map(|(_, fan)| {
                let opts = MonoidOptions {
                    truncation: 4,
                    ..MonoidOptions::default()
                };
                let monoid = Arc::new(Monoid::new(fan, &opts).unwrap());
                Setup {
                    asc: Engine::new(monoid.clone(), PivotOrder::Ascending),
                    desc: Engine::new(monoid.clone(), PivotOrder::Descending),
                    low: Engine::with_truncation(monoid.clone(), 2, 0, PivotOrder::Ascending),
                    monoid,
                }
            })
            .collect()
    })
}

fn weight_strategy() -> impl Strategy<Value = i64> {
    (0i64..=3).prop_map(|k| 2 * k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalize_is_idempotent(f in 0usize..5, alpha in prop::collection::vec(0i64..4, 4), p in prop::collection::vec(-2i64..3, 2)) {
        let s = &setups()[f];
        let m = &s.monoid;
        let alpha = &alpha[..m.fan().d()];
        let p = &p[..m.rank()];
        if let Some(mono) = m.canonicalize(alpha, p, &[]) {
            prop_assert_eq!(m.canonicalize(&m.beta(&mono.m), &mono.excess, &[]), Some(mono.clone()));
            prop_assert!(m.curves().member(&mono.excess));
        }
    }

    #[test]
    fn weight_is_additive(f in 0usize..5, a in prop::collection::vec(0i64..4, 4), b in prop::collection::vec(0i64..4, 4)) {
        let s = &setups()[f];
        let m = &s.monoid;
        let d = m.fan().d();
        let zero = vec![0; m.rank()];
        let x = m.canonicalize(&a[..d], &zero, &[]).unwrap();
        let y = m.canonicalize(&b[..d], &zero, &[]).unwrap();
        prop_assert_eq!(m.weight(&x), 2 * a[..d].iter().sum::<i64>());
        if let Some(xy) = m.mul(&x, &y) {
            prop_assert_eq!(m.weight(&xy), m.weight(&x) + m.weight(&y));
        }
    }

    #[test]
    fn render_parse_round_trip(f in 0usize..5, w in weight_strategy(), seed in any::<u64>()) {
        let m = &setups()[f].monoid;
        let x = random_homogeneous(m, w, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(m.parse(&m.render(&x)).unwrap(), x);
    }

    #[test]
    fn reduction_is_pivot_independent(f in 0usize..5, w in weight_strategy(), seed in any::<u64>()) {
        let s = &setups()[f];
        let x = random_homogeneous(&s.monoid, w, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(s.asc.reduce(&x).unwrap(), s.desc.reduce(&x).unwrap());
    }

    #[test]
    fn reduction_is_linear(f in 0usize..5, w in weight_strategy(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let s = &setups()[f];
        let x = random_homogeneous(&s.monoid, w, &mut ChaCha8Rng::seed_from_u64(s1));
        let y = random_homogeneous(&s.monoid, w, &mut ChaCha8Rng::seed_from_u64(s2));
        let sum: Vec<ULaurent> = s.asc.reduce(&x).unwrap().iter().zip(s.asc.reduce(&y).unwrap()).map(|(a, b)| a.add(&b)).collect();
        prop_assert_eq!(s.asc.reduce(&x.add(&y)).unwrap(), sum);
    }

    #[test]
    fn truncation_commutes_with_reduction(f in 0usize..5, w in weight_strategy(), seed in any::<u64>()) {
        let s = &setups()[f];
        let x = random_homogeneous(&s.monoid, w, &mut ChaCha8Rng::seed_from_u64(seed));
        let high: Vec<ULaurent> = s.asc.reduce(&x).unwrap().iter().map(|c| c.retruncate(s.low.truncation())).collect();
        prop_assert_eq!(high, s.low.reduce(&x).unwrap());
    }
}
