mod common;

use common::*;
use logmirror::fan::Fan;
use logmirror::primitive::{self, restrict_to_axis};
use logmirror::scalars::{frac, q, univariate, Laurent, LogPoly, Ring, ULaurent, Q};

const K: i64 = 8;

fn laurent_series(frame: &logmirror::primitive::Graded, row: usize, col: usize) -> Vec<Laurent> {
    (0..=K)
        .map(|i| frame.get(&[0, i]).get(row, col).clone())
        .collect()
}

#[test]
fn unit_column_at_q1_zero() {
    let model = model("F2", &Fan::hirzebruch(2), K);
    let conn = model.connection().unwrap();
    let mirror = model.mirror(&conn).unwrap();
    let len = K as usize + 1;
    let a = binomial_series(&q(-4), &frac(1, 2), len);
    let inv_a = binomial_series(&q(-4), &frac(-1, 2), len);
    let f = binomial_series(&q(-4), &q(-1), len);
    let alpha = laurent_series(&mirror.frame, 1, 0);
    let beta = laurent_series(&mirror.frame, 2, 0);
    assert_eq!(*mirror.frame.get(&[0, 0]).get(0, 0), Laurent::one());
    // z3-part of u nabla_q2 DE(phi_1) = DE(phi_2) at q1 = 0:
    // u k alpha_k + 2 u sum_j f_j alpha_(k-1-j) = a_k.
    for k in 1..len {
        let mut lhs = alpha[k].shift(1).scale(&q(k as i64));
        for j in 0..k {
            lhs = lhs.add(&alpha[k - 1 - j].shift(1).scale(&(q(2) * &f[j])));
        }
        assert_eq!(lhs, Laurent::constant(a[k].clone()), "order {k}");
        assert_eq!(beta[k], alpha[k].scale(&frac(-1, 2)));
    }
    // The unit in the flat frame, delta = A^-1 e1 = B e1, carries the
    // series with u alpha' = (1 - 1/a) / q2 and u beta = log(2 / (1 + sqrt(1 - 4 q2))).
    let ub = u_beta(len);
    let delta = &mirror.period_map.zeta_flat;
    for k in 1..len {
        let key = logmirror::scalars::Key::new(vec![0, k as i64], vec![]);
        let d2 = delta[1].at_key(&key);
        let d3 = delta[2].at_key(&key);
        assert_eq!(
            d2,
            Laurent::monomial(-1, &inv_a[k] / q(k as i64)),
            "order {k}"
        );
        assert_eq!(d3, Laurent::monomial(-1, -ub[k].clone()), "order {k}");
    }
}

#[test]
fn second_flat_coordinate() {
    let model = model("F2", &Fan::hirzebruch(2), K);
    let conn = model.connection().unwrap();
    let mirror = model.mirror(&conn).unwrap();
    let coords = &mirror.period_map.coordinates;
    assert_eq!(coords[1].ell, vec![q(1), q(0)]);
    let tau2 = restrict_to_axis(&coords[0].tau(model.monoid()).unwrap(), 1, K as usize);
    let tau3 = coords[1].tau(model.monoid()).unwrap();
    let mut plus_one = tau2.clone();
    plus_one[0] += q(1);
    let expected = univariate::inverse(&plus_one).unwrap();
    let computed: Vec<Q> = (0..K)
        .map(|k| {
            tau3.terms()
                .find(|(key, _)| key.q == vec![1, k])
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| q(0))
        })
        .collect();
    assert_eq!(computed, expected);
    // The variant q1 = tau3 (1 + q2) differs from q2^2 on.
    let variant = binomial_series(&q(1), &q(-1), K as usize);
    assert_eq!(computed[..2], variant[..2]);
    assert_ne!(computed, variant);
    assert!(coords[2].series.is_zero());
}

#[test]
fn projective_plane_flat_unit() {
    let model = model("P2", &Fan::projective_space(2), 4);
    let conn = model.connection().unwrap();
    let mirror = model.mirror(&conn).unwrap();
    let unit = primitive::flat_unit(model.monoid(), &mirror.residues);
    let tr = model.monoid().truncation().clone();
    let s = |p: i32, c: Q| ULaurent::from_laurent(&tr, &Laurent::monomial(p, c));
    let mut want = vec![LogPoly::zero(1, ULaurent::zero(&tr)); 3];
    want[0].add_term(vec![0], s(0, q(1)));
    want[1].add_term(vec![1], s(-1, q(-1)));
    want[2].add_term(vec![2], s(-2, frac(1, 2)));
    assert_eq!(unit, want);
}

#[test]
fn fano_frames_have_no_correction() {
    for (name, fan) in [
        ("P1", Fan::projective_space(1)),
        ("P2", Fan::projective_space(2)),
        ("dP1", Fan::blowup_p2()),
    ] {
        let model = model(name, &fan, 5);
        let conn = model.connection().unwrap();
        let mirror = model.mirror(&conn).unwrap();
        assert!(model.monoid().curves().is_fano(), "{name}");
        assert_eq!(mirror.birkhoff.c, mirror.frame.mul(&mirror.birkhoff.b));
        for c in &mirror.period_map.coordinates {
            assert!(c.series.is_zero(), "{name}");
        }
    }
}
