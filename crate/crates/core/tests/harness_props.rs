mod common;

use common::{poly, rational};
use fdps::harness::fixtures::{derive_seed, gen_fixture, trial_rng};
use fdps::harness::search::{run_search, run_trial, SearchConfig, SearchKind, TrialRecord, TrialStatus};
use fdps::harness::serial::{from_json, to_json};
use fdps::poly::{rat, Basis, Polynomial};
use fdps::verify::{class_violation, Transform};
use fdps::{class_membership, ClassSpec, DiagonalSequence, Error, FiniteDifferenceOperator, Operator};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn polynomials_round_trip(p in poly(8), pochhammer in any::<bool>()) {
        let p = if pochhammer { p.to_pochhammer() } else { p };
        let back: Polynomial = from_json(&to_json(&p)).unwrap();
        prop_assert_eq!(back.basis(), p.basis());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn operators_and_sequences_round_trip(
        coeffs in prop::collection::vec(poly(3), 1..=4),
        values in prop::collection::vec(rational(9, 7), 0..=8),
        phi in poly(3),
    ) {
        let op = Operator::from(FiniteDifferenceOperator::new(coeffs));
        let back: Operator = from_json(&to_json(&op)).unwrap();
        prop_assert_eq!(back, op);
        for seq in [DiagonalSequence::table(values.clone()), DiagonalSequence::Phi(phi.clone())] {
            let back: DiagonalSequence = from_json(&to_json(&seq)).unwrap();
            prop_assert_eq!(back, seq);
        }
    }
}

#[test]
fn polynomial_json_schema() {
    let p = Polynomial::from_ints(&[-28, 39, -12, 1]);
    let text = r#"{"basis":"monomial","coeffs":["-28/1","39/1","-12/1","1/1"]}"#;
    assert_eq!(to_json(&p), text);
    assert_eq!(from_json::<Polynomial>(text).unwrap(), Polynomial::from_roots(&[rat(1), rat(4), rat(7)], rat(1)));
    assert_eq!(to_json(&Polynomial::zero()), r#"{"basis":"monomial","coeffs":[]}"#);
    let bare: Polynomial = from_json(r#"{"basis":"pochhammer","coeffs":["0", 2, "-3/6"]}"#).unwrap();
    assert_eq!(bare.basis(), Basis::Pochhammer);
    assert_eq!(bare.coeff(2), fdps::poly::ratio(-1, 2));
}

#[test]
fn operator_and_sequence_json_keys() {
    let delta = Operator::from(FiniteDifferenceOperator::constant(&[rat(1), rat(-1)]));
    let v: serde_json::Value = serde_json::from_str(&to_json(&delta)).unwrap();
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 2);
    assert_eq!(v["coeffs"][1]["coeffs"][0], "-1/1");
    let seq: serde_json::Value = serde_json::from_str(&to_json(&DiagonalSequence::table(vec![rat(1)]))).unwrap();
    assert_eq!(seq["values"][0], "1/1");
    let seq: serde_json::Value = serde_json::from_str(&to_json(&DiagonalSequence::Phi(Polynomial::x()))).unwrap();
    assert_eq!(seq["phi"]["basis"], "monomial");
}

#[test]
fn malformed_input_reports_position() {
    let err = from_json::<Polynomial>("{\n  \"basis\": \"monomial\",\n  \"coeffs\": [\"1/0\"]\n}").unwrap_err();
    match err {
        Error::Parse { line, column, .. } => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(from_json::<Polynomial>("{\"basis\": \"cubic\"}"), Err(Error::Parse { line: 1, .. })));
}

#[test]
fn generated_fixtures_are_sound() {
    let classes = [
        ClassSpec::hp(),
        ClassSpec::hp_mesh(rat(1)),
        ClassSpec::hp_plus(rat(1)),
        ClassSpec::hp_mesh(fdps::poly::ratio(3, 2)),
        ClassSpec::hp_plus(rat(2)),
    ];
    for (c, class) in classes.iter().enumerate() {
        for i in 0..2000u64 {
            let mut rng = trial_rng(11, c as u64, i);
            let degree = 1 + (i % 6) as usize;
            let p = gen_fixture(class, degree, &mut rng);
            assert_eq!(p.deg(), Some(degree));
            assert!(class_membership(&p, class), "{class}: {p}");
        }
    }
    let mut rng = trial_rng(11, 99, 0);
    let c = gen_fixture(&ClassSpec::hp_plus(rat(1)), 0, &mut rng);
    assert_eq!(c.deg(), Some(0));
    let again = gen_fixture(&ClassSpec::hp_plus(rat(1)), 4, &mut trial_rng(5, 6, 7));
    assert_eq!(again, gen_fixture(&ClassSpec::hp_plus(rat(1)), 4, &mut trial_rng(5, 6, 7)));
    assert_ne!(derive_seed(1, 2, 3), derive_seed(1, 2, 4));
}

#[test]
fn bullet_of_falling_factorials_is_consistent() {
    let x2 = Polynomial::pochhammer(2).to_monomial();
    let t = Transform::Bullet { left: x2.clone(), d: 2 };
    let image = t.apply(&x2).unwrap();
    assert_eq!(image, x2.scale(&rat(2)));
    assert!(class_violation(&image, &ClassSpec::hp_mesh(rat(1))).is_none());
}

#[test]
fn second_difference_forward_direction_on_fixtures() {
    let t = FiniteDifferenceOperator::constant(&[rat(1), rat(-2), rat(1)]);
    let class = ClassSpec::hp_mesh(rat(1));
    assert!(class_membership(&t.apply(&Polynomial::pochhammer(4)), &class));
    for i in 0..100u64 {
        let mut rng = trial_rng(3, 17, i);
        let deg = rng.gen_range(0..=4);
        let image = t.apply(&gen_fixture(&class, deg, &mut rng));
        assert!(image.is_zero() || class_membership(&image, &class), "{image}");
    }
}

#[test]
fn campaigns_are_reproducible_from_index() {
    for kind in [SearchKind::FiniteDegree, SearchKind::Bullet, SearchKind::Nice, SearchKind::Lemma1] {
        let cfg = SearchConfig {
            trials: 24,
            max_degree: 4,
            fixtures_per_trial: 3,
            ..SearchConfig::new(kind, 99)
        };
        let report = run_search(&cfg);
        assert_eq!(report.to_jsonl(), run_search(&cfg).to_jsonl());
        for (i, rec) in report.records.iter().enumerate() {
            assert_eq!(rec.trial_index, i as u64);
            assert_eq!(&run_trial(&cfg, i as u64), rec);
            let back: TrialRecord = from_json(&to_json(rec)).unwrap();
            assert_eq!(&back, rec);
            if let Some(w) = &rec.witness {
                assert!(w.replay().unwrap());
            }
            if let Some(c) = &rec.certificate {
                assert_eq!(rec.status, TrialStatus::Certificate);
                assert!(c.replay().unwrap());
            }
            assert_ne!(rec.status, TrialStatus::Failed);
        }
    }
}
