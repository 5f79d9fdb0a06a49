mod common;

use fdps::harness::fixtures::{gen_fixture, trial_rng};
use fdps::operators::DiagonalSequence;
use fdps::poly::{rat, ratio, Polynomial, Rational};
use fdps::verify::{
    alink_witness, check_riesz_plus, claim2_path, dms_test, herpou_verdict, Outcome, SearchBounds, Violation,
};
use fdps::{class_membership, ClassSpec};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn small_bounds(seed: u64) -> SearchBounds {
    SearchBounds {
        trials: 20,
        max_degree: 5,
        seed,
        ..SearchBounds::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn herpou_witnesses_replay(neg in (1i64..=8, 1i64..=4), rest in prop::collection::vec((0i64..=6, 1i64..=3), 0..=2)) {
        let mut roots = vec![-ratio(neg.0, neg.1)];
        roots.extend(rest.into_iter().map(|(n, d)| ratio(n, d)));
        let q = Polynomial::from_roots(&roots, rat(1));
        let v = herpou_verdict(&q, &SearchBounds::default()).unwrap();
        match &v.outcome {
            Outcome::Fails { witness } => {
                prop_assert!(witness.replay().unwrap());
                // the stored image must be the one the input produces
                let mut tampered = (**witness).clone();
                tampered.image = &tampered.image + &Polynomial::one();
                prop_assert!(!tampered.replay().unwrap());
                prop_assert!(!class_membership(&witness.image, &ClassSpec::hp_mesh(rat(1))));
            }
            Outcome::Inconclusive { .. } => {}
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn riesz_plus_keeps_the_class(seed in any::<u64>(), lambda_num in 4i64..=16, alpha_num in 2i64..=8) {
        let lambda = ratio(lambda_num, 4);
        let alpha = ratio(alpha_num, 4);
        let mut rng = trial_rng(seed, 3, 0);
        let deg = rng.gen_range(0..=5);
        let p = gen_fixture(&ClassSpec::hp_plus(alpha.clone()), deg, &mut rng);
        prop_assert!(check_riesz_plus(&lambda, &alpha, &p).unwrap().holds());
    }

    #[test]
    fn claim2_proper_positions_hold(seed in any::<u64>(), lambda in (0i64..=40, 1i64..=4).prop_map(|(n, d)| ratio(n, d))) {
        let mut rng = trial_rng(seed, 4, 0);
        let deg = rng.gen_range(1..=5);
        let p = gen_fixture(&ClassSpec::hp_plus(rat(1)), deg, &mut rng);
        prop_assert!(claim2_path(&lambda, &p).is_none());
    }

    #[test]
    fn passing_sequences_are_monotone_where_it_matters(values in prop::collection::vec(0i64..=3, 3..=6), seed in any::<u64>()) {
        let alpha: Vec<Rational> = values.iter().map(|v| rat(*v)).collect();
        let v = dms_test(&DiagonalSequence::table(alpha.clone()), &small_bounds(seed));
        let nonzero = alpha.iter().filter(|a| !a.is_zero()).count();
        if v.holds() && nonzero >= 3 {
            for m in 0..alpha.len() - 2 {
                if alpha[m + 2] > rat(0) {
                    prop_assert!(alpha[m] <= alpha[m + 1], "alpha = {:?}", values);
                }
            }
        }
        if let Some(w) = v.witness() {
            prop_assert!(w.replay().unwrap());
        }
    }
}

#[test]
fn alink_on_a_rational_grid() {
    let grid: Vec<Rational> = (0..=8).map(|n| ratio(n, 2)).collect();
    let mut checked = 0;
    for a0 in &grid {
        for a1 in &grid {
            for a2 in grid.iter().filter(|a| **a > rat(0)) {
                if a0 <= a1 {
                    continue;
                }
                for m in [0usize, 1, 3] {
                    let v = alink_witness(a0, a1, a2, m);
                    let w = v.witness().unwrap_or_else(|| panic!("({a0}, {a1}, {a2}) m = {m}: {:?}", v.outcome));
                    assert!(w.replay().unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn alink_spot_case() {
    let v = alink_witness(&rat(2), &rat(1), &rat(1), 0);
    let w = v.witness().unwrap();
    assert_eq!(w.image, Polynomial::from_ints(&[4, -3, 1]));
    assert_eq!(w.violation, Violation::NotHyperbolic);
}

#[test]
fn herpou_examples() {
    let q = Polynomial::from_ints(&[1, 1]);
    let v = herpou_verdict(&q, &SearchBounds::default()).unwrap();
    let w = v.witness().unwrap();
    assert_eq!(w.input, Polynomial::pochhammer(2).to_monomial());
    assert_eq!(w.image, Polynomial::from_roots(&[rat(1), rat(1)], rat(2)));
    let q = Polynomial::from_ints(&[1, 0, -1]);
    let w = herpou_verdict(&q, &SearchBounds::default()).unwrap().witness().cloned().unwrap();
    assert_eq!(w.input, Polynomial::pochhammer(3).to_monomial());
    assert_eq!(w.image, Polynomial::from_roots(&[rat(2), rat(2)], rat(6)));
    let nonneg = Polynomial::from_roots(&[rat(0), ratio(3, 2)], rat(1));
    assert!(herpou_verdict(&nonneg, &small_bounds(1)).unwrap().holds());
}
