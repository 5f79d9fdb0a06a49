mod common;

use common::{distinct_sorted, rational};
use fdps::harness::fixtures::{gen_fixture, trial_rng};
use fdps::interlace::{quadratic_hp1plus, quadratic_polynomial, wronskian};
use fdps::poly::{rat, ratio, Polynomial, Rational};
use fdps::{class_membership, mesh_at_least, proper_position, ClassSpec};
use proptest::prelude::*;
use rand::Rng;

// Alternate sorted distinct roots between two polynomials.
fn split(roots: &[Rational]) -> (Polynomial, Polynomial) {
    let odd: Vec<Rational> = roots.iter().step_by(2).cloned().collect();
    let even: Vec<Rational> = roots.iter().skip(1).step_by(2).cloned().collect();
    (Polynomial::from_roots(&odd, rat(1)), Polynomial::from_roots(&even, rat(1)))
}

// A polynomial whose roots interlace those of `p` and sits below it.
fn below(p_roots: &[Rational], picks: &[Rational], lead: &Rational) -> Option<Polynomial> {
    let p = Polynomial::from_roots(p_roots, rat(1));
    let q_roots: Vec<Rational> = p_roots
        .windows(2)
        .zip(picks)
        .map(|(w, t)| &w[0] + (&w[1] - &w[0]) * t)
        .collect();
    let q = Polynomial::from_roots(&q_roots, lead.clone());
    [q.clone(), -q].into_iter().find(|c| proper_position(c, &p).holds)
}

fn unit() -> impl Strategy<Value = Rational> {
    (1i64..=9).prop_map(|n| ratio(n, 10))
}

proptest! {
    #[test]
    fn interlacing_pairs_are_ordered_one_way(roots in distinct_sorted(2, 7), flip_p in any::<bool>(), flip_q in any::<bool>()) {
        let (p, q) = split(&roots);
        let p = if flip_p { -p } else { p };
        let q = if flip_q { -q } else { q };
        let pq = proper_position(&p, &q).holds;
        let qp = proper_position(&q, &p).holds;
        if wronskian(&p, &q).is_zero() {
            prop_assert!(pq && qp);
        } else {
            prop_assert!(pq != qp, "p = {}, q = {}", p, q);
        }
    }

    #[test]
    fn non_interlacing_pairs_fail_both_ways(roots in distinct_sorted(4, 7)) {
        prop_assume!(roots.len() >= 4);
        // two adjacent roots in the same factor break interlacing
        let p = Polynomial::from_roots(&roots[..2], rat(1));
        let q = Polynomial::from_roots(&roots[2..], rat(1));
        prop_assert!(!proper_position(&p, &q).holds);
        prop_assert!(!proper_position(&q, &p).holds);
    }

    #[test]
    fn cone_property(
        p_roots in distinct_sorted(2, 6),
        t1 in prop::collection::vec(unit(), 5),
        t2 in prop::collection::vec(unit(), 5),
        l1 in common::nonzero_rational(3, 3),
        l2 in common::nonzero_rational(3, 3),
        c1 in rational(4, 5).prop_map(|c| if c < rat(0) { -c } else { c }),
        c2 in rational(4, 5).prop_map(|c| if c < rat(0) { -c } else { c }),
    ) {
        let p = Polynomial::from_roots(&p_roots, rat(1));
        let (Some(q1), Some(q2)) = (below(&p_roots, &t1, &l1), below(&p_roots, &t2, &l2)) else {
            return Err(TestCaseError::reject("no orientation below p"));
        };
        let combo = &q1.scale(&c1) + &q2.scale(&c2);
        prop_assume!(!combo.is_zero());
        prop_assert!(proper_position(&combo, &p).holds, "c1 q1 + c2 q2 = {}", combo);
    }

    #[test]
    fn shear_property(roots in distinct_sorted(2, 7), cs in prop::collection::vec(rational(5, 7), 20)) {
        let (p, q) = split(&roots);
        let (p, q) = if proper_position(&p, &q).holds { (p, q) } else { (q, p) };
        prop_assert!(proper_position(&p, &q).holds);
        for c in &cs {
            let sheared = &q + &p.scale(c);
            prop_assert!(proper_position(&p, &sheared).holds, "c = {}", c);
        }
    }

    #[test]
    fn mesh_at_least_is_membership(seed in any::<u64>(), degree in 0usize..=6, alpha_num in 1i64..=12) {
        let alpha = ratio(alpha_num, 4);
        let mut rng = trial_rng(seed, 1, 0);
        let class = ClassSpec::hp_mesh(alpha.clone());
        let p = gen_fixture(&class, degree, &mut rng);
        let nudge: Rational = ratio(rng.gen_range(-4..=4), 8);
        let probe = &alpha + &nudge;
        prop_assert!(mesh_at_least(&p, &alpha));
        prop_assert_eq!(mesh_at_least(&p, &probe), class_membership(&p, &ClassSpec::hp_mesh(probe.clone())));
    }
}

#[test]
fn quadratic_criterion_on_rational_grid() {
    let mut grid = Vec::new();
    for d in 1..=3 {
        for n in 0..=5 * d {
            grid.push(ratio(n, d));
        }
    }
    grid.sort();
    grid.dedup();
    let class = ClassSpec::hp_plus(rat(1));
    for a in grid.iter().filter(|a| **a > rat(0)) {
        for b in &grid {
            for c in &grid {
                let p = quadratic_polynomial(a, b, c);
                // independent oracle: real roots r ≤ s with r ≥ 0 and s - r ≥ 1
                let disc = (a + rat(2) * b) * (a + rat(2) * b) - rat(4) * a * c;
                let expected = disc >= rat(0) && disc >= a * a && {
                    let sum = (a + rat(2) * b) / a;
                    let prod = c / a;
                    sum >= rat(0) && prod >= rat(0)
                };
                assert_eq!(quadratic_hp1plus(a, b, c).unwrap(), expected, "A={a} B={b} C={c}");
                assert_eq!(class_membership(&p, &class), expected, "A={a} B={b} C={c}");
            }
        }
    }
}
