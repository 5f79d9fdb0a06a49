mod common;

use common::{falling_value, poly, rational};
use fdps::poly::stirling::first_kind_row;
use fdps::poly::{rat, ratio, sequence_convert, Basis, Combine, Difference, Polynomial, SequenceDirection};
use fdps::operators::DiagonalSequence;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn delta_power(p: &Polynomial, k: usize) -> Polynomial {
    (0..k).fold(p.clone(), |acc, _| acc.difference(Difference::Backward))
}

// Σ aᵢ (x)ᵢ Δⁱ p, built from multiplication and differences only.
fn expansion_apply(a: &[fdps::Rational], p: &Polynomial) -> Polynomial {
    a.iter().enumerate().fold(Polynomial::zero(), |acc, (i, ai)| {
        let term = &Polynomial::pochhammer(i).to_monomial() * &delta_power(p, i);
        &acc + &term.scale(ai)
    })
}

proptest! {
    #[test]
    fn add_and_multiply_commute_and_associate(p in poly(5), q in poly(5), r in poly(5)) {
        prop_assert_eq!(p.combine(&q, &Combine::Add), q.combine(&p, &Combine::Add));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn degree_is_additive(p in poly(6), q in poly(6)) {
        let product = &p * &q;
        match (p.deg(), q.deg()) {
            (Some(a), Some(b)) => prop_assert_eq!(product.deg(), Some(a + b)),
            _ => prop_assert!(product.is_zero()),
        }
    }

    #[test]
    fn shifts_compose(p in poly(6), a in rational(4, 5), b in rational(4, 5), x0 in rational(6, 3)) {
        prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(&a + &b)));
        prop_assert_eq!(p.shift(&a).evaluate(&x0), p.evaluate(&(&x0 - &a)));
    }

    #[test]
    fn differences_commute(p in poly(7)) {
        let dn = p.difference(Difference::Forward).difference(Difference::Backward);
        let nd = p.difference(Difference::Backward).difference(Difference::Forward);
        prop_assert_eq!(&dn, &nd);
        prop_assert_eq!(p.difference(Difference::Backward), p.difference(Difference::Forward).shift(&rat(1)));
        prop_assert_eq!(
            p.shift(&rat(1)).difference(Difference::Backward),
            p.difference(Difference::Backward).shift(&rat(1))
        );
    }

    #[test]
    fn difference_values(p in poly(6), x0 in rational(5, 3)) {
        let back = p.difference(Difference::Backward).evaluate(&x0);
        prop_assert_eq!(back, p.evaluate(&x0) - p.evaluate(&(&x0 - rat(1))));
        let fwd = p.difference(Difference::Forward).evaluate(&x0);
        prop_assert_eq!(fwd, p.evaluate(&(&x0 + rat(1))) - p.evaluate(&x0));
    }

    #[test]
    fn basis_round_trip(p in poly(8)) {
        let q = p.to_pochhammer();
        prop_assert_eq!(q.basis(), Basis::Pochhammer);
        prop_assert_eq!(q.to_monomial(), p.clone());
        prop_assert_eq!(q.to_monomial().to_pochhammer(), q);
    }

    #[test]
    fn pochhammer_form_evaluates_as_falling_factorials(p in poly(7), x0 in rational(6, 2)) {
        let q = p.to_pochhammer();
        let value = q
            .coeffs()
            .iter()
            .enumerate()
            .fold(ratio(0, 1), |acc, (i, c)| acc + c * falling_value(i, &x0));
        prop_assert_eq!(value, p.evaluate(&x0));
    }

    #[test]
    fn sequence_round_trip(values in prop::collection::vec(rational(50, 7), 0..=20)) {
        let a = sequence_convert(&values, SequenceDirection::AlphaToA);
        prop_assert_eq!(sequence_convert(&a, SequenceDirection::AToAlpha), values.clone());
        let alpha = sequence_convert(&values, SequenceDirection::AToAlpha);
        prop_assert_eq!(sequence_convert(&alpha, SequenceDirection::AlphaToA), values);
    }

    #[test]
    fn diagonal_consistency(a in prop::collection::vec(rational(4, 3), 1..=5), j in 0usize..=8) {
        let alpha = sequence_convert(&a, SequenceDirection::AToAlpha);
        let xj = Polynomial::pochhammer(j).to_monomial();
        let image = expansion_apply(&a, &xj);
        // αⱼ for j beyond the list: the expansion has no terms of index > len
        let padded: Vec<_> = a.iter().cloned().chain(std::iter::repeat(ratio(0, 1))).take(j + 1).collect();
        let alpha_j = sequence_convert(&padded, SequenceDirection::AToAlpha)[j].clone();
        if j < alpha.len() {
            prop_assert_eq!(&alpha_j, &alpha[j]);
        }
        prop_assert_eq!(image, xj.scale(&alpha_j));
    }

    #[test]
    fn diagonal_apply_matches_expansion(a in prop::collection::vec(rational(4, 3), 1..=5), p in poly(6)) {
        let n = p.deg().unwrap_or(0);
        let padded: Vec<_> = a.iter().cloned().chain(std::iter::repeat(ratio(0, 1))).take(n.max(a.len() - 1) + 1).collect();
        let alpha = sequence_convert(&padded, SequenceDirection::AToAlpha);
        let diagonal = DiagonalSequence::table(alpha).apply(&p).unwrap();
        prop_assert_eq!(diagonal.to_monomial(), expansion_apply(&a, &p));
    }
}

// s(n+1, k) = s(n, k-1) - n s(n, k)
fn signed_stirling_first(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for m in 0..n {
        let mut next = vec![0i64; row.len() + 1];
        for (k, s) in row.iter().enumerate() {
            next[k + 1] += s;
            next[k] -= m as i64 * s;
        }
        row = next;
    }
    row
}

#[test]
fn library_stirling_rows_match_recurrence() {
    for n in 0..=12 {
        let lib: Vec<i64> = first_kind_row(n).iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(lib, signed_stirling_first(n));
    }
}

#[test]
fn falling_factorials_have_alternating_integer_coefficients() {
    for i in 0..=12 {
        let m = Polynomial::pochhammer(i).to_monomial();
        let row = signed_stirling_first(i);
        assert_eq!(m.coeffs().len(), i + 1);
        for (k, c) in m.coeffs().iter().enumerate() {
            assert!(c.is_integer());
            assert_eq!(c, &rat(row[k]));
            if !c.is_zero() {
                let sign_ok = if (i - k).is_multiple_of(2) { c.is_positive() } else { c.is_negative() };
                assert!(sign_ok, "(x)_{i} coefficient {k} = {c}");
            }
        }
    }
}

#[test]
fn worked_conversions() {
    let p = Polynomial::from_roots(&[rat(1), rat(4), rat(7)], rat(1));
    assert_eq!(p, Polynomial::from_ints(&[-28, 39, -12, 1]));
    let q = p.to_pochhammer();
    assert_eq!(q.coeffs(), Polynomial::from_ints(&[-28, 28, -9, 1]).coeffs());
    let x3 = Polynomial::from_ints(&[0, 0, 0, 1]).to_pochhammer();
    assert_eq!(x3.coeffs(), Polynomial::from_ints(&[0, 1, 3, 1]).coeffs());
}
