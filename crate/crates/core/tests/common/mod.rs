#![allow(dead_code)]

use fdps::poly::{ratio, Polynomial, Rational};
use proptest::prelude::*;

pub fn rational(range: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-range * max_den..=range * max_den, 1..=max_den).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational(range: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    rational(range, max_den).prop_filter("nonzero", |r| *r != ratio(0, 1))
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(6, 4), 0..=max_len).prop_map(Polynomial::monomial)
}

pub fn roots(min: usize, max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(5, 4), min..=max)
}

/// Distinct roots in increasing order.
pub fn distinct_sorted(min: usize, max: usize) -> impl Strategy<Value = Vec<Rational>> {
    roots(min, max).prop_map(|mut r| {
        r.sort();
        r.dedup();
        r
    })
}

pub fn falling_value(i: usize, x: &Rational) -> Rational {
    (0..i).fold(ratio(1, 1), |acc, k| acc * (x - ratio(k as i64, 1)))
}

pub fn min_gap(sorted: &[Rational]) -> Option<Rational> {
    sorted.windows(2).map(|w| &w[1] - &w[0]).min()
}
