//! Primitive integer polynomials for sign-only computations.
//!
//! Root counting only needs signs, so polynomials are scaled by a positive
//! rational to integer coefficients with content 1. Signs at rational points
//! are evaluated homogeneously without any rational normalization.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly(Vec<BigInt>);

fn sign_of(v: &BigInt) -> Ordering {
    v.cmp(&BigInt::zero())
}

impl IntPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    pub fn from_poly(p: &Polynomial) -> IntPoly {
        let m = p.to_monomial();
        let mut lcm = BigInt::one();
        for c in m.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = m
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly(coeffs).primitive()
    }

    #[cfg(test)]
    pub fn to_poly(&self) -> Polynomial {
        Polynomial::monomial(
            self.0
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn trimmed(mut v: Vec<BigInt>) -> IntPoly {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        IntPoly(v)
    }

    pub fn primitive(self) -> IntPoly {
        let mut p = IntPoly::trimmed(self.0);
        let g = p.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut p.0 {
                *c /= &g;
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `-p`
    pub fn negated(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Sign of `p(x)` for rational `x`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.0.is_empty() {
            return Ordering::Equal;
        }
        // b^n p(a/b) = Σ c_i a^i b^(n-i), with b > 0
        let a = x.numer();
        let b = x.denom();
        let n = self.0.len() - 1;
        let mut h = self.0[n].clone();
        let mut bp = BigInt::one();
        for i in (0..n).rev() {
            bp *= b;
            h = h * a + &self.0[i] * &bp;
        }
        sign_of(&h)
    }

    pub fn sign_at_pos_inf(&self) -> Ordering {
        self.0.last().map_or(Ordering::Equal, sign_of)
    }

    pub fn sign_at_neg_inf(&self) -> Ordering {
        let s = self.sign_at_pos_inf();
        if self.degree() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    /// A positive multiple of the Euclidean remainder of `self` by `divisor`.
    pub fn positive_prem(&self, divisor: &IntPoly) -> IntPoly {
        let db = divisor.degree();
        let lb = divisor.lc().clone();
        let lb_abs = lb.abs();
        let lb_sign = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut a = self.0.clone();
        while a.len() > db && !a.is_empty() {
            let da = a.len() - 1;
            let la = a[da].clone();
            let shift = da - db;
            for c in a.iter_mut() {
                *c *= &lb_abs;
            }
            let factor = &la * &lb_sign;
            for (j, bj) in divisor.0.iter().enumerate() {
                a[shift + j] -= &factor * bj;
            }
            debug_assert!(a[da].is_zero());
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
            // keep coefficient growth in check
            let p = IntPoly(a).primitive();
            a = p.0;
        }
        IntPoly::trimmed(a)
    }

    /// Integer bound `B` with every real root strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.lc().abs();
        let max = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigInt::one() + max.div_ceil(&lc) + BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn from_poly_scales_positively() {
        let p = Polynomial::monomial(vec![ratio(-1, 2), ratio(3, 4)]);
        let ip = IntPoly::from_poly(&p);
        assert_eq!(ip.coeffs(), &[BigInt::from(-2), BigInt::from(3)]);
        let q = Polynomial::monomial(vec![rat(4), rat(-6)]);
        assert_eq!(IntPoly::from_poly(&q).coeffs(), &[BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn signs() {
        let p = IntPoly::from_poly(&Polynomial::from_ints(&[-2, 0, 1]));
        assert_eq!(p.sign_at(&rat(0)), Ordering::Less);
        assert_eq!(p.sign_at(&ratio(3, 2)), Ordering::Greater);
        assert_eq!(p.sign_at(&ratio(-7, 5)), Ordering::Less);
        assert_eq!(p.sign_at_neg_inf(), Ordering::Greater);
        let c = IntPoly::from_poly(&Polynomial::from_ints(&[1, -1]));
        assert_eq!(c.sign_at_neg_inf(), Ordering::Greater);
        assert_eq!(c.sign_at_pos_inf(), Ordering::Less);
    }

    #[test]
    fn prem_is_positive_multiple() {
        let a = Polynomial::from_ints(&[1, 2, 3, 4]);
        let b = Polynomial::from_ints(&[1, 0, -5]);
        let (_, r) = a.div_rem(&b);
        let ip = IntPoly::from_poly(&a).positive_prem(&IntPoly::from_poly(&b));
        let ratio_ = &ip.to_poly().coeffs()[1] / &r.coeffs()[1];
        assert!(ratio_ > rat(0));
        assert_eq!(ip.to_poly(), r.scale(&ratio_));
    }
}
