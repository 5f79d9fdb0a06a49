//! Sturm chains, root isolation and refinement for squarefree polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use crate::poly::Rational;

/// Interval endpoint, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

/// Isolating interval for one real root.
///
/// `lo == hi` means the root is exactly `lo`. Otherwise the root lies
/// strictly inside `(lo, hi)` and neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "crate::harness::serial::rational")]
    pub lo: Rational,
    #[serde(with = "crate::harness::serial::rational")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn exact(r: Rational) -> Self {
        RootInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
pub(crate) struct SturmChain {
    chain: Vec<IntPoly>,
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    /// Chain for a squarefree, nonzero polynomial.
    pub fn new(p: &IntPoly) -> Self {
        debug_assert!(!p.is_zero());
        let mut chain = vec![p.clone()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].positive_prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.negated().primitive());
        }
        debug_assert!(
            chain.last().is_none_or(|c| c.degree() == 0),
            "Sturm chain applied to a non-squarefree polynomial"
        );
        SturmChain { chain }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations_at(&self, b: &Bound) -> usize {
        match b {
            Bound::NegInfinity => variations(self.chain.iter().map(IntPoly::sign_at_neg_inf)),
            Bound::PosInfinity => variations(self.chain.iter().map(IntPoly::sign_at_pos_inf)),
            Bound::Finite(x) => variations(self.chain.iter().map(|p| p.sign_at(x))),
        }
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let vl = self.variations_at(lo);
        let vh = self.variations_at(hi);
        vl.saturating_sub(vh)
    }

    /// Isolating intervals for all real roots, in increasing order.
    pub fn isolate(&self) -> Vec<RootInterval> {
        let p = self.poly();
        if p.degree() == 0 {
            return Vec::new();
        }
        if p.degree() == 1 {
            let c = p.coeffs();
            let r = Rational::new(-c[0].clone(), c[1].clone());
            return vec![RootInterval::exact(r)];
        }
        let b = Rational::from_integer(p.root_bound());
        let lo = -b.clone();
        let n = self.count(&Bound::Finite(lo.clone()), &Bound::Finite(b.clone()));
        let mut out = Vec::with_capacity(n);
        self.split(lo, b, n, &mut out);
        out
    }

    // (lo, hi) with non-root endpoints holding `n` roots; pushes in order.
    fn split(&self, lo: Rational, hi: Rational, n: usize, out: &mut Vec<RootInterval>) {
        if n == 0 {
            return;
        }
        if n == 1 {
            out.push(RootInterval { lo, hi });
            return;
        }
        let two = Rational::from_integer(BigInt::from(2));
        let mid = (&lo + &hi) / &two;
        let p = self.poly();
        if p.sign_at(&mid) == Ordering::Equal {
            // isolate the exact root at `mid` from its neighbours
            let mut eps = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
            loop {
                let l = &mid - &eps;
                let h = &mid + &eps;
                if p.sign_at(&l) != Ordering::Equal
                    && p.sign_at(&h) != Ordering::Equal
                    && self.count(&Bound::Finite(l.clone()), &Bound::Finite(h.clone())) == 1
                {
                    let nl = self.count(&Bound::Finite(lo.clone()), &Bound::Finite(l.clone()));
                    let nh = n - 1 - nl;
                    self.split(lo, l, nl, out);
                    out.push(RootInterval::exact(mid));
                    self.split(h, hi, nh, out);
                    return;
                }
                eps /= &two;
            }
        }
        let nl = self.count(&Bound::Finite(lo.clone()), &Bound::Finite(mid.clone()));
        self.split(lo, mid.clone(), nl, out);
        self.split(mid, hi, n - nl, out);
    }
}

/// Bisect a root interval of squarefree `p` until its width is at most `tol`.
pub(crate) fn refine(p: &IntPoly, iv: &RootInterval, tol: &Rational) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = p.sign_at(&lo);
    let two = Rational::from_integer(BigInt::from(2));
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return RootInterval::exact(mid),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    RootInterval { lo, hi }
}

/// Decide whether the root in `iv` is rational, and return it exactly if so.
///
/// `p` is primitive, so any rational root has a denominator dividing the
/// leading coefficient: it lies on the grid `ℤ / |lc|`. Once the interval is
/// narrower than the grid spacing at most one grid point remains to test.
pub(crate) fn exact_rational(p: &IntPoly, iv: &RootInterval) -> Option<Rational> {
    if iv.is_exact() {
        return Some(iv.lo.clone());
    }
    let lc = p.lc().abs();
    let spacing = Rational::new(BigInt::one(), lc.clone());
    let tight = refine(p, iv, &(&spacing / Rational::from_integer(BigInt::from(2))));
    if tight.is_exact() {
        return Some(tight.lo);
    }
    let k = (&tight.lo * Rational::from_integer(lc.clone())).floor() + Rational::one();
    let candidate = k / Rational::from_integer(lc);
    if candidate > tight.lo && candidate < tight.hi && p.sign_at(&candidate) == Ordering::Equal {
        Some(candidate)
    } else {
        None
    }
}

/// A rational point where `p` is nonzero and has the sign of `p` at +∞,
/// i.e. beyond every real root.
pub(crate) fn beyond_roots(p: &IntPoly) -> Rational {
    if p.degree() == 0 {
        return Rational::zero();
    }
    Rational::from_integer(p.root_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio, Polynomial};

    fn chain(coeffs: &[i64]) -> SturmChain {
        SturmChain::new(&IntPoly::from_poly(&Polynomial::from_ints(coeffs)))
    }

    #[test]
    fn counts() {
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(chain(&[-1, 0, 1]).count(&all.0, &all.1), 2);
        assert_eq!(chain(&[1, 0, 1]).count(&all.0, &all.1), 0);
        let c = chain(&[-28, 39, -12, 1]);
        assert_eq!(c.count(&Bound::Finite(rat(0)), &Bound::Finite(rat(5))), 2);
        // half-open: (1, 4] contains only 4
        assert_eq!(c.count(&Bound::Finite(rat(1)), &Bound::Finite(rat(4))), 1);
    }

    #[test]
    fn isolates_sqrt2() {
        let c = chain(&[-2, 0, 1]);
        let ivs = c.isolate();
        assert_eq!(ivs.len(), 2);
        let r = refine(c.poly(), &ivs[1], &ratio(1, 1000));
        assert!(r.lo < ratio(1415, 1000) && r.hi > ratio(1414, 1000));
        assert_eq!(exact_rational(c.poly(), &ivs[1]), None);
    }

    #[test]
    fn finds_rational_roots() {
        let p = Polynomial::from_roots(&[ratio(-1, 3), ratio(5, 7), rat(2)], ratio(3, 2));
        let ip = IntPoly::from_poly(&p);
        let c = SturmChain::new(&ip);
        let roots: Vec<_> = c
            .isolate()
            .iter()
            .map(|iv| exact_rational(&ip, iv).unwrap())
            .collect();
        assert_eq!(roots, vec![ratio(-1, 3), ratio(5, 7), rat(2)]);
    }
}
