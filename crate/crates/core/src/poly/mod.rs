//! Exact univariate polynomials over ℚ in the monomial and Pochhammer bases.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

mod sequence;
pub mod stirling;

pub use sequence::{sequence_convert, SequenceDirection, SequencePair};

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    /// Falling factorials `(x)_0 = 1`, `(x)_i = x(x-1)…(x-i+1)`.
    Pochhammer,
}

/// Polynomial degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Difference {
    /// `Δp(x) = p(x) - p(x-1)`
    Backward,
    /// `∇p(x) = p(x+1) - p(x)`
    Forward,
}

#[derive(Clone, Debug)]
pub enum Combine {
    Add,
    Subtract,
    Multiply,
    Scale(Rational),
}

/// A polynomial with exact rational coefficients tagged with its basis.
///
/// Coefficient `i` multiplies `x^i` or `(x)_i`; trailing zeros are trimmed so
/// the zero polynomial has no coefficients at all.
#[derive(Clone, Debug)]
pub struct Polynomial {
    basis: Basis,
    coeffs: Vec<Rational>,
}

fn trim(coeffs: &mut Vec<Rational>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

impl Polynomial {
    pub fn new(basis: Basis, mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        Polynomial { basis, coeffs }
    }

    pub fn monomial(coeffs: Vec<Rational>) -> Self {
        Self::new(Basis::Monomial, coeffs)
    }

    /// Monomial-basis polynomial from integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::monomial(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::monomial(vec![-a.clone(), Rational::one()])
    }

    /// `(x)_i` stored in the Pochhammer basis.
    pub fn pochhammer(i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); i + 1];
        coeffs[i] = Rational::one();
        Self::new(Basis::Pochhammer, coeffs)
    }

    /// `lead · Π (x - r)`, monomial basis.
    pub fn from_roots(roots: &[Rational], lead: Rational) -> Self {
        let mut coeffs = vec![lead];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        Self::monomial(coeffs)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    /// Leading coefficient. `(x)_i` is monic, so this is basis independent.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Coefficient of index `i` in this polynomial's own basis.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_basis(&self, target: Basis) -> Polynomial {
        if self.basis == target {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = match target {
                Basis::Monomial => stirling::first_kind_row(i),
                Basis::Pochhammer => stirling::second_kind_row(i),
            };
            for (k, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    out[k] += c * Rational::from_integer(s.clone());
                }
            }
        }
        Polynomial::new(target, out)
    }

    pub fn to_monomial(&self) -> Polynomial {
        self.to_basis(Basis::Monomial)
    }

    pub fn to_pochhammer(&self) -> Polynomial {
        self.to_basis(Basis::Pochhammer)
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        match self.basis {
            Basis::Monomial => {
                for c in self.coeffs.iter().rev() {
                    acc = acc * x + c;
                }
            }
            Basis::Pochhammer => {
                // a_0 + x(a_1 + (x-1)(a_2 + (x-2)(…)))
                for i in (0..self.coeffs.len()).rev() {
                    acc = &self.coeffs[i] + acc;
                    if i > 0 {
                        acc *= x - rat(i as i64 - 1);
                    }
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::new(self.basis, Vec::new());
        }
        Polynomial::new(self.basis, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        let m = self.to_monomial();
        let coeffs = m
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        Polynomial::monomial(coeffs)
    }

    /// `p(x - a)`: every root moves right by `a`.
    pub fn shift(&self, a: &Rational) -> Polynomial {
        let m = self.to_monomial();
        if a.is_zero() {
            return m;
        }
        // Horner in the ring: acc = acc·(x - a) + c
        let mut acc: Vec<Rational> = Vec::with_capacity(m.coeffs.len());
        for c in m.coeffs.iter().rev() {
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (i, v) in acc.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * a;
            }
            next[0] += c;
            acc = next;
        }
        Polynomial::monomial(acc)
    }

    pub fn difference(&self, dir: Difference) -> Polynomial {
        match dir {
            Difference::Backward => &self.to_monomial() - &self.shift(&rat(1)),
            Difference::Forward => &self.shift(&rat(-1)) - &self.to_monomial(),
        }
    }

    /// `p(c·x)`
    pub fn scale_argument(&self, c: &Rational) -> Polynomial {
        let m = self.to_monomial();
        let mut pow = Rational::one();
        let mut coeffs = Vec::with_capacity(m.coeffs.len());
        for a in &m.coeffs {
            coeffs.push(a * &pow);
            pow *= c;
        }
        Polynomial::monomial(coeffs)
    }

    /// Euclidean division in ℚ[x]; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let d = divisor.to_monomial();
        let lead = d.coeffs.last().expect("division by the zero polynomial").clone();
        let mut rem = self.to_monomial().coeffs;
        let dn = d.coeffs.len();
        if rem.len() < dn {
            return (Polynomial::zero(), Polynomial::monomial(rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn - 1);
        (Polynomial::monomial(quot), Polynomial::monomial(rem))
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd in ℚ[x]; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.to_monomial();
        let mut b = other.to_monomial();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn combine(&self, other: &Polynomial, kind: &Combine) -> Polynomial {
        match kind {
            Combine::Add => self + other,
            Combine::Subtract => self - other,
            Combine::Multiply => self * other,
            Combine::Scale(c) => self.scale(c),
        }
    }

    fn same_basis_pair(&self, other: &Polynomial) -> (Basis, Vec<Rational>, Vec<Rational>) {
        if self.basis == other.basis {
            (self.basis, self.coeffs.clone(), other.coeffs.clone())
        } else {
            (
                Basis::Monomial,
                self.to_monomial().coeffs,
                other.to_monomial().coeffs,
            )
        }
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let v = self.evaluate(x);
        if v.is_zero() {
            Ordering::Equal
        } else if v.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.basis == other.basis {
            self.coeffs == other.coeffs
        } else {
            self.to_monomial().coeffs == other.to_monomial().coeffs
        }
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (basis, mut a, b) = self.same_basis_pair(rhs);
        if a.len() < b.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Polynomial::new(basis, a)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let (basis, mut a, b) = self.same_basis_pair(rhs);
        if a.len() < b.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        Polynomial::new(basis, a)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let a = self.to_monomial();
        let b = rhs.to_monomial();
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Polynomial::monomial(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.basis, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let term = match (i, self.basis) {
                (0, _) => String::new(),
                (1, Basis::Monomial) => "x".to_string(),
                (_, Basis::Monomial) => format!("x^{i}"),
                (_, Basis::Pochhammer) => format!("(x)_{i}"),
            };
            if term.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{term}")?;
            } else {
                write!(f, "{mag}*{term}")?;
            }
        }
        Ok(())
    }
}
