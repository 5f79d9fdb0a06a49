//! Finite difference operators, diagonal operators on the Pochhammer basis,
//! and the other linear maps the theory uses.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, Basis, Polynomial, Rational};
use crate::roots::{Analysis, RootInterval};

/// `T(p)(x) = Σⱼ qⱼ(x) p(x - j)` for `j = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDifferenceOperator {
    coeffs: Vec<Polynomial>,
}

impl FiniteDifferenceOperator {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        let mut coeffs: Vec<Polynomial> = coeffs.iter().map(Polynomial::to_monomial).collect();
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        FiniteDifferenceOperator { coeffs }
    }

    /// Constant-coefficient operator `Σ aⱼ p(x - j)`.
    pub fn constant(a: &[Rational]) -> Self {
        Self::new(a.iter().cloned().map(Polynomial::constant).collect())
    }

    /// The constant-coefficient operator whose symbol is `q`.
    pub fn from_symbol(q: &Polynomial) -> Self {
        Self::constant(q.to_monomial().coeffs())
    }

    pub fn identity() -> Self {
        Self::constant(&[Rational::one()])
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Index of the last nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant_coefficients(&self) -> bool {
        self.coeffs.iter().all(|q| q.deg().is_none_or(|d| d == 0))
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|q| !q.is_zero()).count()
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let p = p.to_monomial();
        let mut out = Polynomial::zero();
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            out = &out + &(q * &p.shift(&rat(j as i64)));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiniteDifferenceOperator) -> FiniteDifferenceOperator {
        // Σ_j q_j(x) Σ_l r_l(x-j) p(x-j-l)
        let len = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1);
        let mut out = vec![Polynomial::zero(); len];
        for (j, q) in self.coeffs.iter().enumerate() {
            for (l, r) in other.coeffs.iter().enumerate() {
                let term = q * &r.shift(&rat(j as i64));
                out[j + l] = &out[j + l] + &term;
            }
        }
        FiniteDifferenceOperator::new(out)
    }

    /// Symbol `Q(t) = Σ aⱼ tʲ` of a constant-coefficient operator.
    pub fn symbol(&self) -> Result<Polynomial> {
        if !self.is_constant_coefficients() {
            return Err(Error::NotConstantCoefficients);
        }
        Ok(Polynomial::monomial(
            self.coeffs.iter().map(|q| q.coeff(0)).collect(),
        ))
    }
}

/// `p ↦ Σ cᵢ(x) p(x - sᵢ)` with arbitrary rational shifts, for the operators
/// that do not fit the integer-shift form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCombination {
    terms: Vec<(Polynomial, Rational)>,
}

impl ShiftCombination {
    pub fn new(terms: Vec<(Polynomial, Rational)>) -> Self {
        ShiftCombination {
            terms: terms
                .into_iter()
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, s)| (c.to_monomial(), s))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Polynomial, Rational)] {
        &self.terms
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        self.terms
            .iter()
            .fold(Polynomial::zero(), |acc, (c, s)| &acc + &(c * &p.shift(s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Difference(FiniteDifferenceOperator),
    Shifted(ShiftCombination),
}

impl Operator {
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        match self {
            Operator::Difference(t) => t.apply(p),
            Operator::Shifted(t) => t.apply(p),
        }
    }

    pub fn as_difference(&self) -> Option<&FiniteDifferenceOperator> {
        match self {
            Operator::Difference(t) => Some(t),
            Operator::Shifted(_) => None,
        }
    }
}

impl From<FiniteDifferenceOperator> for Operator {
    fn from(t: FiniteDifferenceOperator) -> Self {
        Operator::Difference(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardOperator {
    /// `Δp = p(x) - p(x-1)`
    Delta,
    /// `∇p = p(x+1) - p(x)`; needs a negative shift.
    NablaConjugate,
    /// `p(x) - λ p(x - α)`
    Riesz { lambda: Rational, alpha: Rational },
    /// `p + λ xΔp`
    WLambda(Rational),
    /// `xΔp`
    EulerXDelta,
}

pub fn make_standard(kind: &StandardOperator) -> Result<Operator> {
    let x = Polynomial::x();
    Ok(match kind {
        StandardOperator::Delta => FiniteDifferenceOperator::constant(&[rat(1), rat(-1)]).into(),
        StandardOperator::NablaConjugate => Operator::Shifted(ShiftCombination::new(vec![
            (Polynomial::one(), rat(-1)),
            (Polynomial::constant(rat(-1)), rat(0)),
        ])),
        StandardOperator::Riesz { lambda, alpha } => {
            if alpha.is_negative() {
                return Err(Error::InvalidArgument("riesz shift must be non-negative".into()));
            }
            if alpha.is_integer() {
                let k: usize = alpha.to_integer().try_into().map_err(|_| {
                    Error::InvalidArgument("riesz shift too large".into())
                })?;
                let mut a = vec![Rational::zero(); k + 1];
                a[0] += Rational::one();
                a[k] -= lambda;
                FiniteDifferenceOperator::constant(&a).into()
            } else {
                Operator::Shifted(ShiftCombination::new(vec![
                    (Polynomial::one(), Rational::zero()),
                    (Polynomial::constant(-lambda.clone()), alpha.clone()),
                ]))
            }
        }
        StandardOperator::WLambda(lambda) => {
            let lx = x.scale(lambda);
            FiniteDifferenceOperator::new(vec![&Polynomial::one() + &lx, -lx]).into()
        }
        StandardOperator::EulerXDelta => FiniteDifferenceOperator::new(vec![x.clone(), -x]).into(),
    })
}

/// Multipliers `αᵢ` of the diagonal operator `(x)ᵢ ↦ αᵢ (x)ᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalSequence {
    /// `α₀, …, α_{n-1}`; undefined beyond.
    Table(Vec<Rational>),
    /// `αᵢ = φ(i)` for every `i`.
    Phi(Polynomial),
}

impl DiagonalSequence {
    pub fn table(values: Vec<Rational>) -> Self {
        DiagonalSequence::Table(values)
    }

    /// `1, ρ, ρ², …, ρ^{len-1}`
    pub fn geometric(rho: &Rational, len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        let mut acc = Rational::one();
        for _ in 0..len {
            v.push(acc.clone());
            acc *= rho;
        }
        DiagonalSequence::Table(v)
    }

    /// `αᵢ = (i)_k`, the multipliers of `(x)_k Δ^k`.
    pub fn falling(k: usize) -> Self {
        DiagonalSequence::Phi(Polynomial::pochhammer(k).to_monomial())
    }

    pub fn value(&self, i: usize) -> Option<Rational> {
        match self {
            DiagonalSequence::Table(v) => v.get(i).cloned(),
            DiagonalSequence::Phi(phi) => Some(phi.evaluate(&rat(i as i64))),
        }
    }

    /// Number of defined entries; `None` when unbounded.
    pub fn defined_len(&self) -> Option<usize> {
        match self {
            DiagonalSequence::Table(v) => Some(v.len()),
            DiagonalSequence::Phi(_) => None,
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Vec<Rational>> {
        (0..n)
            .map(|i| {
                self.value(i).ok_or(Error::SequenceTooShort {
                    needed: n - 1,
                    have: self.defined_len().unwrap_or(usize::MAX),
                })
            })
            .collect()
    }

    /// Apply to `p`: multiply the Pochhammer coefficients, return monomial.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let pp = p.to_pochhammer();
        let Some(n) = pp.deg() else {
            return Ok(Polynomial::zero());
        };
        let alpha = self.prefix(n + 1)?;
        let coeffs = pp.coeffs().iter().zip(alpha).map(|(c, a)| c * a).collect();
        Ok(Polynomial::new(Basis::Pochhammer, coeffs).to_monomial())
    }

    /// The classical diagonal operator `xⁱ ↦ αᵢ xⁱ`.
    pub fn apply_classical(&self, p: &Polynomial) -> Result<Polynomial> {
        let m = p.to_monomial();
        let Some(n) = m.deg() else {
            return Ok(Polynomial::zero());
        };
        let alpha = self.prefix(n + 1)?;
        Ok(Polynomial::monomial(
            m.coeffs().iter().zip(alpha).map(|(c, a)| c * a).collect(),
        ))
    }
}

pub fn diagonal_apply(a: &DiagonalSequence, p: &Polynomial) -> Result<Polynomial> {
    a.apply(p)
}

/// `γᵢ xⁱ ↦ γᵢ (x)ᵢ`
pub fn brenti_map(p: &Polynomial) -> Polynomial {
    let m = p.to_monomial();
    Polynomial::new(Basis::Pochhammer, m.coeffs().to_vec()).to_monomial()
}

/// `(p • q)(x) = Σ_{k=0}^{d} (∇ᵏp)(0) · (∇^{d-k} q)(x)`.
pub fn bullet_product(p: &Polynomial, q: &Polynomial, d: usize) -> Result<Polynomial> {
    for f in [p, q] {
        if let Some(n) = f.deg() {
            if n > d {
                return Err(Error::DegreeBound { degree: n, bound: d });
            }
        }
    }
    let fwd = |f: &Polynomial| -> Vec<Polynomial> {
        let mut out = vec![f.to_monomial()];
        for _ in 0..d {
            let next = out.last().unwrap().difference(crate::poly::Difference::Forward);
            out.push(next);
        }
        out
    };
    let dp = fwd(p);
    let dq = fwd(q);
    let zero = Rational::zero();
    let mut out = Polynomial::zero();
    for k in 0..=d {
        let c = dp[k].evaluate(&zero);
        if !c.is_zero() {
            out = &out + &dq[d - k].scale(&c);
        }
    }
    Ok(out)
}

/// Table `φ(0), …, φ(length-1)` for a hyperbolic `φ` with all roots `≤ 0`.
pub fn sequence_from_poly(phi: &Polynomial, length: usize) -> Result<DiagonalSequence> {
    let a = Analysis::new(phi)?;
    if !a.is_hyperbolic() {
        return Err(Error::RootCondition(format!("{phi} has non-real roots")));
    }
    let mut a = a;
    a.exactify();
    if let Some((iv, _)) = a.roots.iter().find(|(iv, _)| iv.hi.is_positive()) {
        // roots are isolated in disjoint intervals; an interval reaching past
        // 0 may still hold a root ≤ 0, so decide on the refined profile
        if positive_root(phi, iv) {
            return Err(Error::RootCondition(format!(
                "{phi} has a positive root in [{}, {}]",
                iv.lo, iv.hi
            )));
        }
    }
    Ok(DiagonalSequence::Table(
        (0..length).map(|i| phi.evaluate(&rat(i as i64))).collect(),
    ))
}

fn positive_root(phi: &Polynomial, iv: &RootInterval) -> bool {
    if iv.is_exact() || !iv.lo.is_negative() {
        return iv.lo.is_positive() || (!iv.is_exact() && !iv.lo.is_negative());
    }
    // lo < 0 < hi: the root is positive iff φ(0) and φ(hi) have the same
    // nonzero sign... unless φ(0) = 0, in which case the root is 0
    let z = phi.evaluate(&Rational::zero());
    if z.is_zero() {
        return false;
    }
    let h = phi.evaluate(&iv.hi);
    z.is_positive() == h.is_positive()
}

/// `Rᵢ` with `T((x)ᵢ) = (x-k)(x-k-1)…(x-i+1) · Rᵢ(x)` for a constant
/// coefficient operator of order `k` and `i ≥ k`.
pub fn herpou_factor(t: &FiniteDifferenceOperator, i: usize) -> Result<Polynomial> {
    if !t.is_constant_coefficients() {
        return Err(Error::NotConstantCoefficients);
    }
    let k = t.order().ok_or(Error::InvalidArgument("zero operator".into()))?;
    if i < k {
        return Err(Error::InvalidArgument(format!("index {i} below order {k}")));
    }
    let image = t.apply(&Polynomial::pochhammer(i));
    let common = Polynomial::from_roots(
        &(k..i).map(|j| rat(j as i64)).collect::<Vec<_>>(),
        Rational::one(),
    );
    let (r, rem) = image.div_rem(&common);
    assert!(
        rem.is_zero(),
        "T((x)_{i}) is not divisible by (x-{k})…(x-{})",
        i.saturating_sub(1)
    );
    Ok(r)
}

/// `x^k Q((x-1)/x) = Σ aⱼ x^{k-j} (x-1)^j`, the limit of `Rᵢ(ix)/iᵏ`.
pub fn herpou_limit(q: &Polynomial) -> Polynomial {
    let q = q.to_monomial();
    let Some(k) = q.deg() else {
        return Polynomial::zero();
    };
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    let mut out = Polynomial::zero();
    for (j, a) in q.coeffs().iter().enumerate() {
        let term = &Polynomial::x().pow((k - j) as u32) * &xm1.pow(j as u32);
        out = &out + &term.scale(a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, Difference};

    fn remark1_input() -> Polynomial {
        Polynomial::from_roots(&[rat(1), rat(4), rat(7)], rat(1))
    }

    #[test]
    fn apply_examples() {
        let delta = make_standard(&StandardOperator::Delta).unwrap();
        assert_eq!(delta.apply(&Polynomial::x()), Polynomial::one());
        assert_eq!(
            delta.apply(&Polynomial::pochhammer(2)),
            Polynomial::from_ints(&[-2, 2])
        );
    }

    #[test]
    fn standard_operators() {
        let id = make_standard(&StandardOperator::WLambda(rat(0))).unwrap();
        let p = remark1_input();
        assert_eq!(id.apply(&p), p);
        let euler = make_standard(&StandardOperator::EulerXDelta).unwrap();
        for i in 0..=5 {
            let pi = Polynomial::pochhammer(i);
            assert_eq!(euler.apply(&pi), pi.scale(&rat(i as i64)));
        }
        let riesz = make_standard(&StandardOperator::Riesz { lambda: rat(1), alpha: rat(1) }).unwrap();
        assert_eq!(riesz.apply(&Polynomial::pochhammer(2)), Polynomial::from_ints(&[-2, 2]));
        let nabla = make_standard(&StandardOperator::NablaConjugate).unwrap();
        assert_eq!(nabla.apply(&p), p.difference(Difference::Forward));
        let half = make_standard(&StandardOperator::Riesz { lambda: rat(2), alpha: ratio(1, 2) }).unwrap();
        assert!(matches!(half, Operator::Shifted(_)));
        assert_eq!(half.apply(&Polynomial::x()), Polynomial::monomial(vec![rat(1), rat(-1)]));
    }

    #[test]
    fn symbols() {
        let delta = FiniteDifferenceOperator::constant(&[rat(1), rat(-1)]);
        assert_eq!(delta.symbol().unwrap(), Polynomial::from_ints(&[1, -1]));
        let d2 = delta.compose(&delta);
        assert_eq!(d2, FiniteDifferenceOperator::constant(&[rat(1), rat(-2), rat(1)]));
        assert_eq!(d2.symbol().unwrap(), Polynomial::from_ints(&[1, -1]).pow(2));
        let euler = make_standard(&StandardOperator::EulerXDelta).unwrap();
        assert_eq!(
            euler.as_difference().unwrap().symbol(),
            Err(Error::NotConstantCoefficients)
        );
    }

    #[test]
    fn compose_matches_sequential_application() {
        let w = make_standard(&StandardOperator::WLambda(ratio(3, 4))).unwrap();
        let w = w.as_difference().unwrap();
        let t = FiniteDifferenceOperator::constant(&[rat(2), rat(-1), ratio(1, 3)]);
        let p = remark1_input();
        assert_eq!(w.compose(&t).apply(&p), w.apply(&t.apply(&p)));
        assert_eq!(t.compose(w).apply(&p), t.apply(&w.apply(&p)));
    }

    #[test]
    fn diagonal_examples() {
        let p = remark1_input();
        let ones = DiagonalSequence::Phi(Polynomial::one());
        assert_eq!(ones.apply(&p).unwrap(), p);
        let idx = DiagonalSequence::Phi(Polynomial::x());
        let euler = make_standard(&StandardOperator::EulerXDelta).unwrap();
        assert_eq!(idx.apply(&p).unwrap(), euler.apply(&p));
        let seq = DiagonalSequence::Phi(Polynomial::monomial(vec![rat(1), ratio(3, 4)]));
        let w = make_standard(&StandardOperator::WLambda(ratio(3, 4))).unwrap();
        assert_eq!(seq.apply(&p).unwrap(), w.apply(&p));
        let short = DiagonalSequence::table(vec![rat(1), rat(1)]);
        assert_eq!(short.apply(&p), Err(Error::SequenceTooShort { needed: 3, have: 2 }));
    }

    #[test]
    fn brenti_examples() {
        assert_eq!(brenti_map(&Polynomial::from_ints(&[0, 0, 1])), Polynomial::from_roots(&[rat(0), rat(1)], rat(1)));
        assert_eq!(
            brenti_map(&Polynomial::from_ints(&[0, 0, 0, 1])),
            Polynomial::pochhammer(3).to_monomial()
        );
        assert_eq!(
            brenti_map(&Polynomial::from_ints(&[0, -1, 1])),
            Polynomial::from_roots(&[rat(0), rat(2)], rat(1))
        );
    }

    #[test]
    fn bullet_examples() {
        let q = remark1_input();
        assert_eq!(bullet_product(&Polynomial::one(), &q, 0), Err(Error::DegreeBound { degree: 3, bound: 0 }));
        let c = Polynomial::constant(rat(1));
        assert_eq!(bullet_product(&c, &Polynomial::constant(rat(7)), 0).unwrap(), Polynomial::constant(rat(7)));
        let x = Polynomial::x();
        assert_eq!(bullet_product(&x, &x, 1).unwrap(), x);
        let p2 = Polynomial::pochhammer(2);
        assert_eq!(bullet_product(&p2, &p2, 2).unwrap(), p2.scale(&rat(2)));
    }

    #[test]
    fn sequence_from_poly_examples() {
        let s = sequence_from_poly(&Polynomial::from_ints(&[1, 1]), 4).unwrap();
        assert_eq!(s, DiagonalSequence::table(vec![rat(1), rat(2), rat(3), rat(4)]));
        let s = sequence_from_poly(&Polynomial::x(), 3).unwrap();
        assert_eq!(s, DiagonalSequence::table(vec![rat(0), rat(1), rat(2)]));
        let s = sequence_from_poly(&Polynomial::from_ints(&[1, 1]).pow(2), 3).unwrap();
        assert_eq!(s, DiagonalSequence::table(vec![rat(1), rat(4), rat(9)]));
        assert!(matches!(
            sequence_from_poly(&Polynomial::from_ints(&[-1, 1]), 3),
            Err(Error::RootCondition(_))
        ));
        assert!(matches!(
            sequence_from_poly(&Polynomial::from_ints(&[1, 0, 1]), 3),
            Err(Error::RootCondition(_))
        ));
        // irrational roots straddling zero in the coarse isolation
        let phi = Polynomial::from_ints(&[-1, 2, 1]); // roots -1 ± √2
        assert!(sequence_from_poly(&phi, 3).is_err());
        let phi = Polynomial::from_ints(&[1, 3, 1]); // roots (-3 ± √5)/2 < 0
        assert!(sequence_from_poly(&phi, 3).is_ok());
    }

    #[test]
    fn herpou_factor_examples() {
        let delta = FiniteDifferenceOperator::constant(&[rat(1), rat(-1)]);
        // Δ(x)_3 = 3(x-1)(x-2): R_3 = 3, its degree drops below k since Q(1) = 0
        assert_eq!(herpou_factor(&delta, 3).unwrap(), Polynomial::constant(rat(3)));
        let id = FiniteDifferenceOperator::identity();
        assert_eq!(herpou_factor(&id, 4).unwrap().deg(), Some(0));
        // Q = 1 + t: R_i = 2x - i, so R_i(ix)/i = 2x - 1 = x Q((x-1)/x)
        let plus = FiniteDifferenceOperator::constant(&[rat(1), rat(1)]);
        for i in 1..12 {
            let r = herpou_factor(&plus, i).unwrap();
            assert_eq!(r, Polynomial::from_ints(&[-(i as i64), 2]));
        }
        assert_eq!(herpou_limit(&Polynomial::from_ints(&[1, 1])), Polynomial::from_ints(&[-1, 2]));
        assert!(herpou_factor(&plus, 0).is_err());
    }
}
