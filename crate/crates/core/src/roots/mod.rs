//! Real roots: squarefree decomposition, Sturm counting, isolation, and the
//! hyperbolicity, sign and mesh verdicts built on them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

mod intpoly;
mod sturm;

pub(crate) use intpoly::IntPoly;
pub use sturm::{to_f64, Bound, RootInterval};
pub(crate) use sturm::{beyond_roots, exact_rational, refine, SturmChain};

/// Default width for reported root and mesh brackets.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), 1_000_000_000.into())
}

/// `p = unit · Π fₖ^k` with monic, squarefree, pairwise coprime `fₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    /// `(fₖ, k)`, non-constant factors only, increasing `k`.
    pub factors: Vec<(Polynomial, usize)>,
}

impl SquarefreeDecomposition {
    /// `p / gcd(p, p')`, keeping the leading coefficient of `p`.
    pub fn squarefree_part(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, _)| &acc * f)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, k)| *k == 1)
    }
}

/// Yun's squarefree decomposition over ℚ.
pub fn squarefree(p: &Polynomial) -> Result<SquarefreeDecomposition> {
    let p = p.to_monomial();
    let unit = p.leading_coefficient().ok_or(Error::ZeroPolynomial)?.clone();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.deg() == Some(0) {
        return Ok(SquarefreeDecomposition { unit, factors });
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while b.deg().is_some_and(|n| n > 0) {
        let a = b.gcd(&d);
        if a.deg().is_some_and(|n| n > 0) {
            factors.push((a.clone(), k));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Distinct real roots of a squarefree `p` in `(lo, hi]`.
pub fn count_real_roots(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ip = IntPoly::from_poly(p);
    debug_assert!(
        squarefree(p).map(|d| d.is_squarefree()).unwrap_or(false),
        "count_real_roots needs a squarefree polynomial"
    );
    Ok(SturmChain::new(&ip).count(lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootProfile {
    pub degree: usize,
    pub is_hyperbolic: bool,
    /// No real root is negative. Together with `is_hyperbolic` this is HP⁺.
    pub all_roots_nonnegative: bool,
    pub distinct_real_roots: usize,
    pub has_multiple_root: bool,
    /// Isolating interval of every distinct real root with its multiplicity,
    /// increasing.
    pub roots: Vec<(RootInterval, usize)>,
}

impl RootProfile {
    pub fn real_root_count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Real roots with multiplicity, as `(interval index, …)` expansion.
    pub fn expanded(&self) -> Vec<usize> {
        self.roots
            .iter()
            .enumerate()
            .flat_map(|(i, (_, m))| std::iter::repeat_n(i, *m))
            .collect()
    }
}

/// Everything the root verdicts share: the squarefree part's Sturm chain and
/// the isolated roots with multiplicities.
pub(crate) struct Analysis {
    pub degree: usize,
    pub chain: SturmChain,
    pub roots: Vec<(RootInterval, usize)>,
}

impl Analysis {
    pub fn new(p: &Polynomial) -> Result<Analysis> {
        let dec = squarefree(p)?;
        let degree = p.deg().ok_or(Error::ZeroPolynomial)?;
        let s = IntPoly::from_poly(&dec.squarefree_part());
        let chain = SturmChain::new(&s);
        let factors: Vec<(IntPoly, usize)> = dec
            .factors
            .iter()
            .map(|(f, k)| (IntPoly::from_poly(f), *k))
            .collect();
        let roots = chain
            .isolate()
            .into_iter()
            .map(|iv| {
                let k = multiplicity_in(&factors, &iv);
                (iv, k)
            })
            .collect();
        Ok(Analysis {
            degree,
            chain,
            roots,
        })
    }

    pub fn squarefree(&self) -> &IntPoly {
        self.chain.poly()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.roots.iter().map(|(_, m)| m).sum::<usize>() == self.degree
    }

    pub fn all_roots_nonnegative(&self) -> bool {
        let s = self.squarefree();
        let negative = self.chain.count(&Bound::NegInfinity, &Bound::Finite(Rational::zero()));
        let at_zero = usize::from(s.sign_at(&Rational::zero()) == Ordering::Equal);
        negative == at_zero
    }

    pub fn profile(&self) -> RootProfile {
        RootProfile {
            degree: self.degree,
            is_hyperbolic: self.is_hyperbolic(),
            all_roots_nonnegative: self.all_roots_nonnegative(),
            distinct_real_roots: self.roots.len(),
            has_multiple_root: self.roots.iter().any(|(_, m)| *m > 1),
            roots: self.roots.clone(),
        }
    }

    /// Replace every rational root by its exact value, leaving the rest.
    pub fn exactify(&mut self) -> bool {
        let s = self.squarefree().clone();
        let mut all = true;
        for (iv, _) in &mut self.roots {
            match exact_rational(&s, iv) {
                Some(r) => *iv = RootInterval::exact(r),
                None => all = false,
            }
        }
        all
    }

    pub fn refine_all(&mut self, tol: &Rational) {
        let s = self.squarefree().clone();
        for (iv, _) in &mut self.roots {
            *iv = refine(&s, iv, tol);
        }
    }
}

fn multiplicity_in(factors: &[(IntPoly, usize)], iv: &RootInterval) -> usize {
    for (f, k) in factors {
        let hit = if iv.is_exact() {
            f.sign_at(&iv.lo) == Ordering::Equal
        } else {
            f.sign_at(&iv.lo) != f.sign_at(&iv.hi)
        };
        if hit {
            return *k;
        }
    }
    unreachable!("isolated root belongs to no squarefree factor")
}

/// Hyperbolicity and sign verdicts plus isolating intervals.
pub fn root_profile(p: &Polynomial) -> Result<RootProfile> {
    Ok(Analysis::new(p)?.profile())
}

pub fn is_hyperbolic(p: &Polynomial) -> Result<bool> {
    Ok(Analysis::new(p)?.is_hyperbolic())
}

/// Root profile with every interval refined below `tol`; rational roots are
/// reported exactly as zero-width intervals.
pub fn isolate_and_refine(p: &Polynomial, tol: &Rational) -> Result<RootProfile> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut a = Analysis::new(p)?;
    a.exactify();
    a.refine_all(tol);
    Ok(a.profile())
}

/// A mesh value; polynomials of degree at most one have infinite mesh.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mesh {
    Finite(#[serde(with = "crate::harness::serial::rational")] Rational),
    Infinite,
}

impl Mesh {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Mesh::Finite(r) => Some(r),
            Mesh::Infinite => None,
        }
    }
}

impl fmt::Display for Mesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mesh::Finite(r) => write!(f, "{r}"),
            Mesh::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshReport {
    pub lower: Mesh,
    pub upper: Mesh,
    /// Present when every root is rational (or the mesh is 0 or +∞ by convention).
    pub exact: Option<Mesh>,
}

/// Bracket the mesh of a hyperbolic polynomial to within `tol`.
pub fn mesh_numeric(p: &Polynomial, tol: &Rational) -> Result<MeshReport> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut a = Analysis::new(p)?;
    if !a.is_hyperbolic() {
        return Err(Error::NonHyperbolicInput);
    }
    if a.degree <= 1 {
        return Ok(MeshReport {
            lower: Mesh::Infinite,
            upper: Mesh::Infinite,
            exact: Some(Mesh::Infinite),
        });
    }
    if a.roots.iter().any(|(_, m)| *m > 1) {
        let zero = Mesh::Finite(Rational::zero());
        return Ok(MeshReport {
            lower: zero.clone(),
            upper: zero.clone(),
            exact: Some(zero),
        });
    }
    let all_rational = a.exactify();
    let half = tol / Rational::from_integer(2.into());
    a.refine_all(&half);
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for w in a.roots.windows(2) {
        let (l, r) = (&w[0].0, &w[1].0);
        let gl = &r.lo - &l.hi;
        let gu = &r.hi - &l.lo;
        if lower.as_ref().is_none_or(|m| gl < *m) {
            lower = Some(gl);
        }
        if upper.as_ref().is_none_or(|m| gu < *m) {
            upper = Some(gu);
        }
    }
    let lower = lower.expect("at least two roots");
    let upper = upper.expect("at least two roots");
    let exact = all_rational.then(|| Mesh::Finite(lower.clone()));
    Ok(MeshReport {
        lower: Mesh::Finite(lower),
        upper: Mesh::Finite(upper),
        exact,
    })
}

/// Exact decision `p ∈ HP≥α`: `p` hyperbolic and `p(x) ≪ p(x-α)`.
///
/// The boundary is closed, so a mesh of exactly `α` passes. Nonzero
/// constants and linear polynomials pass every bound. The zero polynomial
/// fails.
pub fn mesh_at_least(p: &Polynomial, alpha: &Rational) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut a = Analysis::new(p).expect("nonzero");
    if !a.is_hyperbolic() {
        return false;
    }
    if !alpha.is_positive() {
        return true;
    }
    if a.roots.iter().any(|(_, m)| *m > 1) {
        return false;
    }
    if let Some(decided) = separate_gaps(&mut a, alpha) {
        return decided;
    }
    crate::interlace::proper_position(p, &p.shift(alpha)).holds
}

// Refines the isolating intervals until every gap is certified on one side of
// `alpha`; `None` when some gap stays ambiguous.
fn separate_gaps(a: &mut Analysis, alpha: &Rational) -> Option<bool> {
    if a.roots.len() < 2 {
        return Some(true);
    }
    a.exactify();
    let mut tol = alpha / Rational::from_integer(8.into());
    for _ in 0..6 {
        a.refine_all(&tol);
        let mut ambiguous = false;
        for w in a.roots.windows(2) {
            if &(&w[1].0.hi - &w[0].0.lo) < alpha {
                return Some(false);
            }
            if &(&w[1].0.lo - &w[0].0.hi) < alpha {
                ambiguous = true;
            }
        }
        if !ambiguous {
            return Some(true);
        }
        tol /= Rational::from_integer(64.into());
    }
    None
}

/// For a hyperbolic `p` known to have mesh `< bound`, find an adjacent pair
/// of roots certified to be closer than `bound` (a repeated root is reported
/// as the same interval twice).
pub fn close_root_pair(p: &Polynomial, bound: &Rational) -> Result<Option<(RootInterval, RootInterval)>> {
    let mut a = Analysis::new(p)?;
    if !a.is_hyperbolic() {
        return Ok(None);
    }
    if let Some((iv, _)) = a.roots.iter().find(|(_, m)| *m > 1) {
        return Ok(Some((iv.clone(), iv.clone())));
    }
    if a.roots.len() < 2 {
        return Ok(None);
    }
    a.exactify();
    let mut tol = bound.abs() / Rational::from_integer(4.into());
    if tol.is_zero() {
        return Ok(None);
    }
    for _ in 0..200 {
        a.refine_all(&tol);
        for w in a.roots.windows(2) {
            if &(&w[1].0.hi - &w[0].0.lo) < bound {
                return Ok(Some((w[0].0.clone(), w[1].0.clone())));
            }
        }
        tol /= Rational::from_integer(16.into());
    }
    Ok(None)
}
