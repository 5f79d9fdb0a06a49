//! Interlacing, proper position `p ≪ q`, and class membership for HP,
//! HP≥α and HP⁺≥α.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};
use crate::roots::{
    beyond_roots, mesh_at_least, squarefree, Analysis, Bound, IntPoly, RootInterval, SturmChain,
};

/// `p q' - p' q`
pub fn wronskian(p: &Polynomial, q: &Polynomial) -> Polynomial {
    &(p * &q.derivative()) - &(&p.derivative() * q)
}

/// Whether `w(x) ≥ 0` for every real `x`.
pub fn nonneg_on_reals(w: &Polynomial) -> bool {
    negative_point(w).is_none()
}

/// A rational point where `w` is negative, if one exists.
///
/// `w ≥ 0` on ℝ exactly when `w ≡ 0` or its leading coefficient is positive
/// and every real root has even multiplicity.
pub fn negative_point(w: &Polynomial) -> Option<Rational> {
    if w.is_zero() {
        return None;
    }
    let dec = squarefree(w).expect("nonzero");
    let sf = IntPoly::from_poly(&dec.squarefree_part());
    if dec.unit.is_negative() {
        // sign of w beyond every root is the sign of its leading coefficient
        return Some(beyond_roots(&sf));
    }
    let odd: Vec<IntPoly> = dec
        .factors
        .iter()
        .filter(|(_, k)| k % 2 == 1)
        .map(|(f, _)| IntPoly::from_poly(f))
        .collect();
    if odd.is_empty() {
        return None;
    }
    let chain = SturmChain::new(&sf);
    let wi = IntPoly::from_poly(w);
    for iv in chain.isolate() {
        let owner = odd.iter().any(|f| {
            if iv.is_exact() {
                f.sign_at(&iv.lo) == Ordering::Equal
            } else {
                f.sign_at(&iv.lo) != f.sign_at(&iv.hi)
            }
        });
        if !owner {
            continue;
        }
        let (lo, hi) = if iv.is_exact() {
            bracket_exact(&chain, &iv.lo)
        } else {
            (iv.lo.clone(), iv.hi.clone())
        };
        // w changes sign across a root of odd multiplicity
        return Some(if wi.sign_at(&lo) == Ordering::Less { lo } else { hi });
    }
    None
}

// Non-root points around the exact root `r` with no other root between them.
fn bracket_exact(chain: &SturmChain, r: &Rational) -> (Rational, Rational) {
    let p = chain.poly();
    let mut eps = Rational::from_integer(1.into());
    loop {
        let lo = r - &eps;
        let hi = r + &eps;
        if p.sign_at(&lo) != Ordering::Equal
            && p.sign_at(&hi) != Ordering::Equal
            && chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())) == 1
        {
            return (lo, hi);
        }
        eps /= Rational::from_integer(2.into());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operand {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PositionFailure {
    NotHyperbolic {
        operand: Operand,
    },
    DegreeGap {
        left: usize,
        right: usize,
    },
    /// The `slot`-th comparison of the alternating chain `γ₁ ≤ δ₁ ≤ γ₂ ≤ …`
    /// fails: `before` should not exceed `after`.
    Interlacing {
        slot: usize,
        before: RootInterval,
        after: RootInterval,
    },
    NegativeWronskian {
        #[serde(with = "crate::harness::serial::rational")]
        at: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperPositionVerdict {
    pub holds: bool,
    pub interlaces: bool,
    pub wronskian_nonneg: bool,
    pub failure_witness: Option<PositionFailure>,
}

impl ProperPositionVerdict {
    fn by_convention() -> Self {
        ProperPositionVerdict {
            holds: true,
            interlaces: true,
            wronskian_nonneg: true,
            failure_witness: None,
        }
    }

    fn failed(interlaces: bool, wronskian_nonneg: bool, witness: PositionFailure) -> Self {
        ProperPositionVerdict {
            holds: false,
            interlaces,
            wronskian_nonneg,
            failure_witness: Some(witness),
        }
    }
}

/// Decide `p ≪ q`: both hyperbolic, zeros interlacing, and
/// `p q' - p' q ≥ 0` on ℝ. The zero polynomial is in proper position with
/// every hyperbolic polynomial, on either side.
pub fn proper_position(p: &Polynomial, q: &Polynomial) -> ProperPositionVerdict {
    let hyperbolic = |f: &Polynomial| f.is_zero() || Analysis::new(f).expect("nonzero").is_hyperbolic();
    if !hyperbolic(p) {
        return ProperPositionVerdict::failed(false, false, PositionFailure::NotHyperbolic { operand: Operand::Left });
    }
    if !hyperbolic(q) {
        return ProperPositionVerdict::failed(false, false, PositionFailure::NotHyperbolic { operand: Operand::Right });
    }
    if p.is_zero() || q.is_zero() {
        return ProperPositionVerdict::by_convention();
    }

    let w = wronskian(p, q);
    let negative = negative_point(&w);
    let wronskian_nonneg = negative.is_none();

    let (n, m) = (p.deg().unwrap(), q.deg().unwrap());
    if n.abs_diff(m) > 1 {
        return ProperPositionVerdict::failed(
            false,
            wronskian_nonneg,
            PositionFailure::DegreeGap { left: n, right: m },
        );
    }

    let interlacing = interlacing_failure(p, q);
    let interlaces = interlacing.is_none();
    match (interlacing, negative) {
        (None, None) => ProperPositionVerdict {
            holds: true,
            interlaces: true,
            wronskian_nonneg: true,
            failure_witness: None,
        },
        (Some(f), _) => ProperPositionVerdict::failed(interlaces, wronskian_nonneg, f),
        (None, Some(at)) => ProperPositionVerdict::failed(
            interlaces,
            wronskian_nonneg,
            PositionFailure::NegativeWronskian { at },
        ),
    }
}

// Roots of both hyperbolic operands on one common isolation, then the weak
// alternation test. Returns the first failing slot, if any.
fn interlacing_failure(p: &Polynomial, q: &Polynomial) -> Option<PositionFailure> {
    let dp = squarefree(p).expect("nonzero");
    let dq = squarefree(q).expect("nonzero");
    let sp = dp.squarefree_part();
    let sq = dq.squarefree_part();
    let g = sp.gcd(&sq);
    let s = (&sp * &sq).div_rem(&g).0;
    let chain = SturmChain::new(&IntPoly::from_poly(&s));
    let roots = chain.isolate();

    let mult = |factors: &[(Polynomial, usize)], iv: &RootInterval| -> usize {
        for (f, k) in factors {
            let f = IntPoly::from_poly(f);
            let hit = if iv.is_exact() {
                f.sign_at(&iv.lo) == Ordering::Equal
            } else {
                f.sign_at(&iv.lo) != f.sign_at(&iv.hi)
            };
            if hit {
                return *k;
            }
        }
        0
    };
    let mut gamma = Vec::new();
    let mut delta = Vec::new();
    for (i, iv) in roots.iter().enumerate() {
        gamma.extend(std::iter::repeat_n(i, mult(&dp.factors, iv)));
        delta.extend(std::iter::repeat_n(i, mult(&dq.factors, iv)));
    }

    let first = alternation_failure(&gamma, &delta);
    let second = alternation_failure(&delta, &gamma);
    let slot = match (first, second) {
        (None, _) | (_, None) => return None,
        (Some(a), Some(b)) => {
            // report the ordering the degrees allow; prefer p first
            if gamma.len() >= delta.len() {
                a
            } else {
                b
            }
        }
    };
    let (lead, follow) = if gamma.len() >= delta.len() {
        (&gamma, &delta)
    } else {
        (&delta, &gamma)
    };
    let (before, after) = chain_pair(lead, follow, slot);
    Some(PositionFailure::Interlacing {
        slot,
        before: roots[before].clone(),
        after: roots[after].clone(),
    })
}

// Merged chain a₁ ≤ b₁ ≤ a₂ ≤ b₂ ≤ … ; element `k` of the chain.
fn chain_elem(a: &[usize], b: &[usize], k: usize) -> Option<usize> {
    if k.is_multiple_of(2) {
        a.get(k / 2).copied()
    } else {
        b.get(k / 2).copied()
    }
}

fn chain_pair(a: &[usize], b: &[usize], slot: usize) -> (usize, usize) {
    (
        chain_elem(a, b, slot).unwrap(),
        chain_elem(a, b, slot + 1).unwrap(),
    )
}

fn alternation_failure(a: &[usize], b: &[usize]) -> Option<usize> {
    if a.len() < b.len() || a.len() > b.len() + 1 {
        return Some(0);
    }
    let total = a.len() + b.len();
    (0..total.saturating_sub(1))
        .find(|&k| chain_elem(a, b, k).unwrap() > chain_elem(a, b, k + 1).unwrap())
}

/// HP (no bound), HP≥α, or HP⁺≥α.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    #[serde(with = "crate::harness::serial::opt_rational", default)]
    pub mesh_bound: Option<Rational>,
    pub require_nonneg_roots: bool,
}

impl ClassSpec {
    pub fn hp() -> Self {
        ClassSpec {
            mesh_bound: None,
            require_nonneg_roots: false,
        }
    }

    pub fn hp_mesh(alpha: Rational) -> Self {
        ClassSpec {
            mesh_bound: Some(alpha),
            require_nonneg_roots: false,
        }
    }

    pub fn hp_plus(alpha: Rational) -> Self {
        ClassSpec {
            mesh_bound: Some(alpha),
            require_nonneg_roots: true,
        }
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let plus = if self.require_nonneg_roots { "+" } else { "" };
        match &self.mesh_bound {
            Some(a) => write!(f, "HP{plus}>={a}"),
            None => write!(f, "HP{plus}"),
        }
    }
}

/// Membership of `p` in the class. The zero polynomial is never a member.
pub fn class_membership(p: &Polynomial, spec: &ClassSpec) -> bool {
    if p.is_zero() {
        return false;
    }
    let a = Analysis::new(p).expect("nonzero");
    if !a.is_hyperbolic() {
        return false;
    }
    if spec.require_nonneg_roots && !a.all_roots_nonnegative() {
        return false;
    }
    match &spec.mesh_bound {
        Some(alpha) if alpha.is_positive() && a.degree >= 2 => mesh_at_least(p, alpha),
        _ => true,
    }
}

/// `A x(x-1) - 2B x + C`
pub fn quadratic_polynomial(a: &Rational, b: &Rational, c: &Rational) -> Polynomial {
    let two_b = b * Rational::from_integer(2.into());
    Polynomial::monomial(vec![c.clone(), -(a + two_b), a.clone()])
}

/// Closed-form test of `A x(x-1) - 2B x + C ∈ HP⁺≥1` for `A > 0`, `B, C ≥ 0`:
/// `AC ≤ B² + AB`.
pub fn quadratic_hp1plus(a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
    if !a.is_positive() {
        return Err(Error::InvalidArgument("A must be positive".into()));
    }
    if b.is_negative() || c.is_negative() {
        return Err(Error::InvalidArgument("B and C must be non-negative".into()));
    }
    Ok(a * c <= b * b + a * b)
}
