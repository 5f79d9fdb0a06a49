//! Per-instance checkers for the preservation results.
//!
//! A check either confirms the claim on its inputs, fails with a
//! [`Witness`] that replays through the public operations, or reports that
//! a bounded search was inconclusive or that the inputs were outside the
//! claim's hypotheses. Randomized sufficiency checks are library
//! self-tests: a failure there falsifies the implementation, not the
//! theorem.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::fixtures::{gen_fixture, trial_rng};
use crate::interlace::{class_membership, proper_position, ClassSpec, PositionFailure};
use crate::operators::{
    bullet_product, brenti_map, herpou_factor, make_standard, DiagonalSequence,
    FiniteDifferenceOperator, Operator, StandardOperator,
};
use crate::poly::{rat, Basis, Polynomial, Rational};
use crate::roots::{
    close_root_pair, default_tolerance, is_hyperbolic, mesh_at_least, mesh_numeric, root_profile,
    Mesh, RootInterval,
};

/// A linear map applied to a witness input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transform {
    Identity,
    Operator { op: Operator },
    /// `(x)ᵢ ↦ αᵢ (x)ᵢ`
    Diagonal { sequence: DiagonalSequence },
    /// `xⁱ ↦ αᵢ xⁱ`
    Classical { sequence: DiagonalSequence },
    /// `p - λ p'`
    Derivative {
        #[serde(with = "crate::harness::serial::rational")]
        lambda: Rational,
    },
    /// `xⁱ ↦ (x)ᵢ`
    Brenti,
    /// `q ↦ left • q` on degree at most `d`.
    Bullet { left: Polynomial, d: usize },
}

impl Transform {
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(match self {
            Transform::Identity => p.to_monomial(),
            Transform::Operator { op } => op.apply(p),
            Transform::Diagonal { sequence } => sequence.apply(p)?,
            Transform::Classical { sequence } => sequence.apply_classical(p)?,
            Transform::Derivative { lambda } => p - &p.derivative().scale(lambda),
            Transform::Brenti => brenti_map(p),
            Transform::Bullet { left, d } => bullet_product(left, p, *d)?,
        })
    }
}

/// The exact condition a witness image violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotHyperbolic,
    NegativeRoot,
    /// Hyperbolic with mesh strictly below `bound`; `pair` brackets two
    /// adjacent roots closer than `bound` when one was certified.
    MeshBelow {
        #[serde(with = "crate::harness::serial::rational")]
        bound: Rational,
        pair: Option<(RootInterval, RootInterval)>,
    },
    /// `(-1)^{n-i} aᵢ < 0` for the Pochhammer coefficient `aᵢ` of the image.
    PochhammerSign {
        index: usize,
        #[serde(with = "crate::harness::serial::rational")]
        coefficient: Rational,
    },
    /// `left ≪ right` fails.
    ProperPosition {
        left: Polynomial,
        right: Polynomial,
        failure: Option<PositionFailure>,
    },
}

impl Violation {
    /// Whether `image` exhibits this violation, decided exactly.
    pub fn exhibited_by(&self, image: &Polynomial) -> bool {
        let hyperbolic = |f: &Polynomial| !f.is_zero() && is_hyperbolic(f).unwrap_or(false);
        match self {
            Violation::NotHyperbolic => !image.is_zero() && !hyperbolic(image),
            Violation::NegativeRoot => {
                hyperbolic(image) && !root_profile(image).map(|r| r.all_roots_nonnegative).unwrap_or(true)
            }
            Violation::MeshBelow { bound, .. } => hyperbolic(image) && !mesh_at_least(image, bound),
            Violation::PochhammerSign { index, coefficient } => {
                let pp = image.to_pochhammer();
                let Some(n) = pp.deg() else { return false };
                let c = pp.coeff(*index);
                *index <= n && c == *coefficient && alternating_sign_violated(n, *index, &c)
            }
            Violation::ProperPosition { left, right, .. } => !proper_position(left, right).holds,
        }
    }
}

fn alternating_sign_violated(n: usize, i: usize, c: &Rational) -> bool {
    if (n - i).is_multiple_of(2) {
        c.is_negative()
    } else {
        c.is_positive()
    }
}

/// The first condition of `class` that `image` fails, or `None` when it is a
/// member. The zero polynomial counts as a degenerate pass.
pub fn class_violation(image: &Polynomial, class: &ClassSpec) -> Option<Violation> {
    if image.is_zero() {
        return None;
    }
    let profile = root_profile(image).expect("nonzero");
    if !profile.is_hyperbolic {
        return Some(Violation::NotHyperbolic);
    }
    if class.require_nonneg_roots && !profile.all_roots_nonnegative {
        return Some(Violation::NegativeRoot);
    }
    if let Some(bound) = &class.mesh_bound {
        if !mesh_at_least(image, bound) {
            let pair = close_root_pair(image, bound).ok().flatten();
            return Some(Violation::MeshBelow {
                bound: bound.clone(),
                pair,
            });
        }
    }
    None
}

/// Exact data showing a claim fails on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub claim: String,
    /// Class the input (and a bullet product's left factor) belongs to.
    pub premise: Option<ClassSpec>,
    pub transform: Transform,
    pub input: Polynomial,
    pub image: Polynomial,
    pub violation: Violation,
}

impl Witness {
    fn new(
        claim: &str,
        premise: Option<ClassSpec>,
        transform: Transform,
        input: Polynomial,
        image: Polynomial,
        violation: Violation,
    ) -> Self {
        Witness {
            claim: claim.to_string(),
            premise,
            transform,
            input,
            image,
            violation,
        }
    }

    /// Recompute the image from the input and re-decide every condition.
    pub fn replay(&self) -> Result<bool> {
        if let Some(class) = &self.premise {
            if !class_membership(&self.input, class) {
                return Ok(false);
            }
            if let Transform::Bullet { left, .. } = &self.transform {
                if !class_membership(left, class) {
                    return Ok(false);
                }
            }
        }
        let image = self.transform.apply(&self.input)?;
        Ok(image == self.image && self.violation.exhibited_by(&image))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Randomized confirmation of a proven statement.
    SelfTest,
    /// Search for a certificate of failure.
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails { witness: Box<Witness> },
    Inconclusive { reason: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub role: Role,
    /// Instances examined.
    pub checked: usize,
    pub outcome: Outcome,
}

impl Verdict {
    fn new(claim: &str, role: Role, checked: usize, outcome: Outcome) -> Self {
        Verdict {
            claim: claim.to_string(),
            role,
            checked,
            outcome,
        }
    }

    fn holds_after(claim: &str, role: Role, checked: usize) -> Self {
        Self::new(claim, role, checked, Outcome::Holds)
    }

    fn failed(role: Role, checked: usize, w: Witness) -> Self {
        Self::new(&w.claim.clone(), role, checked, Outcome::Fails { witness: Box::new(w) })
    }

    fn skipped(claim: &str, role: Role, reason: impl Into<String>) -> Self {
        Self::new(claim, role, 0, Outcome::Skipped { reason: reason.into() })
    }

    fn inconclusive(claim: &str, role: Role, checked: usize, reason: impl Into<String>) -> Self {
        Self::new(claim, role, checked, Outcome::Inconclusive { reason: reason.into() })
    }

    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Bounds for randomized and exhaustive searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub trials: usize,
    pub max_degree: usize,
    pub i_max: usize,
    pub seed: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            trials: 500,
            max_degree: 6,
            i_max: 64,
            seed: 0,
        }
    }
}

// Random-stream tags, one per checker.
const STREAM_HERPOU: u64 = 0x4850;
const STREAM_DMS: u64 = 0x444d;
const STREAM_REMARK2: u64 = 0x5232;
const STREAM_LEMMA1: u64 = 0x4c31;
const STREAM_CLASSICAL: u64 = 0x434c;

// Runs `check` on trials `0..trials` in parallel; the first failing trial
// in index order wins.
fn first_failure<F>(trials: usize, check: F) -> Option<Witness>
where
    F: Fn(u64) -> Option<Witness> + Sync + Send,
{
    (0..trials as u64)
        .into_par_iter()
        .map(check)
        .find_first(Option::is_some)
        .flatten()
}

/// Mesh-nondecreasing maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeshMap {
    /// `p(x) - λ p(x - α)` on HP≥α.
    Riesz { lambda: Rational, alpha: Rational },
    /// `p - λ p'` on HP.
    Derivative { lambda: Rational },
}

/// `mesh(T(p)) ≥ mesh(p)`, decided exactly when `p` has rational roots and
/// against a certified lower bound of `mesh(p)` otherwise.
pub fn check_mesh_monotone(t: &MeshMap, p: &Polynomial) -> Result<Verdict> {
    let (claim, transform) = match t {
        MeshMap::Riesz { lambda, alpha } => {
            let claim = "mesh_monotone_riesz";
            if lambda.is_negative() || alpha.is_negative() {
                return Ok(Verdict::skipped(claim, Role::SelfTest, "needs λ ≥ 0 and α ≥ 0"));
            }
            if !class_membership(p, &ClassSpec::hp_mesh(alpha.clone())) {
                return Ok(Verdict::skipped(claim, Role::SelfTest, "input not in HP≥α"));
            }
            let op = make_standard(&StandardOperator::Riesz {
                lambda: lambda.clone(),
                alpha: alpha.clone(),
            })?;
            (claim, Transform::Operator { op })
        }
        MeshMap::Derivative { lambda } => {
            let claim = "mesh_monotone_derivative";
            if !class_membership(p, &ClassSpec::hp()) {
                return Ok(Verdict::skipped(claim, Role::SelfTest, "input not hyperbolic"));
            }
            (claim, Transform::Derivative { lambda: lambda.clone() })
        }
    };
    let image = transform.apply(p)?;
    let report = mesh_numeric(p, &default_tolerance())?;
    let class = match report.exact.unwrap_or(report.lower) {
        Mesh::Infinite => ClassSpec::hp(),
        Mesh::Finite(m) => ClassSpec::hp_mesh(m),
    };
    Ok(match class_violation(&image, &class) {
        None => Verdict::holds_after(claim, Role::SelfTest, 1),
        Some(v) => Verdict::failed(
            Role::SelfTest,
            1,
            Witness::new(claim, Some(class), transform, p.clone(), image, v),
        ),
    })
}

/// `p(x) - λ p(x - α)` keeps HP⁺≥α when `λ ≥ 1`.
pub fn check_riesz_plus(lambda: &Rational, alpha: &Rational, p: &Polynomial) -> Result<Verdict> {
    let claim = "riesz_plus";
    let class = ClassSpec::hp_plus(alpha.clone());
    if *lambda < Rational::one() || alpha.is_negative() {
        return Ok(Verdict::skipped(claim, Role::SelfTest, "needs λ ≥ 1 and α ≥ 0"));
    }
    if !class_membership(p, &class) {
        return Ok(Verdict::skipped(claim, Role::SelfTest, "input not in HP⁺≥α"));
    }
    let op = make_standard(&StandardOperator::Riesz {
        lambda: lambda.clone(),
        alpha: alpha.clone(),
    })?;
    let image = op.apply(p);
    Ok(match class_violation(&image, &class) {
        None => Verdict::holds_after(claim, Role::SelfTest, 1),
        Some(v) => Verdict::failed(
            Role::SelfTest,
            1,
            Witness::new(claim, Some(class), Transform::Operator { op }, p.clone(), image, v),
        ),
    })
}

/// Symbol with real non-negative zeros only.
pub fn symbol_has_nonneg_roots(q: &Polynomial) -> bool {
    class_membership(
        q,
        &ClassSpec {
            mesh_bound: None,
            require_nonneg_roots: true,
        },
    )
}

/// The constant-coefficient operator with symbol `q` preserves HP≥1 exactly
/// when `q` has only real non-negative zeros. With such a symbol, random
/// HP≥1 fixtures are checked; otherwise the Pochhammer polynomials
/// `(x)ᵢ`, `i = k..=i_max`, are scanned for the first image leaving HP≥1.
pub fn herpou_verdict(q: &Polynomial, bounds: &SearchBounds) -> Result<Verdict> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = FiniteDifferenceOperator::from_symbol(q);
    let class = ClassSpec::hp_mesh(rat(1));
    let transform = Transform::Operator {
        op: Operator::Difference(t.clone()),
    };
    if symbol_has_nonneg_roots(q) {
        let found = first_failure(bounds.trials, |i| {
            let mut rng = trial_rng(bounds.seed, STREAM_HERPOU, i);
            let deg = rng.gen_range(0..=bounds.max_degree);
            let p = gen_fixture(&class, deg, &mut rng);
            let image = t.apply(&p);
            class_violation(&image, &class).map(|v| {
                Witness::new("herpou_sufficiency", Some(class.clone()), transform.clone(), p, image, v)
            })
        });
        return Ok(match found {
            None => Verdict::holds_after("herpou_sufficiency", Role::SelfTest, bounds.trials),
            Some(w) => Verdict::failed(Role::SelfTest, bounds.trials, w),
        });
    }
    let claim = "herpou_necessity";
    let k = t.order().expect("nonzero");
    for i in k..=bounds.i_max {
        // T((x)ᵢ) = (x-k)…(x-i+1) Rᵢ(x); only Rᵢ can break the mesh
        let r = herpou_factor(&t, i)?;
        let p = Polynomial::pochhammer(i).to_monomial();
        let image = t.apply(&p);
        debug_assert_eq!(
            image,
            &Polynomial::from_roots(&(k..i).map(|j| rat(j as i64)).collect::<Vec<_>>(), Rational::one()) * &r
        );
        if let Some(v) = class_violation(&image, &class) {
            return Ok(Verdict::failed(
                Role::Certificate,
                i - k + 1,
                Witness::new(claim, Some(class), transform, p, image, v),
            ));
        }
    }
    Ok(Verdict::inconclusive(
        claim,
        Role::Certificate,
        bounds.i_max.saturating_sub(k) + 1,
        format!("no Pochhammer witness up to index {}", bounds.i_max),
    ))
}

/// Pochhammer coefficients of a member of HP⁺≥1 with positive leading
/// coefficient alternate in sign: `(-1)^{n-i} aᵢ ≥ 0`.
pub fn check_altn(p: &Polynomial) -> Verdict {
    let claim = "altn";
    let class = ClassSpec::hp_plus(rat(1));
    if !class_membership(p, &class) || !p.leading_coefficient().is_some_and(|c| c.is_positive()) {
        return Verdict::skipped(claim, Role::SelfTest, "needs p ∈ HP⁺≥1 with positive leading coefficient");
    }
    let pp = p.to_pochhammer();
    let n = pp.deg().expect("nonzero");
    for (i, c) in pp.coeffs().iter().enumerate() {
        if alternating_sign_violated(n, i, c) {
            let v = Violation::PochhammerSign {
                index: i,
                coefficient: c.clone(),
            };
            let w = Witness::new(claim, Some(class), Transform::Identity, p.clone(), p.to_monomial(), v);
            return Verdict::failed(Role::SelfTest, 1, w);
        }
    }
    Verdict::holds_after(claim, Role::SelfTest, 1)
}

/// Lemma (brenti): `xⁱ ↦ (x)ᵢ` sends polynomials with real non-negative
/// zeros into HP⁺≥1.
pub fn check_brenti(p: &Polynomial) -> Verdict {
    let claim = "brenti";
    let premise = ClassSpec {
        mesh_bound: None,
        require_nonneg_roots: true,
    };
    if !class_membership(p, &premise) {
        return Verdict::skipped(claim, Role::SelfTest, "needs real non-negative zeros");
    }
    let image = brenti_map(p);
    match class_violation(&image, &ClassSpec::hp_plus(rat(1))) {
        None => Verdict::holds_after(claim, Role::SelfTest, 1),
        Some(v) => Verdict::failed(
            Role::SelfTest,
            1,
            Witness::new(claim, Some(premise), Transform::Brenti, p.clone(), image, v),
        ),
    }
}

fn table_with(entries: &[(usize, Rational)]) -> DiagonalSequence {
    let len = entries.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
    let mut v = vec![Rational::zero(); len];
    for (i, a) in entries {
        v[*i] = a.clone();
    }
    DiagonalSequence::Table(v)
}

/// `(x)_m (x-m-a)(x-1-m-a)`, a member of HP⁺≥1 for `a ≥ 0`.
pub fn alink_fixture(m: usize, a: &Rational) -> Polynomial {
    let base = rat(m as i64) + a;
    let quad = Polynomial::from_roots(&[base.clone(), base + Rational::one()], Rational::one());
    &Polynomial::pochhammer(m).to_monomial() * &quad
}

/// Choice of `a ≥ 0` making `a(α_{m+1}² - α_m α_{m+2}) + α_{m+2}(α_{m+1} - α_m)`
/// negative; requires `α_m > α_{m+1}` and `α_{m+2} > 0`.
pub fn alink_parameter(am: &Rational, am1: &Rational, am2: &Rational) -> Rational {
    let d = am1 * am1 - am * am2;
    let e = am2 * (am1 - am);
    if !d.is_positive() {
        // a = 0 would make the image A·x(x-1), which is always admissible
        Rational::one()
    } else {
        -e / (d * rat(2))
    }
}

/// A discrete multiplier sequence with `α_{m+2} > 0` has `α_m ≤ α_{m+1}`.
/// When `α_m > α_{m+1}` this returns the certified non-preservation witness
/// built from `(x)_m (x-m-a)(x-1-m-a)`.
pub fn alink_witness(am: &Rational, am1: &Rational, am2: &Rational, m: usize) -> Verdict {
    let claim = "alink";
    if !am2.is_positive() {
        return Verdict::skipped(claim, Role::Certificate, "needs α_{m+2} > 0");
    }
    if am <= am1 {
        return Verdict::holds_after(claim, Role::Certificate, 1);
    }
    let a = alink_parameter(am, am1, am2);
    let p = alink_fixture(m, &a);
    let sequence = table_with(&[(m, am.clone()), (m + 1, am1.clone()), (m + 2, am2.clone())]);
    let class = ClassSpec::hp_plus(rat(1));
    let image = sequence.apply(&p).expect("table covers the support");
    match class_violation(&image, &class) {
        Some(v) => Verdict::failed(
            Role::Certificate,
            1,
            Witness::new(claim, Some(class), Transform::Diagonal { sequence }, p, image, v),
        ),
        None => Verdict::inconclusive(claim, Role::Certificate, 1, "constructed image stayed in HP⁺≥1"),
    }
}

/// `(x)_i (x-i-t)(x-i-t-1)⋯(x-j-t+1)`: in HP⁺≥1, Pochhammer support `i..=j`.
pub fn two_entry_fixture(i: usize, j: usize, t: &Rational) -> Polynomial {
    let roots: Vec<Rational> = (0..j - i).map(|l| rat((i + l) as i64) + t).collect();
    &Polynomial::pochhammer(i).to_monomial() * &Polynomial::from_roots(&roots, Rational::one())
}

// Witness for a sequence whose only nonzero entries in `i..=j` are at `i`
// and `j`, with either opposite signs or `j ≥ i + 2`. Growing `t` makes the
// constant term of the image dominate, which must eventually fail.
fn two_entry_witness(claim: &str, alpha: &[Rational], i: usize, j: usize) -> Option<Witness> {
    let class = ClassSpec::hp_plus(rat(1));
    let sequence = DiagonalSequence::Table(alpha[..=j].to_vec());
    let mut t = Rational::one();
    for _ in 0..24 {
        let p = two_entry_fixture(i, j, &t);
        let image = sequence.apply(&p).expect("prefix covers degree j");
        if let Some(v) = class_violation(&image, &class) {
            let transform = Transform::Diagonal { sequence };
            return Some(Witness::new(claim, Some(class), transform, p, image, v));
        }
        t *= rat(2);
    }
    None
}

/// Corollary (signs): nonzero entries of a discrete multiplier sequence share
/// one sign. Checks the given prefix and certifies any mixed-sign pair.
pub fn check_signs(alpha: &[Rational]) -> Verdict {
    let claim = "signs";
    let nonzero: Vec<usize> = (0..alpha.len()).filter(|&i| !alpha[i].is_zero()).collect();
    for w in nonzero.windows(2) {
        let (i, j) = (w[0], w[1]);
        if alpha[i].is_positive() != alpha[j].is_positive() {
            return match two_entry_witness(claim, alpha, i, j) {
                Some(w) => Verdict::failed(Role::Certificate, 1, w),
                None => Verdict::inconclusive(claim, Role::Certificate, 1, "no witness found for mixed signs"),
            };
        }
    }
    Verdict::holds_after(claim, Role::Certificate, 1)
}

/// Proposition (trivial): a sequence with at most two nonzero entries is a
/// discrete multiplier sequence iff they sit at adjacent indices `m, m+1`
/// with `α_m α_{m+1} ≥ 0`. Returns `None` for non-trivial prefixes.
pub fn classify_trivial(alpha: &[Rational]) -> Option<Verdict> {
    let claim = "trivial";
    let nonzero: Vec<usize> = (0..alpha.len()).filter(|&i| !alpha[i].is_zero()).collect();
    match nonzero.as_slice() {
        [] | [_] => Some(Verdict::holds_after(claim, Role::Certificate, 0)),
        [i, j] if j - i == 1 && !(&alpha[*i] * &alpha[*j]).is_negative() => {
            Some(Verdict::holds_after(claim, Role::Certificate, 0))
        }
        [i, j] => Some(match two_entry_witness(claim, alpha, *i, *j) {
            Some(w) => Verdict::failed(Role::Certificate, 0, w),
            None => Verdict::inconclusive(claim, Role::Certificate, 0, "no witness found"),
        }),
        _ => None,
    }
}

/// Extra per-fixture condition for [`dms_test_with`].
pub type FixtureCheck<'a> = &'a (dyn Fn(&Polynomial) -> Option<Witness> + Sync);

/// Whether `A` preserves HP⁺≥1 on polynomials of degree at most
/// `bounds.max_degree`: sign, triviality and descent pre-checks, then random
/// fixtures.
pub fn dms_test(a: &DiagonalSequence, bounds: &SearchBounds) -> Verdict {
    dms_test_with(a, bounds, None)
}

pub fn dms_test_with(a: &DiagonalSequence, bounds: &SearchBounds, extra: Option<FixtureCheck>) -> Verdict {
    let claim = "dms";
    let n = match a.defined_len() {
        Some(0) => return Verdict::skipped(claim, Role::SelfTest, "empty sequence"),
        Some(len) => bounds.max_degree.min(len - 1),
        None => bounds.max_degree,
    };
    let alpha = a.prefix(n + 1).expect("within the defined range");
    let signs = check_signs(&alpha);
    if !signs.holds() {
        return signs;
    }
    if let Some(v) = classify_trivial(&alpha) {
        return v;
    }
    let descent = (0..alpha.len().saturating_sub(2))
        .filter(|&m| alpha[m] > alpha[m + 1] && alpha[m + 2].is_positive())
        .find_map(|m| alink_witness(&alpha[m], &alpha[m + 1], &alpha[m + 2], m).witness().cloned());
    if let Some(w) = descent {
        return Verdict::failed(Role::SelfTest, 1, w);
    }
    let class = ClassSpec::hp_plus(rat(1));
    let transform = Transform::Diagonal { sequence: a.clone() };
    let found = first_failure(bounds.trials, |i| {
        let mut rng = trial_rng(bounds.seed, STREAM_DMS, i);
        let deg = rng.gen_range(0..=n);
        let p = gen_fixture(&class, deg, &mut rng);
        let image = a.apply(&p).expect("prefix covers degree");
        if let Some(v) = class_violation(&image, &class) {
            return Some(Witness::new(claim, Some(class.clone()), transform.clone(), p, image, v));
        }
        extra.and_then(|f| f(&p))
    });
    match found {
        None => Verdict::holds_after(claim, Role::SelfTest, bounds.trials),
        Some(w) => Verdict::failed(Role::SelfTest, bounds.trials, w),
    }
}

/// The proper positions `W_λ(p) ≪ p` and `W_λ(p) ≪ p(x-1)` behind the
/// preservation of HP⁺≥1 by `W_λ = 1 + λ xΔ`.
pub fn claim2_path(lambda: &Rational, p: &Polynomial) -> Option<Witness> {
    let op = make_standard(&StandardOperator::WLambda(lambda.clone())).expect("valid");
    let image = op.apply(p);
    for right in [p.to_monomial(), p.shift(&Rational::one())] {
        let v = proper_position(&image, &right);
        if !v.holds {
            let violation = Violation::ProperPosition {
                left: image.clone(),
                right,
                failure: v.failure_witness,
            };
            return Some(Witness::new(
                "claim2_path",
                Some(ClassSpec::hp_plus(rat(1))),
                Transform::Operator { op },
                p.clone(),
                image,
                violation,
            ));
        }
    }
    None
}

/// `dms_test` for `{1 + λi}` with the proof-path proper positions checked on
/// every fixture.
pub fn wlambda_test(lambda: &Rational, bounds: &SearchBounds) -> Verdict {
    let seq = DiagonalSequence::Phi(Polynomial::monomial(vec![Rational::one(), lambda.clone()]));
    let path = |p: &Polynomial| claim2_path(lambda, p);
    dms_test_with(&seq, bounds, Some(&path))
}

/// `{ρⁱ}` with `0 < ρ < 1` is not a discrete multiplier sequence. Scans
/// integer-rooted members of HP⁺≥1 by degree, then random fixtures.
pub fn remark2_witness(rho: &Rational, bounds: &SearchBounds) -> Verdict {
    let claim = "remark2";
    if rho.is_one() {
        return Verdict::holds_after(claim, Role::Certificate, 0);
    }
    if !rho.is_positive() || *rho > Rational::one() {
        return Verdict::skipped(claim, Role::Certificate, "needs 0 < ρ < 1");
    }
    let n = bounds.max_degree;
    let seq = DiagonalSequence::geometric(rho, n + 1);
    let class = ClassSpec::hp_plus(rat(1));
    let transform = Transform::Diagonal { sequence: seq.clone() };
    let test = |p: Polynomial| -> Option<Witness> {
        let image = seq.apply(&p).expect("prefix covers degree");
        class_violation(&image, &class)
            .map(|v| Witness::new(claim, Some(class.clone()), transform.clone(), p, image, v))
    };
    let mut checked = 0;
    for deg in 2..=n {
        let top = (deg + 3) as i64;
        for roots in combinations(top + 1, deg) {
            checked += 1;
            let roots: Vec<Rational> = roots.into_iter().map(rat).collect();
            if let Some(w) = test(Polynomial::from_roots(&roots, Rational::one())) {
                return Verdict::failed(Role::Certificate, checked, w);
            }
        }
    }
    let found = first_failure(bounds.trials, |i| {
        let mut rng = trial_rng(bounds.seed, STREAM_REMARK2, i);
        let deg = rng.gen_range(2..=n.max(2));
        test(gen_fixture(&class, deg, &mut rng))
    });
    match found {
        Some(w) => Verdict::failed(Role::Certificate, checked + bounds.trials, w),
        None => Verdict::inconclusive(
            claim,
            Role::Certificate,
            checked + bounds.trials,
            format!("no witness up to degree {n}; raise max_degree"),
        ),
    }
}

// Strictly increasing `k`-subsets of `0..n`, in lexicographic order.
fn combinations(n: i64, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: i64, n: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

// Non-decreasing `k`-multisets of `values`, as index lists.
fn multisets(values: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, values, k, &mut cur, &mut out);
    out
}

/// Lemma 2.1: an operator with two or more nonzero coefficients does not
/// preserve HP. Scans small integer-rooted hyperbolic inputs by degree,
/// then random ones.
pub fn lemma1_violation(t: &FiniteDifferenceOperator, bounds: &SearchBounds) -> Verdict {
    let claim = "lemma1";
    let hp = ClassSpec::hp();
    let transform = Transform::Operator {
        op: Operator::Difference(t.clone()),
    };
    let test = |p: Polynomial| -> Option<Witness> {
        let image = t.apply(&p);
        class_violation(&image, &hp).map(|v| Witness::new(claim, Some(hp.clone()), transform.clone(), p, image, v))
    };
    match t.nonzero_terms() {
        0 => return Verdict::skipped(claim, Role::Certificate, "zero operator"),
        1 => {
            // the allowed case, unless the single coefficient is not hyperbolic
            return match test(Polynomial::one()) {
                Some(w) => Verdict::failed(Role::Certificate, 1, w),
                None => Verdict::skipped(claim, Role::Certificate, "single hyperbolic coefficient preserves HP"),
            };
        }
        _ => {}
    }
    // 0 first, so xⁿ comes first at each degree
    let values = [0i64, 1, -1, 2, -2];
    let mut checked = 0;
    for deg in 0..=bounds.max_degree {
        for idx in multisets(values.len(), deg) {
            checked += 1;
            let roots: Vec<Rational> = idx.iter().map(|&k| rat(values[k])).collect();
            if let Some(w) = test(Polynomial::from_roots(&roots, Rational::one())) {
                return Verdict::failed(Role::Certificate, checked, w);
            }
        }
    }
    let found = first_failure(bounds.trials, |i| {
        let mut rng = trial_rng(bounds.seed, STREAM_LEMMA1, i);
        let deg = rng.gen_range(1..=bounds.max_degree.max(1));
        test(gen_fixture(&hp, deg, &mut rng))
    });
    match found {
        Some(w) => Verdict::failed(Role::Certificate, checked + bounds.trials, w),
        None => Verdict::inconclusive(
            claim,
            Role::Certificate,
            checked + bounds.trials,
            format!("no violation up to degree {}", bounds.max_degree),
        ),
    }
}

/// Classical multiplier test of a sequence on random polynomials with real
/// non-negative zeros: `Σ γᵢ αᵢ xⁱ` must be hyperbolic. Necessary for a
/// discrete multiplier sequence by Proposition (d-c).
pub fn classical_multiplier_probe(a: &DiagonalSequence, bounds: &SearchBounds) -> Verdict {
    let claim = "classical_multiplier";
    let n = match a.defined_len() {
        Some(0) => return Verdict::skipped(claim, Role::SelfTest, "empty sequence"),
        Some(len) => bounds.max_degree.min(len - 1),
        None => bounds.max_degree,
    };
    let premise = ClassSpec {
        mesh_bound: None,
        require_nonneg_roots: true,
    };
    let transform = Transform::Classical { sequence: a.clone() };
    let found = first_failure(bounds.trials, |i| {
        let mut rng = trial_rng(bounds.seed, STREAM_CLASSICAL, i);
        let deg = rng.gen_range(0..=n);
        let p = gen_fixture(&premise, deg, &mut rng);
        let image = a.apply_classical(&p).expect("prefix covers degree");
        class_violation(&image, &ClassSpec::hp())
            .map(|v| Witness::new(claim, Some(premise.clone()), transform.clone(), p, image, v))
    });
    match found {
        None => Verdict::holds_after(claim, Role::SelfTest, bounds.trials),
        Some(w) => Verdict::failed(Role::SelfTest, bounds.trials, w),
    }
}

/// `Σ γᵢ ρⁱ αᵢ (x/ρ)ᵢ` for `p = Σ γᵢ xⁱ`; for a discrete multiplier sequence
/// and `p` with non-negative zeros it lies in HP⁺≥ρ and tends to the
/// classical image as `ρ → 0`. Returns `(ρ, image, in HP⁺≥ρ)` per sample.
pub fn rescaling_trace(
    a: &DiagonalSequence,
    p: &Polynomial,
    rhos: &[Rational],
) -> Result<Vec<(Rational, Polynomial, bool)>> {
    let m = p.to_monomial();
    let Some(n) = m.deg() else {
        return Ok(Vec::new());
    };
    let alpha = a.prefix(n + 1)?;
    rhos.iter()
        .map(|rho| {
            if !rho.is_positive() {
                return Err(Error::InvalidArgument("ρ must be positive".into()));
            }
            let mut pw = Rational::one();
            let mut coeffs = Vec::with_capacity(n + 1);
            for (g, al) in m.coeffs().iter().zip(&alpha) {
                coeffs.push(g * &pw * al);
                pw *= rho;
            }
            let image = Polynomial::new(Basis::Pochhammer, coeffs)
                .to_monomial()
                .scale_argument(&rho.recip());
            let member = image.is_zero() || class_membership(&image, &ClassSpec::hp_plus(rho.clone()));
            Ok((rho.clone(), image, member))
        })
        .collect()
}
