//! Seeded search campaigns.
//!
//! A trial is a pure function of `(master_seed, trial_index)`. Trials run in
//! parallel and are merged in index order, so a configuration always yields
//! the same records byte for byte.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixtures::{derive_seed, rand_irreducible_quadratic, rand_rational, rand_unit, trial_rng};
use crate::error::Result;
use crate::interlace::{class_membership, ClassSpec};
use crate::operators::{DiagonalSequence, FiniteDifferenceOperator};
use crate::poly::{rat, ratio, Polynomial, Rational};
use crate::verify::{
    alink_witness, class_violation, dms_test, lemma1_violation, remark2_witness, Outcome,
    SearchBounds, Transform, Verdict, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    Nice,
    FiniteDegree,
    Bullet,
    Remark2,
    Lemma1,
    TheoremSuite,
}

impl SearchKind {
    fn stream(self) -> u64 {
        match self {
            SearchKind::Nice => 0x6e69,
            SearchKind::FiniteDegree => 0x6664,
            SearchKind::Bullet => 0x6275,
            SearchKind::Remark2 => 0x7232,
            SearchKind::Lemma1 => 0x6c31,
            SearchKind::TheoremSuite => 0x7473,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub kind: SearchKind,
    pub master_seed: u64,
    pub trials: usize,
    pub max_degree: usize,
    /// Fixture roots start in `[-root_range, root_range]`.
    pub root_range: Rational,
    pub i_max: usize,
    /// Display only.
    pub tolerance: Rational,
    /// Fixtures drawn per trial where a trial tests a map on many inputs.
    pub fixtures_per_trial: usize,
    /// Record wall time per trial; makes output nondeterministic.
    pub timing: bool,
}

impl SearchConfig {
    pub fn new(kind: SearchKind, master_seed: u64) -> Self {
        SearchConfig {
            kind,
            master_seed,
            trials: 500,
            max_degree: 6,
            root_range: rat(5),
            i_max: 64,
            tolerance: crate::roots::default_tolerance(),
            fixtures_per_trial: 10,
            timing: false,
        }
    }
}

/// Inputs of one trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrialInputs {
    FiniteDegree {
        symbol: Polynomial,
        m: usize,
    },
    Bullet {
        d: usize,
        p: Polynomial,
        q: Polynomial,
    },
    Nice {
        campaign: String,
        family: String,
        sequence: DiagonalSequence,
    },
    Remark2 {
        #[serde(with = "super::serial::rational")]
        rho: Rational,
    },
    Lemma1 {
        operator: FiniteDifferenceOperator,
    },
    Criterion {
        id: u8,
        name: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    /// Nothing contradicts the statement under test.
    Consistent,
    /// A witness supporting a proven statement was produced.
    Witness,
    /// A counterexample to the statement under test was certified.
    Certificate,
    Inconclusive,
    Skipped,
    /// A proven statement failed: an implementation defect.
    Failed,
}

/// A certified violation of a conjecture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleCertificate {
    pub conjecture: String,
    pub master_seed: u64,
    pub trial_index: u64,
    pub inputs: TrialInputs,
    pub witness: Witness,
    pub note: Option<String>,
}

impl CounterexampleCertificate {
    pub fn replay(&self) -> Result<bool> {
        self.witness.replay()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub seed: u64,
    pub inputs: TrialInputs,
    pub status: TrialStatus,
    /// Inputs examined inside the trial.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CounterexampleCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_us: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub consistent: usize,
    pub witnesses: usize,
    pub certificates: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl SearchReport {
    pub fn certificates(&self) -> impl Iterator<Item = &CounterexampleCertificate> {
        self.records.iter().filter_map(|r| r.certificate.as_ref())
    }

    /// One JSON object per line, in trial order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&super::serial::to_json(r));
            out.push('\n');
        }
        out
    }
}

struct Draft {
    inputs: TrialInputs,
    status: TrialStatus,
    checked: usize,
    note: Option<String>,
    witness: Option<Witness>,
    certificate: Option<(String, Witness)>,
}

impl Draft {
    fn new(inputs: TrialInputs, status: TrialStatus, checked: usize) -> Self {
        Draft {
            inputs,
            status,
            checked,
            note: None,
            witness: None,
            certificate: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn run_search(cfg: &SearchConfig) -> SearchReport {
    let records: Vec<TrialRecord> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(cfg, i))
        .collect();
    let mut summary = Summary {
        trials: records.len(),
        ..Summary::default()
    };
    for r in &records {
        match r.status {
            TrialStatus::Consistent => summary.consistent += 1,
            TrialStatus::Witness => summary.witnesses += 1,
            TrialStatus::Certificate => summary.certificates += 1,
            TrialStatus::Inconclusive => summary.inconclusive += 1,
            TrialStatus::Skipped => summary.skipped += 1,
            TrialStatus::Failed => summary.failed += 1,
        }
    }
    SearchReport {
        kind: cfg.kind,
        records,
        summary,
    }
}

/// Rerun one trial from the configuration alone.
pub fn run_trial(cfg: &SearchConfig, index: u64) -> TrialRecord {
    let start = cfg.timing.then(Instant::now);
    let seed = derive_seed(cfg.master_seed, cfg.kind.stream(), index);
    let mut rng = trial_rng(cfg.master_seed, cfg.kind.stream(), index);
    let draft = match cfg.kind {
        SearchKind::FiniteDegree => finite_degree_trial(cfg, &mut rng),
        SearchKind::Bullet => bullet_trial(cfg, &mut rng),
        SearchKind::Nice => nice_trial(cfg, index, seed, &mut rng),
        SearchKind::Remark2 => remark2_trial(cfg, seed, &mut rng),
        SearchKind::Lemma1 => lemma1_trial(cfg, seed, &mut rng),
        SearchKind::TheoremSuite => suite_trial(cfg, index),
    };
    let certificate = draft.certificate.map(|(conjecture, witness)| CounterexampleCertificate {
        conjecture,
        master_seed: cfg.master_seed,
        trial_index: index,
        inputs: draft.inputs.clone(),
        witness,
        note: draft.note.clone(),
    });
    TrialRecord {
        trial_index: index,
        seed,
        inputs: draft.inputs,
        status: draft.status,
        checked: draft.checked,
        note: draft.note,
        witness: draft.witness,
        certificate,
        wall_time_us: start.map(|s| s.elapsed().as_micros() as u64),
    }
}

fn fixture_params(cfg: &SearchConfig) -> super::fixtures::FixtureParams {
    super::fixtures::FixtureParams {
        root_range: cfg.root_range.clone(),
        ..Default::default()
    }
}

fn fixture(cfg: &SearchConfig, class: &ClassSpec, degree: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    super::fixtures::gen_fixture_with(class, degree, &fixture_params(cfg), rng)
}

// A symbol of degree 1..=3 whose zeros are real of mixed sign, real
// non-negative, or include a non-real pair.
fn random_symbol(rng: &mut ChaCha8Rng) -> Polynomial {
    let k = rng.gen_range(1..=3usize);
    let mode = rng.gen_range(0..3u8);
    let (lo, hi) = match mode {
        0 => (rat(0), rat(3)),
        _ => (rat(-2), rat(3)),
    };
    let real = if mode == 2 && k >= 2 { k - 2 } else { k };
    let roots: Vec<Rational> = (0..real).map(|_| rand_rational(rng, &lo, &hi, 4)).collect();
    let mut q = Polynomial::from_roots(&roots, rand_unit(rng));
    if real < k {
        q = &q * &rand_irreducible_quadratic(rng);
    }
    q
}

fn finite_degree_trial(cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Draft {
    let m = rng.gen_range(1..=cfg.max_degree.max(1));
    let symbol = random_symbol(rng);
    let t = FiniteDifferenceOperator::from_symbol(&symbol);
    let inputs = TrialInputs::FiniteDegree { symbol, m };
    let class = ClassSpec::hp_mesh(rat(1));
    let top = t.apply(&Polynomial::pochhammer(m));
    if top.is_zero() {
        return Draft::new(inputs, TrialStatus::Skipped, 0).note("T((x)_m) vanishes");
    }
    if !class_membership(&top, &class) {
        // (x)_m itself is an input of degree m that T does not preserve
        return Draft::new(inputs, TrialStatus::Consistent, 1).note("T((x)_m) not in HP>=1; T does not preserve");
    }
    let transform = Transform::Operator { op: t.clone().into() };
    for n in 0..cfg.fixtures_per_trial {
        let deg = rng.gen_range(0..=m);
        let p = fixture(cfg, &class, deg, rng);
        let image = t.apply(&p);
        if let Some(v) = class_violation(&image, &class) {
            let w = Witness {
                claim: "finitedegree".into(),
                premise: Some(class),
                transform,
                input: p,
                image,
                violation: v,
            };
            let mut d = Draft::new(inputs, TrialStatus::Certificate, n + 1)
                .note("T((x)_m) in HP>=1 but an input of degree <= m leaves HP>=1");
            d.certificate = Some(("finitedegree".into(), w));
            return d;
        }
    }
    Draft::new(inputs, TrialStatus::Consistent, cfg.fixtures_per_trial)
}

fn bullet_trial(cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Draft {
    let d = rng.gen_range(1..=cfg.max_degree.max(1));
    let class = ClassSpec::hp_mesh(rat(1));
    let dp = rng.gen_range(0..=d);
    let dq = rng.gen_range(0..=d);
    let p = fixture(cfg, &class, dp, rng);
    let q = fixture(cfg, &class, dq, rng);
    let transform = Transform::Bullet { left: p.clone(), d };
    let image = transform.apply(&q).expect("degrees within bound");
    let inputs = TrialInputs::Bullet {
        d,
        p: p.clone(),
        q: q.clone(),
    };
    if image.is_zero() {
        return Draft::new(inputs, TrialStatus::Consistent, 1).note("p • q = 0");
    }
    match class_violation(&image, &class) {
        None => Draft::new(inputs, TrialStatus::Consistent, 1),
        Some(v) => {
            let w = Witness {
                claim: "bullet".into(),
                premise: Some(class),
                transform,
                input: q,
                image,
                violation: v,
            };
            let mut dr = Draft::new(inputs, TrialStatus::Certificate, 1);
            dr.certificate = Some(("bullet".into(), w));
            dr
        }
    }
}

fn bounds(cfg: &SearchConfig, seed: u64) -> SearchBounds {
    SearchBounds {
        trials: cfg.fixtures_per_trial,
        max_degree: cfg.max_degree,
        i_max: cfg.i_max,
        seed,
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Jensen polynomials `Σ_k C(n,k) αₖ xᵏ` for `n < alpha.len()` are all
/// hyperbolic: a finite-prefix necessary condition for a classical
/// multiplier sequence with non-negative terms.
pub fn jensen_prefix_ok(alpha: &[Rational]) -> bool {
    (0..alpha.len()).all(|n| {
        let coeffs = binomial_row(n)
            .into_iter()
            .zip(alpha)
            .map(|(c, a)| Rational::from_integer(c) * a)
            .collect();
        let g = Polynomial::monomial(coeffs);
        g.is_zero() || class_membership(&g, &ClassSpec::hp())
    })
}

fn nice_trial(cfg: &SearchConfig, index: u64, seed: u64, rng: &mut ChaCha8Rng) -> Draft {
    let n = cfg.max_degree;
    if index.is_multiple_of(2) {
        // (a) increasing classical multiplier candidates
        let (family, alpha) = if rng.gen_bool(0.5) {
            // cⁱ φ(i), c ≥ 1, φ with real zeros ≤ 0: a product of classical
            // multiplier sequences
            let c = Rational::one() + rand_rational(rng, &rat(0), &rat(2), 4);
            let k = rng.gen_range(0..=2usize);
            let roots: Vec<Rational> = (0..k).map(|_| rand_rational(rng, &rat(-3), &rat(0), 4)).collect();
            let phi = Polynomial::from_roots(&roots, Rational::one());
            let mut pw = Rational::one();
            let mut v = Vec::with_capacity(n + 1);
            for i in 0..=n {
                v.push(phi.evaluate(&rat(i as i64)) * &pw);
                pw *= &c;
            }
            ("geometric_times_phi".to_string(), v)
        } else {
            let mut v = Vec::with_capacity(n + 1);
            let a1 = rand_rational(rng, &rat(0), &rat(3), 3);
            v.push(rand_rational(rng, &rat(0), &(&a1 + rat(1)), 3));
            v.push(a1);
            for i in 2..=n {
                let step = rand_rational(rng, &rat(0), &rat(3), 3);
                let next = &v[i - 1] + step;
                v.push(next);
            }
            ("jensen_prefix".to_string(), v)
        };
        let sequence = DiagonalSequence::Table(alpha.clone());
        let inputs = TrialInputs::Nice {
            campaign: "a".into(),
            family: family.clone(),
            sequence: sequence.clone(),
        };
        let monotone = alpha[1..].windows(2).all(|w| w[0] <= w[1]) && !alpha[1].is_negative();
        if !monotone || !jensen_prefix_ok(&alpha) {
            return Draft::new(inputs, TrialStatus::Skipped, 0).note("not a monotone multiplier sequence on the prefix");
        }
        let verdict = dms_test(&sequence, &bounds(cfg, seed));
        let checked = verdict.checked;
        match verdict.outcome {
            Outcome::Holds => Draft::new(inputs, TrialStatus::Consistent, checked),
            Outcome::Fails { witness } => {
                let note = if family == "jensen_prefix" {
                    format!("classical status conditional on Jensen polynomials up to degree {n}")
                } else {
                    "classical multiplier sequence by construction".to_string()
                };
                let mut d = Draft::new(inputs, TrialStatus::Certificate, checked).note(note);
                d.certificate = Some(("nice".into(), *witness));
                d
            }
            Outcome::Inconclusive { reason } | Outcome::Skipped { reason } => {
                Draft::new(inputs, TrialStatus::Inconclusive, checked).note(reason)
            }
        }
    } else {
        // (b) non-monotone candidates
        let mut alpha: Vec<Rational> = (0..=n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    Rational::zero()
                } else {
                    rand_rational(rng, &rat(0), &rat(4), 2)
                }
            })
            .collect();
        // force a strict decrease at a random position
        let m = rng.gen_range(0..n);
        if alpha[m] <= alpha[m + 1] {
            alpha[m] = &alpha[m + 1] + ratio(1, 2);
        }
        let sequence = DiagonalSequence::Table(alpha.clone());
        let inputs = TrialInputs::Nice {
            campaign: "b".into(),
            family: "non_monotone".into(),
            sequence: sequence.clone(),
        };
        let nonzero = alpha.iter().filter(|a| !a.is_zero()).count();
        if nonzero < 3 {
            return Draft::new(inputs, TrialStatus::Skipped, 0).note("trivial sequence");
        }
        let alink = (0..n.saturating_sub(1))
            .filter(|&j| alpha[j] > alpha[j + 1] && alpha[j + 2].is_positive())
            .map(|j| alink_witness(&alpha[j], &alpha[j + 1], &alpha[j + 2], j))
            .find(|v: &Verdict| v.witness().is_some());
        if let Some(v) = alink {
            let mut d = Draft::new(inputs, TrialStatus::Witness, 1).note("non-preservation certified by the alink family");
            d.witness = v.witness().cloned();
            return d;
        }
        let verdict = dms_test(&sequence, &bounds(cfg, seed));
        let checked = verdict.checked;
        match verdict.outcome {
            Outcome::Fails { witness } => {
                let mut d = Draft::new(inputs, TrialStatus::Witness, checked).note("non-preservation found by random testing");
                d.witness = Some(*witness);
                d
            }
            _ => Draft::new(inputs, TrialStatus::Inconclusive, checked)
                .note("non-monotone candidate survived random testing; not a proof of preservation"),
        }
    }
}

fn verdict_draft(inputs: TrialInputs, verdict: Verdict) -> Draft {
    let checked = verdict.checked;
    match verdict.outcome {
        Outcome::Fails { witness } => {
            let mut d = Draft::new(inputs, TrialStatus::Witness, checked);
            d.witness = Some(*witness);
            d
        }
        Outcome::Holds => Draft::new(inputs, TrialStatus::Consistent, checked),
        Outcome::Inconclusive { reason } => Draft::new(inputs, TrialStatus::Inconclusive, checked).note(reason),
        Outcome::Skipped { reason } => Draft::new(inputs, TrialStatus::Skipped, checked).note(reason),
    }
}

fn remark2_trial(cfg: &SearchConfig, seed: u64, rng: &mut ChaCha8Rng) -> Draft {
    let den: i64 = rng.gen_range(2..=12);
    let num: i64 = rng.gen_range(1..den);
    let rho = ratio(num, den);
    let verdict = remark2_witness(&rho, &bounds(cfg, seed));
    verdict_draft(TrialInputs::Remark2 { rho }, verdict)
}

fn lemma1_trial(cfg: &SearchConfig, seed: u64, rng: &mut ChaCha8Rng) -> Draft {
    let k = rng.gen_range(1..=3usize);
    let mut coeffs: Vec<Polynomial> = (0..=k)
        .map(|j| {
            let forced = j == 0 || j == k;
            if !forced && rng.gen_bool(0.3) {
                return Polynomial::zero();
            }
            let deg = rng.gen_range(0..=2usize);
            let mut c: Vec<Rational> = (0..=deg).map(|_| rand_rational(rng, &rat(-3), &rat(3), 3)).collect();
            c[deg] = rand_unit(rng);
            Polynomial::monomial(c)
        })
        .collect();
    if coeffs[0].is_zero() {
        coeffs[0] = Polynomial::one();
    }
    let operator = FiniteDifferenceOperator::new(coeffs);
    let verdict = lemma1_violation(&operator, &bounds(cfg, seed));
    verdict_draft(TrialInputs::Lemma1 { operator }, verdict)
}

fn suite_trial(cfg: &SearchConfig, index: u64) -> Draft {
    let id = (index % super::suite::CRITERIA as u64) as u8 + 1;
    let result = super::suite::run_criterion(id, cfg.master_seed);
    let inputs = TrialInputs::Criterion {
        id,
        name: result.name.clone(),
    };
    let status = if result.passed {
        TrialStatus::Consistent
    } else {
        TrialStatus::Failed
    };
    Draft::new(inputs, status, result.checked).note(result.detail)
}

/// Process exit status: 1 when a certificate was produced or a proven
/// statement failed, 3 when a search was inconclusive, 0 otherwise.
pub fn exit_status(summary: &Summary) -> i32 {
    if summary.certificates > 0 || summary.failed > 0 {
        1
    } else if summary.inconclusive > 0 {
        3
    } else {
        0
    }
}
