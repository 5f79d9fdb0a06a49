//! The theorem suite: one exact, seeded check per acceptance criterion.

use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixtures::{gen_fixture, rand_rational, rand_unit, trial_rng};
use super::serial::to_json;
use super::search::{run_search, SearchConfig, SearchKind};
use crate::interlace::{class_membership, quadratic_hp1plus, quadratic_polynomial, ClassSpec};
use crate::operators::{make_standard, sequence_from_poly, FiniteDifferenceOperator, StandardOperator};
use crate::poly::{rat, ratio, Polynomial, Rational};
use crate::roots::{isolate_and_refine, mesh_at_least, mesh_numeric, Mesh};
use crate::verify::{
    alink_witness, check_altn, check_brenti, check_mesh_monotone, check_riesz_plus, check_signs,
    dms_test, herpou_verdict, lemma1_violation, remark2_witness, wlambda_test, MeshMap, SearchBounds,
    Verdict, Violation,
};

pub const CRITERIA: u8 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

fn result(id: u8, name: &str, passed: bool, checked: usize, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        checked,
        detail,
    }
}

pub fn run_suite(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect()
}

pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    match id {
        1 => remark1(),
        2 => herpou_sufficiency(seed),
        3 => herpou_necessity(),
        4 => fd_riesz(seed),
        5 => riesz(seed),
        6 => multiplier_sequences(seed),
        7 => brenti_altn_signs(seed),
        8 => quadratic_oracle(seed),
        9 => alink_grid(),
        10 => remark2(seed),
        11 => lemma1(seed),
        12 => campaigns(seed),
        _ => result(id, "unknown", false, 0, format!("no criterion {id}")),
    }
}

// Stream tags for suite fixtures.
const S2_FIXTURE: u64 = 0x0201;
const S2_SYMBOL: u64 = 0x0202;
const S4: u64 = 0x0400;
const S4_PLUS: u64 = 0x0401;
const S5: u64 = 0x0500;
const S7_BRENTI: u64 = 0x0701;
const S7_ALTN: u64 = 0x0702;
const S7_SIGNS: u64 = 0x0703;
const S8: u64 = 0x0800;

fn count_failures(verdicts: impl IntoIterator<Item = Verdict>) -> (usize, usize, Option<Verdict>) {
    let mut checked = 0;
    let mut failed = 0;
    let mut first = None;
    for v in verdicts {
        checked += 1;
        if !v.holds() {
            failed += 1;
            first.get_or_insert(v);
        }
    }
    (checked, failed, first)
}

fn first_detail(first: Option<Verdict>) -> String {
    first
        .map(|v| format!("; first failure: {}", to_json(&v)))
        .unwrap_or_default()
}

fn remark1() -> CriterionResult {
    let name = "remark1";
    let p = Polynomial::from_roots(&[rat(1), rat(4), rat(7)], rat(1));
    let u = make_standard(&StandardOperator::WLambda(ratio(3, 4))).expect("valid");
    let image = u.apply(&p);
    let expected = [0.433167, 3.12467, 6.36524];
    let profile = isolate_and_refine(&image, &ratio(1, 10_000_000)).expect("nonzero");
    let approx: Vec<f64> = profile.roots.iter().map(|(iv, _)| iv.approx()).collect();
    let close = approx.len() == 3
        && profile.roots.iter().all(|(_, m)| *m == 1)
        && approx.iter().zip(expected).all(|(a, e)| (a - e).abs() < 1e-4);
    let below = !mesh_at_least(&image, &rat(3));
    let input_mesh = mesh_numeric(&p, &ratio(1, 1_000_000_000)).expect("hyperbolic").exact;
    let exact3 = input_mesh == Some(Mesh::Finite(rat(3)));
    result(
        1,
        name,
        close && below && exact3,
        1,
        format!(
            "image {image}; roots {approx:?}; mesh(image) >= 3: {}; exact mesh of input: {}",
            !below,
            input_mesh.map(|m| m.to_string()).unwrap_or_else(|| "unknown".into())
        ),
    )
}

fn herpou_sufficiency(seed: u64) -> CriterionResult {
    let name = "herpou_sufficiency";
    let class = ClassSpec::hp_mesh(rat(1));
    let symbols: Vec<Polynomial> = (0..20)
        .map(|i| {
            let mut rng = trial_rng(seed, S2_SYMBOL, i);
            let k = rng.gen_range(1..=4usize);
            let roots: Vec<Rational> = (0..k).map(|_| rand_rational(&mut rng, &rat(0), &rat(3), 4)).collect();
            Polynomial::from_roots(&roots, rand_unit(&mut rng))
        })
        .collect();
    let ops: Vec<FiniteDifferenceOperator> = symbols.iter().map(FiniteDifferenceOperator::from_symbol).collect();
    let fixtures: Vec<Polynomial> = (0..500)
        .map(|i| {
            let mut rng = trial_rng(seed, S2_FIXTURE, i);
            let deg = rng.gen_range(0..=8usize);
            gen_fixture(&class, deg, &mut rng)
        })
        .collect();
    let failures: Vec<String> = fixtures
        .par_iter()
        .flat_map_iter(|p| {
            ops.iter().zip(&symbols).filter_map(move |(t, q)| {
                let image = t.apply(p);
                crate::verify::class_violation(&image, &ClassSpec::hp_mesh(rat(1)))
                    .map(|v| format!("Q = {q}, p = {p}: {}", to_json(&v)))
            })
        })
        .collect();
    result(
        2,
        name,
        failures.is_empty(),
        fixtures.len() * ops.len(),
        format!("{} failures{}", failures.len(), failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn herpou_necessity() -> CriterionResult {
    let name = "herpou_necessity";
    let bounds = SearchBounds::default();
    let mut details = Vec::new();
    let mut ok = true;
    for q in [Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[1, 0, -1])] {
        match herpou_verdict(&q, &bounds).map(|v| v.witness().cloned()) {
            Ok(Some(w)) => {
                let i = w.input.deg().unwrap_or(0);
                let certified = matches!(w.violation, Violation::MeshBelow { .. } | Violation::NotHyperbolic);
                let replays = w.replay().unwrap_or(false);
                ok &= i <= 64 && certified && replays;
                details.push(format!(
                    "Q = {q}: i = {i}, image {}, {}, replays {replays}",
                    w.image,
                    to_json(&w.violation)
                ));
            }
            other => {
                ok = false;
                details.push(format!("Q = {q}: no witness ({other:?})"));
            }
        }
    }
    result(3, name, ok, 2, details.join("; "))
}

fn fd_riesz(seed: u64) -> CriterionResult {
    let name = "fd_riesz";
    let alphas = [rat(1), ratio(3, 2), rat(2)];
    let lambdas = [ratio(1, 2), rat(1), rat(3)];
    let jobs: Vec<(usize, u64)> = (0..alphas.len()).flat_map(|a| (0..300u64).map(move |i| (a, i))).collect();
    let verdicts: Vec<Verdict> = jobs
        .par_iter()
        .flat_map_iter(|&(a, i)| {
            let alpha = &alphas[a];
            let mut rng = trial_rng(seed, S4 + a as u64, i);
            let deg = rng.gen_range(0..=6usize);
            let p = gen_fixture(&ClassSpec::hp_mesh(alpha.clone()), deg, &mut rng);
            let mut rng = trial_rng(seed, S4_PLUS + 16 * a as u64, i);
            let deg = rng.gen_range(0..=6usize);
            let pp = gen_fixture(&ClassSpec::hp_plus(alpha.clone()), deg, &mut rng);
            let mut out = Vec::new();
            for lambda in &lambdas {
                let map = MeshMap::Riesz {
                    lambda: lambda.clone(),
                    alpha: alpha.clone(),
                };
                out.push(check_mesh_monotone(&map, &p).expect("valid"));
                if *lambda >= rat(1) {
                    out.push(check_riesz_plus(lambda, alpha, &pp).expect("valid"));
                }
            }
            out
        })
        .collect();
    let (checked, failed, first) = count_failures(verdicts);
    result(4, name, failed == 0, checked, format!("{failed} failures of {checked}{}", first_detail(first)))
}

fn riesz(seed: u64) -> CriterionResult {
    let name = "riesz";
    let lambdas = [rat(-2), rat(0), ratio(1, 2), rat(5)];
    let verdicts: Vec<Verdict> = (0..300u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = trial_rng(seed, S5, i);
            let deg = rng.gen_range(0..=6usize);
            let p = gen_fixture(&ClassSpec::hp(), deg, &mut rng);
            lambdas
                .iter()
                .map(|l| check_mesh_monotone(&MeshMap::Derivative { lambda: l.clone() }, &p).expect("valid"))
                .collect::<Vec<_>>()
        })
        .collect();
    let (checked, failed, first) = count_failures(verdicts);
    result(5, name, failed == 0, checked, format!("{failed} failures of {checked}{}", first_detail(first)))
}

fn multiplier_sequences(seed: u64) -> CriterionResult {
    let name = "multiplier_sequences";
    let bounds = SearchBounds {
        trials: 500,
        max_degree: 6,
        seed,
        ..SearchBounds::default()
    };
    let mut lines = Vec::new();
    let mut ok = true;
    let mut checked = 0;
    for lambda in [rat(0), ratio(1, 4), rat(1), rat(10)] {
        let v = wlambda_test(&lambda, &bounds);
        checked += v.checked;
        ok &= v.holds() && v.checked == bounds.trials;
        lines.push(format!("1+{lambda}i: {}", to_json(&v.outcome)));
    }
    let phis = [
        Polynomial::x(),
        Polynomial::from_ints(&[1, 1]),
        Polynomial::from_ints(&[1, 1]).pow(2),
        Polynomial::from_ints(&[0, 1, 1]),
    ];
    for phi in phis {
        match sequence_from_poly(&phi, bounds.max_degree + 1) {
            Ok(seq) => {
                let v = dms_test(&seq, &bounds);
                checked += v.checked;
                ok &= v.holds() && v.checked == bounds.trials;
                lines.push(format!("phi = {phi}: {}", to_json(&v.outcome)));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("phi = {phi}: {e}"));
            }
        }
    }
    result(6, name, ok, checked, lines.join("; "))
}

fn brenti_altn_signs(seed: u64) -> CriterionResult {
    let name = "brenti_altn_signs";
    let nonneg = ClassSpec {
        mesh_bound: None,
        require_nonneg_roots: true,
    };
    let brenti: Vec<Verdict> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, S7_BRENTI, i);
            let deg = rng.gen_range(0..=6usize);
            check_brenti(&gen_fixture(&nonneg, deg, &mut rng))
        })
        .collect();
    let altn: Vec<Verdict> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, S7_ALTN, i);
            let deg = rng.gen_range(0..=6usize);
            let p = gen_fixture(&ClassSpec::hp_plus(rat(1)), deg, &mut rng);
            let p = if p.leading_coefficient().is_some_and(|c| c.is_negative()) { -p } else { p };
            check_altn(&p)
        })
        .collect();
    // mixed-sign sequences must each yield a replayable witness
    let signs: Vec<bool> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, S7_SIGNS, i);
            let mut alpha: Vec<Rational> = (0..7)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        Rational::zero()
                    } else {
                        rand_rational(&mut rng, &rat(-4), &rat(4), 3)
                    }
                })
                .collect();
            let a = rng.gen_range(0..7);
            let b = (a + rng.gen_range(1..7)) % 7;
            alpha[a] = rand_rational(&mut rng, &ratio(1, 3), &rat(4), 3);
            alpha[b] = -rand_rational(&mut rng, &ratio(1, 3), &rat(4), 3);
            check_signs(&alpha)
                .witness()
                .is_some_and(|w| w.replay().unwrap_or(false))
        })
        .collect();
    let (bc, bf, bfirst) = count_failures(brenti);
    let (ac, af, afirst) = count_failures(altn);
    let sf = signs.iter().filter(|ok| !**ok).count();
    result(
        7,
        name,
        bf == 0 && af == 0 && sf == 0,
        bc + ac + signs.len(),
        format!(
            "brenti {bf}/{bc} failures{}; altn {af}/{ac} failures{}; signs {sf}/{} uncertified",
            first_detail(bfirst),
            first_detail(afirst),
            signs.len()
        ),
    )
}

fn quadratic_oracle(seed: u64) -> CriterionResult {
    let name = "quadratic_oracle";
    let mut triples = Vec::new();
    for a in 1..=5 {
        for b in 0..=5 {
            for c in 0..=5 {
                triples.push((rat(a), rat(b), rat(c)));
            }
        }
    }
    for i in 0..50 {
        let mut rng = trial_rng(seed, S8, i);
        let a = rand_rational(&mut rng, &ratio(1, 6), &rat(5), 6);
        let b = rand_rational(&mut rng, &rat(0), &rat(5), 6);
        let c = rand_rational(&mut rng, &rat(0), &rat(5), 6);
        triples.push((a, b, c));
    }
    let disagreements: Vec<String> = triples
        .par_iter()
        .filter_map(|(a, b, c)| {
            let closed = quadratic_hp1plus(a, b, c).expect("valid");
            let exact = class_membership(&quadratic_polynomial(a, b, c), &ClassSpec::hp_plus(rat(1)));
            (closed != exact).then(|| format!("({a}, {b}, {c}): criterion {closed}, membership {exact}"))
        })
        .collect();
    result(
        8,
        name,
        disagreements.is_empty(),
        triples.len(),
        format!("{} disagreements of {}{}", disagreements.len(), triples.len(),
            disagreements.first().map(|d| format!("; first: {d}")).unwrap_or_default()),
    )
}

fn alink_grid() -> CriterionResult {
    let name = "alink";
    let mut checked = 0;
    let mut failed = Vec::new();
    for a0 in 0..=4 {
        for a1 in 0..=4 {
            for a2 in 1..=4 {
                if a0 <= a1 {
                    continue;
                }
                for m in [0usize, 2] {
                    checked += 1;
                    let v = alink_witness(&rat(a0), &rat(a1), &rat(a2), m);
                    if !v.witness().is_some_and(|w| w.replay().unwrap_or(false)) {
                        failed.push(format!("({a0},{a1},{a2}) m={m}"));
                    }
                }
            }
        }
    }
    let spot = alink_witness(&rat(2), &rat(1), &rat(1), 0);
    let spot_ok = spot.witness().is_some_and(|w| {
        let disc = rat(9) - rat(16);
        w.image == Polynomial::from_ints(&[4, -3, 1]) && w.violation == Violation::NotHyperbolic && disc.is_negative()
    });
    result(
        9,
        name,
        failed.is_empty() && spot_ok,
        checked + 1,
        format!("{} uncertified of {checked}; spot (2,1,1) image x^2 - 3*x + 4 certified: {spot_ok}", failed.len()),
    )
}

fn remark2(seed: u64) -> CriterionResult {
    let name = "remark2";
    let bounds = SearchBounds {
        max_degree: 4,
        seed,
        ..SearchBounds::default()
    };
    let v = remark2_witness(&ratio(1, 2), &bounds);
    match v.witness() {
        Some(w) => {
            let deg = w.input.deg().unwrap_or(0);
            let replays = w.replay().unwrap_or(false);
            result(
                10,
                name,
                deg <= 4 && replays,
                v.checked,
                format!("input {}, image {}, {}, replays {replays}", w.input, w.image, to_json(&w.violation)),
            )
        }
        None => result(10, name, false, v.checked, to_json(&v.outcome)),
    }
}

fn lemma1(seed: u64) -> CriterionResult {
    let name = "lemma1";
    let bounds = SearchBounds {
        max_degree: 4,
        seed,
        ..SearchBounds::default()
    };
    let ops = [
        ("delta", FiniteDifferenceOperator::constant(&[rat(1), rat(-1)])),
        ("p(x)+p(x-1)", FiniteDifferenceOperator::constant(&[rat(1), rat(1)])),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (label, t) in ops {
        let v = lemma1_violation(&t, &bounds);
        match v.witness() {
            Some(w) => {
                let replays = w.replay().unwrap_or(false);
                ok &= replays && w.input.deg().unwrap_or(0) <= 4;
                lines.push(format!("{label}: p = {}, T(p) = {}, replays {replays}", w.input, w.image));
            }
            None => {
                ok = false;
                lines.push(format!("{label}: {}", to_json(&v.outcome)));
            }
        }
    }
    result(11, name, ok, 2, lines.join("; "))
}

fn campaigns(seed: u64) -> CriterionResult {
    let name = "campaigns";
    let mut ok = true;
    let mut lines = Vec::new();
    let mut checked = 0;
    for kind in [SearchKind::FiniteDegree, SearchKind::Bullet] {
        let cfg = SearchConfig {
            trials: 1000,
            max_degree: 4,
            ..SearchConfig::new(kind, seed)
        };
        let first = run_search(&cfg);
        let second = run_search(&cfg);
        let identical = first.to_jsonl() == second.to_jsonl();
        let replays = first.certificates().all(|c| c.replay().unwrap_or(false));
        let complete = first.records.len() == cfg.trials && first.summary.failed == 0;
        ok &= identical && replays && complete;
        checked += first.records.len();
        lines.push(format!(
            "{}: {}, identical {identical}, certificates replay {replays}",
            to_json(&kind),
            to_json(&first.summary)
        ));
    }
    result(12, name, ok, checked, lines.join("; "))
}
