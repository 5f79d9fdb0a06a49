use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use fdps::harness::fixtures::{gen_fixture, trial_rng};
use fdps::harness::search::{exit_status, run_search, CounterexampleCertificate, SearchConfig, SearchKind, TrialRecord};
use fdps::harness::serial::{format_rational, from_json, parse_rational, to_json, to_json_pretty};
use fdps::harness::suite::run_suite;
use fdps::roots::{isolate_and_refine, to_f64};
use fdps::verify::{
    check_mesh_monotone, dms_test, herpou_verdict, MeshMap, Outcome, SearchBounds, Verdict, Witness,
};
use fdps::{
    mesh_numeric, Basis, ClassSpec, DiagonalSequence, Operator, Polynomial, Rational,
    RootProfile,
};

const EXIT_OK: u8 = 0;
const EXIT_CERTIFICATE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "fdps", version, about = "Exact finite-difference Pólya–Schur toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Common {
    /// Master seed for every random stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    #[arg(long, default_value_t = 64)]
    i_max: usize,
    /// Width below which displayed root intervals are refined; never affects verdicts.
    #[arg(long, value_parser = parse_rat, default_value = "1/1000000000")]
    tol: Rational,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Machine-readable artifact destination.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Class verdicts, roots and mesh of a polynomial.
    Mesh {
        poly: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Apply an operator or a diagonal sequence to a polynomial.
    Apply {
        /// Operator JSON: `{"coeffs":[...]}` or `{"shifts":[...]}`.
        #[arg(long, conflicts_with = "sequence", required_unless_present = "sequence")]
        op: Option<PathBuf>,
        /// Diagonal sequence JSON acting on the Pochhammer basis.
        #[arg(long)]
        sequence: Option<PathBuf>,
        poly: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite a polynomial in another basis.
    Convert {
        poly: PathBuf,
        #[arg(long, value_enum)]
        to: BasisArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the theorem suite or check one symbol, sequence or Riesz parameter.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Seeded campaign; records go to --out (or stdout) as JSONL or CSV.
    Search {
        #[arg(value_enum)]
        kind: SearchArg,
        /// Record per-trial wall time (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Directory for certificate files; defaults to the directory of --out.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a certificate, witness, verdict or trial record.
    Replay { artifact: PathBuf },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run every acceptance criterion.
    TheoremSuite {
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the operator with symbol Q preserves mesh at least one.
    Herpou {
        symbol: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized test of a diagonal sequence against HP⁺≥1.
    Dms {
        sequence: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Mesh monotonicity of 1 - λxΔ_α (with --alpha) or p - λp' (without).
    Riesz {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long, value_parser = parse_rat)]
        alpha: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Monomial,
    Pochhammer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchArg {
    Nice,
    FiniteDegree,
    Bullet,
    Remark2,
    Lemma1,
}

impl From<SearchArg> for SearchKind {
    fn from(k: SearchArg) -> Self {
        match k {
            SearchArg::Nice => SearchKind::Nice,
            SearchArg::FiniteDegree => SearchKind::FiniteDegree,
            SearchArg::Bullet => SearchKind::Bullet,
            SearchArg::Remark2 => SearchKind::Remark2,
            SearchArg::Lemma1 => SearchKind::Lemma1,
        }
    }
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn write_artifact(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn root_rows(profile: &RootProfile) -> Vec<Vec<String>> {
    profile
        .roots
        .iter()
        .enumerate()
        .map(|(i, (iv, m))| {
            vec![
                i.to_string(),
                format_rational(&iv.lo),
                format_rational(&iv.hi),
                format!("{}", iv.approx()),
                m.to_string(),
            ]
        })
        .collect()
}

const ROOT_HEADER: [&str; 5] = ["index", "lo", "hi", "approx", "multiplicity"];

fn print_roots(profile: &RootProfile) {
    for (iv, m) in &profile.roots {
        let mult = if *m > 1 { format!(" (multiplicity {m})") } else { String::new() };
        if iv.is_exact() {
            println!("  root {}{mult}", iv.lo);
        } else {
            println!("  root ≈ {:.9} in ({}, {}){mult}", iv.approx(), iv.lo, iv.hi);
        }
    }
}

fn describe(p: &Polynomial, tol: &Rational) -> anyhow::Result<(RootProfile, serde_json::Value)> {
    let profile = isolate_and_refine(p, tol)?;
    let mesh = if profile.is_hyperbolic {
        Some(mesh_numeric(p, tol)?)
    } else {
        None
    };
    let classes: Vec<(String, bool)> = [
        ClassSpec::hp(),
        ClassSpec::hp_mesh(Rational::from_integer(1.into())),
        ClassSpec::hp_plus(Rational::from_integer(1.into())),
    ]
    .iter()
    .map(|c| (c.to_string(), fdps::class_membership(p, c)))
    .collect();
    println!("polynomial {p}");
    println!("degree {}", profile.degree);
    println!("hyperbolic: {}", profile.is_hyperbolic);
    println!("roots >= 0: {}", profile.is_hyperbolic && profile.all_roots_nonnegative);
    println!("distinct real roots: {}", profile.distinct_real_roots);
    print_roots(&profile);
    if let Some(m) = &mesh {
        match &m.exact {
            Some(e) => println!("mesh = {e}"),
            None => println!(
                "mesh in [{}, {}] ≈ {:.9}",
                m.lower,
                m.upper,
                m.lower.finite().map(to_f64).unwrap_or(f64::INFINITY)
            ),
        }
    }
    for (name, member) in &classes {
        println!("in {name}: {member}");
    }
    let json = serde_json::json!({
        "polynomial": p,
        "profile": profile,
        "mesh": mesh,
        "classes": classes.iter().map(|(n, m)| serde_json::json!({"class": n, "member": m})).collect::<Vec<_>>(),
    });
    Ok((profile, json))
}

fn emit_description(common: &Common, profile: &RootProfile, json: &serde_json::Value) -> anyhow::Result<()> {
    if let Some(out) = &common.out {
        let text = match common.format {
            Format::Json => serde_json::to_string_pretty(json)? + "\n",
            Format::Csv => csv_string(&ROOT_HEADER, root_rows(profile))?,
        };
        write_artifact(out, &text)?;
    }
    Ok(())
}

fn cmd_mesh(poly: &Path, common: &Common) -> anyhow::Result<u8> {
    let p: Polynomial = read_json(poly)?;
    if p.is_zero() {
        bail!("the zero polynomial has no root profile");
    }
    let (profile, json) = describe(&p, &common.tol)?;
    emit_description(common, &profile, &json)?;
    Ok(EXIT_OK)
}

fn cmd_apply(op: Option<&Path>, sequence: Option<&Path>, poly: &Path, common: &Common) -> anyhow::Result<u8> {
    let p: Polynomial = read_json(poly)?;
    let image = match (op, sequence) {
        (Some(op), _) => read_json::<Operator>(op)?.apply(&p),
        (None, Some(seq)) => read_json::<DiagonalSequence>(seq)?.apply(&p)?,
        (None, None) => bail!("one of --op or --sequence is required"),
    };
    if image.is_zero() {
        println!("image 0");
        if let Some(out) = &common.out {
            write_artifact(out, &(to_json_pretty(&image) + "\n"))?;
        }
        return Ok(EXIT_OK);
    }
    let (profile, mut json) = describe(&image, &common.tol)?;
    json["input"] = serde_json::to_value(&p)?;
    emit_description(common, &profile, &json)?;
    Ok(EXIT_OK)
}

fn cmd_convert(poly: &Path, to: BasisArg, common: &Common) -> anyhow::Result<u8> {
    let p: Polynomial = read_json(poly)?;
    let target = match to {
        BasisArg::Monomial => Basis::Monomial,
        BasisArg::Pochhammer => Basis::Pochhammer,
    };
    let q = p.to_basis(target);
    let text = match common.format {
        Format::Json => to_json(&q) + "\n",
        Format::Csv => csv_string(
            &["index", "coefficient"],
            q.coeffs().iter().enumerate().map(|(i, c)| vec![i.to_string(), format_rational(c)]).collect(),
        )?,
    };
    match &common.out {
        Some(out) => write_artifact(out, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn bounds(common: &Common) -> SearchBounds {
    SearchBounds {
        trials: common.trials,
        max_degree: common.max_degree,
        i_max: common.i_max,
        seed: common.seed,
    }
}

fn verdict_line(v: &Verdict) -> String {
    match &v.outcome {
        Outcome::Holds => format!("{}: holds ({} checked)", v.claim, v.checked),
        Outcome::Fails { witness } => format!(
            "{}: fails on p = {}; image {}; {}",
            v.claim,
            witness.input,
            witness.image,
            to_json(&witness.violation)
        ),
        Outcome::Inconclusive { reason } => format!("{}: inconclusive after {} checked: {reason}", v.claim, v.checked),
        Outcome::Skipped { reason } => format!("{}: skipped: {reason}", v.claim),
    }
}

fn emit_verdict(common: &Common, v: &Verdict) -> anyhow::Result<()> {
    println!("{}", verdict_line(v));
    if let Some(out) = &common.out {
        write_artifact(out, &(to_json_pretty(v) + "\n"))?;
    }
    Ok(())
}

fn cmd_verify(cmd: &VerifyCommand) -> anyhow::Result<u8> {
    match cmd {
        VerifyCommand::TheoremSuite { common } => {
            let results = run_suite(common.seed);
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("{tag} {:>2} {} ({} checked): {}", r.id, r.name, r.checked, r.detail);
            }
            if let Some(out) = &common.out {
                let text = match common.format {
                    Format::Json => to_json_pretty(&results) + "\n",
                    Format::Csv => csv_string(
                        &["id", "name", "passed", "checked", "detail"],
                        results
                            .iter()
                            .map(|r| {
                                vec![r.id.to_string(), r.name.clone(), r.passed.to_string(), r.checked.to_string(), r.detail.clone()]
                            })
                            .collect(),
                    )?,
                };
                write_artifact(out, &text)?;
            }
            Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_CERTIFICATE })
        }
        VerifyCommand::Herpou { symbol, common } => {
            let q: Polynomial = read_json(symbol)?;
            let v = herpou_verdict(&q, &bounds(common))?;
            emit_verdict(common, &v)?;
            Ok(match v.outcome {
                Outcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
                _ => EXIT_OK,
            })
        }
        VerifyCommand::Dms { sequence, common } => {
            let a: DiagonalSequence = read_json(sequence)?;
            let v = dms_test(&a, &bounds(common));
            emit_verdict(common, &v)?;
            Ok(match v.outcome {
                Outcome::Holds | Outcome::Skipped { .. } => EXIT_OK,
                Outcome::Fails { .. } => EXIT_CERTIFICATE,
                Outcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            })
        }
        VerifyCommand::Riesz { lambda, alpha, common } => {
            let (map, class, stream) = match alpha {
                Some(a) => (
                    MeshMap::Riesz {
                        lambda: lambda.clone(),
                        alpha: a.clone(),
                    },
                    ClassSpec::hp_mesh(a.clone()),
                    0x7269,
                ),
                None => (MeshMap::Derivative { lambda: lambda.clone() }, ClassSpec::hp(), 0x7264),
            };
            let mut first_failure = None;
            for i in 0..common.trials as u64 {
                let mut rng = trial_rng(common.seed, stream, i);
                let deg = rng.gen_range(0..=common.max_degree);
                let p = gen_fixture(&class, deg, &mut rng);
                let v = check_mesh_monotone(&map, &p)?;
                if !v.holds() {
                    first_failure = Some(v);
                    break;
                }
            }
            match first_failure {
                Some(v) => {
                    emit_verdict(common, &v)?;
                    Ok(EXIT_CERTIFICATE)
                }
                None => {
                    println!("mesh monotone on {} fixtures in {class}", common.trials);
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn records_csv(records: &[TrialRecord]) -> anyhow::Result<String> {
    let rows = records
        .iter()
        .map(|r| {
            let inputs = serde_json::to_value(&r.inputs)?;
            Ok(vec![
                r.trial_index.to_string(),
                r.seed.to_string(),
                serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string(),
                r.checked.to_string(),
                inputs.to_string(),
                r.note.clone().unwrap_or_default(),
                r.witness.is_some().to_string(),
                r.certificate.as_ref().map(|c| c.conjecture.clone()).unwrap_or_default(),
                r.wall_time_us.map(|t| t.to_string()).unwrap_or_default(),
            ])
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    csv_string(
        &["trial_index", "seed", "status", "checked", "inputs", "note", "witness", "certificate", "wall_time_us"],
        rows,
    )
}

fn cmd_search(kind: SearchArg, timing: bool, cert_dir: Option<&Path>, common: &Common) -> anyhow::Result<u8> {
    let cfg = SearchConfig {
        trials: common.trials,
        max_degree: common.max_degree,
        i_max: common.i_max,
        tolerance: common.tol.clone(),
        timing,
        ..SearchConfig::new(kind.into(), common.seed)
    };
    let report = run_search(&cfg);
    let text = match common.format {
        Format::Json => report.to_jsonl(),
        Format::Csv => records_csv(&report.records)?,
    };
    let summary = format!("{} seed {}: {}", to_json(&cfg.kind), cfg.master_seed, to_json(&report.summary));
    match &common.out {
        Some(out) => {
            write_artifact(out, &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    let dir = cert_dir
        .map(Path::to_path_buf)
        .or_else(|| common.out.as_ref().and_then(|o| o.parent().map(Path::to_path_buf)))
        .unwrap_or_default();
    for cert in report.certificates() {
        let path = dir.join(format!(
            "{}-seed{}-trial{}.json",
            cert.conjecture, cert.master_seed, cert.trial_index
        ));
        write_artifact(&path, &(to_json_pretty(cert) + "\n"))?;
        let msg = format!("certificate written to {}", path.display());
        if common.out.is_some() {
            println!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    }
    Ok(exit_status(&report.summary) as u8)
}

fn replay_witness(w: &Witness) -> anyhow::Result<u8> {
    let ok = w.replay()?;
    println!(
        "{} {}: p = {}, image {}; {}",
        if ok { "reproduced" } else { "NOT reproduced" },
        w.claim,
        w.input,
        w.image,
        to_json(&w.violation)
    );
    Ok(if ok { EXIT_OK } else { EXIT_CERTIFICATE })
}

fn cmd_replay(path: &Path) -> anyhow::Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let parse = |what: &str, e: serde_json::Error| anyhow!("{}: not a valid {what}: {e}", path.display());
    if value.get("conjecture").is_some() {
        let c: CounterexampleCertificate = serde_json::from_value(value).map_err(|e| parse("certificate", e))?;
        println!("certificate for conjecture {} (seed {}, trial {})", c.conjecture, c.master_seed, c.trial_index);
        replay_witness(&c.witness)
    } else if value.get("violation").is_some() {
        let w: Witness = serde_json::from_value(value).map_err(|e| parse("witness", e))?;
        replay_witness(&w)
    } else if value.get("outcome").is_some() {
        let v: Verdict = serde_json::from_value(value).map_err(|e| parse("verdict", e))?;
        match v.witness() {
            Some(w) => replay_witness(w),
            None => bail!("verdict carries no witness: {}", verdict_line(&v)),
        }
    } else if value.get("trial_index").is_some() {
        let r: TrialRecord = serde_json::from_value(value).map_err(|e| parse("trial record", e))?;
        match (&r.certificate, &r.witness) {
            (Some(c), _) => replay_witness(&c.witness),
            (None, Some(w)) => replay_witness(w),
            (None, None) => bail!("trial {} carries no witness", r.trial_index),
        }
    } else {
        bail!("{}: not a certificate, witness, verdict or trial record", path.display())
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Mesh { poly, common } => cmd_mesh(poly, common),
        Command::Apply {
            op,
            sequence,
            poly,
            common,
        } => cmd_apply(op.as_deref(), sequence.as_deref(), poly, common),
        Command::Convert { poly, to, common } => cmd_convert(poly, *to, common),
        Command::Verify(v) => cmd_verify(v),
        Command::Search {
            kind,
            timing,
            cert_dir,
            common,
        } => cmd_search(*kind, *timing, cert_dir.as_deref(), common),
        Command::Replay { artifact } => cmd_replay(artifact),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
