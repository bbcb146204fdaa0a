//! The `availpref` command line.
//!
//! Exit codes: 0 clean, 1 input error, 2 axiom or representation finding,
//! 3 the utility bisection hit a non-monotone membership predicate.
//!
//! All randomness comes from one generator seeded by `--seed`; payloads
//! carry no timestamps, so identical flags give byte-identical output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::choice::{cross_validate_choice, Menu};
use crate::error::Error;
use crate::preference::{
    check_order_axioms, falsify_weak_continuity, weak_continuity_outcome, weak_dominance_outcome,
    BuiltinOracle, FamilyLibrary, PreferenceSpec,
};
use crate::raf::{AlternativeSet, Raf};
use crate::sampling::{RafSampler, SamplerKind};
use crate::wold::{compute_u, lemma1_sequences, validate_representation, UtilityResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FINDING: i32 = 2;
pub const EXIT_BISECTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "availpref", version, about = "Preferences over random availability functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sampled checks of the order axioms, weak dominance and weak continuity.
    CheckAxioms(CheckAxiomsArgs),
    /// Utility table for a file of RAFs.
    BuildUtility(BuildUtilityArgs),
    /// Sampled check that utilities represent the preference.
    Validate(ValidateArgs),
    /// Maximal elements of a menu, by tournament and by utility.
    Choose(ChooseArgs),
    /// Print the perturbation sequences for a pointwise dominating pair.
    DemoLemma1(DemoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerChoice {
    Uniform,
    Grid,
    Mixed,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Preference spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Comma-separated alternative labels. Defaults to the labels implied by
    /// the spec, else x1..xN with N from --n-alts.
    #[arg(long, value_delimiter = ',')]
    pub alts: Option<Vec<String>>,
    #[arg(long, default_value_t = 5)]
    pub n_alts: usize,
}

#[derive(Debug, Args)]
pub struct CheckAxiomsArgs {
    #[command(flatten)]
    pub config: RunConfig,
    #[arg(long, default_value_t = 1000)]
    pub triples: usize,
    /// Prefix length checked for each continuity probe family.
    #[arg(long, default_value_t = 100)]
    pub depth: u64,
}

#[derive(Debug, Args)]
pub struct BuildUtilityArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// RAF list: {"alts": [...], "items": [{"label": ..., "values": [...]}, ...]}
    #[arg(long)]
    pub rafs: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// `mixed` draws a quarter of the RAFs from a 5-level grid, which
    /// exposes ties that uniform draws miss.
    #[arg(long, value_enum, default_value_t = SamplerChoice::Mixed)]
    pub sampler: SamplerChoice,
}

#[derive(Debug, Args)]
pub struct ChooseArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// Menu: {"alts": [...], "items": [{"label": ..., "values": [...]}, ...]}
    #[arg(long)]
    pub menu: PathBuf,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Limit of the dominating sequence, e.g. 1.0,0.6,0.3
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub a: Vec<f64>,
    /// Limit of the dominated sequence.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
    pub n: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub alts: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A failed run: exit code plus message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::NonMonotoneMembership { .. } => EXIT_BISECTION,
            Error::InPair { source, .. } if matches!(**source, Error::NonMonotoneMembership { .. }) => {
                EXIT_BISECTION
            }
            Error::NoMaximalElement(_) => EXIT_FINDING,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Runs one command, writing its payload; returns the exit code.
pub fn execute(command: &Command) -> Result<i32, Failure> {
    match command {
        Command::CheckAxioms(args) => check_axioms(args),
        Command::BuildUtility(args) => build_utility(args),
        Command::Validate(args) => validate(args),
        Command::Choose(args) => choose(args),
        Command::DemoLemma1(args) => demo_lemma1(args),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_spec(config: &RunConfig) -> Result<PreferenceSpec, Failure> {
    parse_json(&config.spec)
}

fn resolve_alternatives(config: &RunConfig, spec: &PreferenceSpec) -> Result<AlternativeSet, Failure> {
    let alts = match (&config.alts, spec.implied_alternatives()) {
        (Some(labels), _) => AlternativeSet::new(labels.iter().cloned()),
        (None, Some(implied)) => implied,
        (None, None) => AlternativeSet::numbered(config.n_alts),
    };
    Ok(alts?)
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol).into())
    }
}

fn emit(out: Option<&Path>, payload: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, payload).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_payload(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Shortest decimal that parses back to the same double.
fn real(x: f64) -> String {
    format!("{x:?}")
}

fn check_axioms(args: &CheckAxiomsArgs) -> Result<i32, Failure> {
    let config = &args.config;
    let spec = load_spec(config)?;
    let alts = resolve_alternatives(config, &spec)?;
    let oracle = spec.build(&alts)?;
    let mut sampler = RafSampler::uniform(&alts, config.seed);

    let mut report = check_order_axioms(&oracle, &mut sampler, config.pairs, args.triples)?;
    report.push(weak_dominance_outcome(&oracle, &mut sampler, config.pairs)?);
    let library = FamilyLibrary::standard(&alts, &spec.discontinuity_loci());
    let witness = falsify_weak_continuity(&oracle, &library, args.depth)?;
    report.push(weak_continuity_outcome(library.len(), witness));

    let payload = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => csv_payload(
            &["axiom", "verdict", "samples"].map(String::from),
            &report
                .outcomes
                .iter()
                .map(|o| {
                    vec![
                        serde_json::to_value(o.axiom).unwrap().as_str().unwrap().to_owned(),
                        serde_json::to_value(o.verdict).unwrap().as_str().unwrap().to_owned(),
                        o.samples.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(config.out.as_deref(), &payload)?;
    for o in report.outcomes.iter().filter(|o| o.witness.is_some()) {
        eprintln!("{} falsified", o.axiom);
    }
    Ok(if report.any_falsified() { EXIT_FINDING } else { EXIT_OK })
}

#[derive(Serialize)]
struct UtilityRow<'a> {
    label: &'a str,
    values: &'a [f64],
    #[serde(flatten)]
    result: UtilityResult,
}

fn build_utility(args: &BuildUtilityArgs) -> Result<i32, Failure> {
    let config = &args.config;
    check_tol(config.tol)?;
    let spec = load_spec(config)?;
    let rafs: Menu = parse_json(&args.rafs)?;
    let alts = rafs.alternatives();
    let oracle = spec.build(alts)?;

    let mut screen = RafSampler::uniform(alts, config.seed);
    if weak_dominance_outcome(&oracle, &mut screen, config.pairs)?.witness.is_some() {
        eprintln!("warning: {} spec fails weak-dominance screening", spec.kind());
    }

    let mut results = Vec::with_capacity(rafs.len());
    for item in rafs.items() {
        let r = compute_u(&oracle, &item.raf, config.tol)
            .map_err(|e| Failure::from(e).context(format!("RAF {} = {}", item.label, item.raf)))?;
        results.push((item, r));
    }

    let payload = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut header = vec!["label".to_owned()];
            header.extend(alts.labels().iter().cloned());
            header.extend(["u", "lo", "hi", "oracle_calls"].map(String::from));
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(item, r)| {
                    let mut row = vec![item.label.clone()];
                    row.extend(item.raf.values().iter().map(|&v| real(v)));
                    row.extend([real(r.u), real(r.lo), real(r.hi), r.oracle_calls.to_string()]);
                    row
                })
                .collect();
            csv_payload(&header, &rows)
        }
        Format::Json => to_json(
            &results
                .iter()
                .map(|(item, r)| UtilityRow {
                    label: &item.label,
                    values: item.raf.values(),
                    result: *r,
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(config.out.as_deref(), &payload)?;
    Ok(EXIT_OK)
}

impl Failure {
    fn context(mut self, what: String) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

fn validate(args: &ValidateArgs) -> Result<i32, Failure> {
    let config = &args.config;
    check_tol(config.tol)?;
    let spec = load_spec(config)?;
    let alts = resolve_alternatives(config, &spec)?;
    let oracle = spec.build(&alts)?;
    let kind = match args.sampler {
        SamplerChoice::Uniform => SamplerKind::Uniform,
        SamplerChoice::Grid => SamplerKind::Grid { levels: 5 },
        SamplerChoice::Mixed => SamplerKind::Mixed {
            grid_fraction: 0.25,
            levels: 5,
        },
    };
    let mut sampler = RafSampler::new(&alts, kind, config.seed);
    let report = validate_representation(&oracle, &mut sampler, config.pairs, config.tol)?;

    let payload = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => csv_payload(
            &["oracle", "seed", "tol", "pairs_tested", "confirmed", "indeterminate", "violations", "band_strict"]
                .map(String::from),
            &[vec![
                report.oracle.clone(),
                report.seed.to_string(),
                real(report.tol),
                report.pairs_tested.to_string(),
                report.confirmed.to_string(),
                report.indeterminate.to_string(),
                report.violations.len().to_string(),
                report.band_strict.len().to_string(),
            ]],
        ),
    };
    emit(config.out.as_deref(), &payload)?;
    if !report.band_strict.is_empty() {
        eprintln!(
            "note: {} strict preferences fall inside the {}-wide indeterminate band; \
             they do not resolve at smaller tolerances when no utility represents the preference",
            report.band_strict.len(),
            real(2.0 * report.tol)
        );
    }
    Ok(if report.violations.is_empty() { EXIT_OK } else { EXIT_FINDING })
}

fn choose(args: &ChooseArgs) -> Result<i32, Failure> {
    let config = &args.config;
    check_tol(config.tol)?;
    let spec = load_spec(config)?;
    let menu: Menu = parse_json(&args.menu)?;
    let oracle: BuiltinOracle = spec.build(menu.alternatives())?;
    let cv = cross_validate_choice(&oracle, &menu, config.tol)?;

    let payload = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&cv),
        Format::Csv => {
            let utilities = cv.utility.utilities.as_deref().unwrap_or_default();
            csv_payload(
                &["label", "u", "tournament_maximal", "utility_maximal"].map(String::from),
                &utilities
                    .iter()
                    .map(|l| {
                        vec![
                            l.label.clone(),
                            real(l.u),
                            cv.tournament.maximal_labels.contains(&l.label).to_string(),
                            cv.utility.maximal_labels.contains(&l.label).to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            )
        }
    };
    emit(config.out.as_deref(), &payload)?;
    if !cv.band_artifacts.is_empty() {
        eprintln!(
            "note: utility band also contains {} (not tournament-maximal)",
            cv.band_artifacts.join(", ")
        );
    }
    if cv.contained {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "tournament-maximal items outside the utility band: {}",
            cv.missing_from_band.join(", ")
        );
        Ok(EXIT_FINDING)
    }
}

#[derive(Serialize)]
struct DemoTerm {
    n: u64,
    a: Vec<f64>,
    b: Vec<f64>,
    strictly_dominates: bool,
    sup_distance_a: f64,
    sup_distance_b: f64,
    bound: f64,
}

#[derive(Serialize)]
struct DemoReport<'a> {
    alts: &'a [String],
    at_one: Vec<&'a str>,
    at_zero: Vec<&'a str>,
    interior: Vec<&'a str>,
    constant: Vec<&'a str>,
    epsilon: f64,
    terms: Vec<DemoTerm>,
}

fn demo_lemma1(args: &DemoArgs) -> Result<i32, Failure> {
    let alts = match &args.alts {
        Some(labels) => AlternativeSet::new(labels.iter().cloned())?,
        None => AlternativeSet::numbered(args.a.len())?,
    };
    let a = Raf::new(&alts, args.a.clone())?;
    let b = Raf::new(&alts, args.b.clone())?;
    let seq = lemma1_sequences(&a, &b)?;
    let mut terms = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let (an, bn) = seq.term(n)?;
        terms.push(DemoTerm {
            n,
            strictly_dominates: an.strictly_dominates(&bn)?,
            sup_distance_a: an.sup_distance(&a)?,
            sup_distance_b: bn.sup_distance(&b)?,
            bound: 1.0 / (2.0 * n as f64),
            a: an.values().to_vec(),
            b: bn.values().to_vec(),
        });
    }

    let mut summary = String::new();
    for (name, set) in [
        ("at_one", &seq.at_one),
        ("at_zero", &seq.at_zero),
        ("interior", &seq.interior),
        ("constant", &seq.constant),
    ] {
        let _ = write!(summary, "{name}={{{}}} ", seq.labels(set).join(","));
    }
    eprintln!("{summary}epsilon={}", real(seq.epsilon));

    let payload = match args.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&DemoReport {
            alts: alts.labels(),
            at_one: seq.labels(&seq.at_one),
            at_zero: seq.labels(&seq.at_zero),
            interior: seq.labels(&seq.interior),
            constant: seq.labels(&seq.constant),
            epsilon: seq.epsilon,
            terms,
        }),
        Format::Csv => {
            let mut header = vec!["n".to_owned()];
            header.extend(alts.labels().iter().map(|l| format!("a_{l}")));
            header.extend(alts.labels().iter().map(|l| format!("b_{l}")));
            header.extend(["strictly_dominates", "sup_distance_a", "sup_distance_b", "bound"].map(String::from));
            let rows: Vec<Vec<String>> = terms
                .iter()
                .map(|t| {
                    let mut row = vec![t.n.to_string()];
                    row.extend(t.a.iter().chain(&t.b).map(|&v| real(v)));
                    row.extend([
                        t.strictly_dominates.to_string(),
                        real(t.sup_distance_a),
                        real(t.sup_distance_b),
                        real(t.bound),
                    ]);
                    row
                })
                .collect();
            csv_payload(&header, &rows)
        }
    };
    emit(args.out.as_deref(), &payload)?;
    Ok(EXIT_OK)
}
