//! The `smon` command line.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use special_monoid::cwords::{check_properties, CWordError, Distinguished};
use special_monoid::decision::{Decider, DecisionError};
use special_monoid::presentation::{b_words, derived_group, format_indexed, parse_group_relators, ParseError};
use special_monoid::smallcancel::{dehn_reduce, decide_identity, k_alpha_check, SmallCancelError};
use special_monoid::words::{symmetrize, GroupWord, SymmetrizedSet, WordError};
use special_monoid::{distinguish, make_tuple, parse_presentation, Budget, SpecialPresentation, Verdict, Word};

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INPUT: u8 = 65;
pub const EXIT_INCONCLUSIVE: u8 = 69;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Debug, Parser)]
#[command(name = "smon", version, about = "Decision procedures for special monoids and small-cancellation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a single JSON report object.
    #[arg(long, global = true)]
    pub json: bool,
    /// Longest word explored by bounded group searches.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_len: usize,
    /// Largest number of words a bounded group search may hold.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_states: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Show B-words, the derived group, c-word families and the distinguished tuple.
    Analyze { file: PathBuf },
    /// Are X and Y equal in the monoid?
    Wp { file: PathBuf, x: String, y: String },
    /// Is X left divisible by Y (X = YZ)?
    Divl { file: PathBuf, x: String, y: String },
    /// Is X right divisible by Y (X = ZY)?
    Divr { file: PathBuf, x: String, y: String },
    /// Is X two-sided invertible?
    Inv { file: PathBuf, x: String },
    /// Presentation of the group of units.
    Maxgroup { file: PathBuf },
    /// Check the symmetrized relators of a group file against K(alpha).
    Kcheck {
        file: PathBuf,
        #[arg(long, default_value = "2/11")]
        alpha: Ratio<u64>,
    },
    /// Apply the Dehn rewriting rules to W.
    Dehn { file: PathBuf, w: String },
    /// Decide whether W = 1 in a K(2/11) group.
    Gwp {
        file: PathBuf,
        w: String,
        /// Largest certificate bound to search up to.
        #[arg(long)]
        budget: Option<u64>,
        /// Answer `no` on non-trivial fixpoints when the relators are C'(1/6).
        #[arg(long)]
        greendlinger: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Wp { .. } => "wp",
            Command::Divl { .. } => "divl",
            Command::Divr { .. } => "divr",
            Command::Inv { .. } => "inv",
            Command::Maxgroup { .. } => "maxgroup",
            Command::Kcheck { .. } => "kcheck",
            Command::Dehn { .. } => "dehn",
            Command::Gwp { .. } => "gwp",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid word: {0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Tuple(#[from] CWordError),
    #[error("{0}")]
    Decision(#[from] DecisionError),
    #[error("{0}")]
    SmallCancel(#[from] SmallCancelError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Parse(_) | CliError::Word(_) | CliError::SmallCancel(_) => EXIT_INPUT,
            CliError::Tuple(CWordError::OracleInconclusive(_)) | CliError::Decision(DecisionError::OracleInconclusive(_)) => {
                EXIT_INCONCLUSIVE
            }
            CliError::Tuple(_) | CliError::Decision(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Option<String>,
    pub details: Value,
    #[serde(skip)]
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Report,
}

pub fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

impl Outcome {
    fn verdict(command: &str, v: Verdict, text: String, details: Value) -> Self {
        Self {
            code: verdict_code(v),
            report: Report { command: command.into(), verdict: Some(v.to_string()), details, text },
        }
    }

    fn success(command: &str, text: String, details: Value) -> Self {
        Self { code: 0, report: Report { command: command.into(), verdict: None, details, text } }
    }

    pub fn error(command: &str, e: &CliError) -> Self {
        Self {
            code: e.exit_code(),
            report: Report {
                command: command.into(),
                verdict: None,
                details: json!({ "error": e.to_string() }),
                text: format!("error: {e}"),
            },
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_monoid(path: &Path) -> Result<SpecialPresentation, CliError> {
    Ok(parse_presentation(&read(path)?)?)
}

fn load_group(path: &Path) -> Result<(special_monoid::Alphabet, SymmetrizedSet), CliError> {
    let (alphabet, relators) = parse_group_relators(&read(path)?)?;
    let m = symmetrize(relators.iter())?;
    Ok((alphabet, m))
}

fn distinguished(p: &SpecialPresentation, budget: Budget) -> Result<Distinguished, CliError> {
    Ok(distinguish(&make_tuple(p, budget)?)?)
}

fn words(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::to_string).collect()
}

pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    execute(cli).unwrap_or_else(|e| Outcome::error(name, &e))
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let mut budget = Budget { max_len: cli.max_len, max_states: cli.max_states, ..Budget::default() };
    let name = cli.command.name();
    match &cli.command {
        Command::Analyze { file } => analyze(&load_monoid(file)?, budget),
        Command::Wp { file, x, y } | Command::Divl { file, x, y } | Command::Divr { file, x, y } => {
            let p = load_monoid(file)?;
            let (x, y) = (p.word(x)?, p.word(y)?);
            let d = distinguished(&p, budget)?;
            let dec = Decider::new(&d);
            let (holds, yes, no) = match &cli.command {
                Command::Wp { .. } => (dec.words_equal(&x, &y)?, "equal", "not equal"),
                Command::Divl { .. } => (dec.divides_left(&x, &y)?, "left divisible", "not left divisible"),
                _ => (dec.divides_right(&x, &y)?, "right divisible", "not right divisible"),
            };
            let v = if holds { Verdict::Yes } else { Verdict::No };
            let text = format!("{x} and {y}: {}", if holds { yes } else { no });
            Ok(Outcome::verdict(name, v, text, json!({ "x": x.to_string(), "y": y.to_string() })))
        }
        Command::Inv { file, x } => {
            let p = load_monoid(file)?;
            let x = p.word(x)?;
            let d = distinguished(&p, budget)?;
            let dec = Decider::new(&d);
            if dec.is_invertible(&x)? {
                let mu = dec.mu(&x)?;
                let text = format!("{x}: invertible, image {} in the group of units", format_indexed(&mu, "δ"));
                Ok(Outcome::verdict(name, Verdict::Yes, text, json!({ "x": x.to_string(), "image": mu.letters() })))
            } else {
                let text = format!("{x}: not invertible");
                Ok(Outcome::verdict(name, Verdict::No, text, json!({ "x": x.to_string() })))
            }
        }
        Command::Maxgroup { file } => {
            let d = distinguished(&load_monoid(file)?, budget)?;
            let g = d.tuple.gamma();
            let details = json!({
                "generators": g.generators(),
                "relations": g.relations().iter().map(|r| r.letters().to_vec()).collect::<Vec<_>>(),
                "cwords": words(d.tuple.cwords().items()),
            });
            Ok(Outcome::success(name, format!("group of units: {g}"), details))
        }
        Command::Kcheck { file, alpha } => {
            if *alpha.numer() == 0 || alpha.numer() > alpha.denom() {
                return Err(CliError::Usage(format!("alpha must lie in (0, 1], got {alpha}")));
            }
            let (_, m) = load_group(file)?;
            let report = k_alpha_check(&m, *alpha);
            let details = json!({
                "alpha": alpha.to_string(),
                "relators": m.len(),
                "passed": report.passed,
                "worst": report.worst.as_ref().map(|w| json!({
                    "left": w.left.to_string(),
                    "right": w.right.to_string(),
                    "cancelled": w.cancelled,
                    "length": w.left.len(),
                })),
            });
            let v = if report.passed { Verdict::Yes } else { Verdict::No };
            Ok(Outcome::verdict(name, v, report.to_string(), details))
        }
        Command::Dehn { file, w } => {
            let (alphabet, m) = load_group(file)?;
            let w = GroupWord::parse(w, &alphabet)?;
            let state = dehn_reduce(&w, &m);
            let log: Vec<String> = state.log.iter().map(ToString::to_string).collect();
            let mut text = format!("fixpoint: {}", state.word);
            for step in &log {
                text.push_str(&format!("\n  {step}"));
            }
            Ok(Outcome::success(name, text, json!({ "fixpoint": state.word.to_string(), "log": log })))
        }
        Command::Gwp { file, w, budget: certificate, greendlinger } => {
            let (alphabet, m) = load_group(file)?;
            let w = GroupWord::parse(w, &alphabet)?;
            if let Some(c) = certificate {
                budget.certificate = *c;
            }
            budget.greendlinger = *greendlinger;
            let d = decide_identity(&w, &m, &budget)?;
            let answer = match d.verdict {
                Verdict::Yes => "trivial",
                Verdict::No => "not trivial",
                Verdict::Unknown => "undecided within budget",
            };
            let text = format!("{w}: {answer} (method {:?}, fixpoint {})", d.method, d.dehn.word);
            let details = json!({
                "word": w.to_string(),
                "method": format!("{:?}", d.method).to_lowercase(),
                "fixpoint": d.dehn.word.to_string(),
                "bound": d.bound.map(|b| b.to_string()),
            });
            Ok(Outcome::verdict(name, d.verdict, text, details))
        }
    }
}

fn analyze(p: &SpecialPresentation, budget: Budget) -> Result<Outcome, CliError> {
    let bs = b_words(p);
    let gamma = derived_group(p, &bs);
    let tuple = make_tuple(p, budget)?;
    let d = distinguish(&tuple)?;
    let props = check_properties(&d.tuple, &d.families);
    let families: Vec<Vec<String>> = d.families.families().iter().map(|f| words(f)).collect();
    let moves: Vec<String> = d.moves.iter().map(|m| format!("{} {} -> {}", m.kind, m.before, m.after)).collect();

    let mut text = String::new();
    text.push_str(&format!("presentation: {p}\n"));
    text.push_str(&format!("B-words: {}\n", words(bs.words().items()).join(" ")));
    text.push_str(&format!("derived group: {gamma}\n"));
    text.push_str(&format!("tuple index: {}\n", tuple.index()));
    for m in &moves {
        text.push_str(&format!("move: {m}\n"));
    }
    text.push_str(&format!("distinguished relations: {}\n", words(d.tuple.presentation().relations()).join(" ")));
    text.push_str(&format!("C-words: {}\n", words(d.tuple.cwords().items()).join(" ")));
    text.push_str(&format!("group of units: {}\n", d.tuple.gamma()));
    for (i, f) in families.iter().enumerate() {
        text.push_str(&format!("family {}: {}\n", i + 1, f.join(" ")));
    }
    text.push_str(&format!(
        "properties: length-preserving {}, disjoint {}, overlap-free {}\n",
        props.length_preserving, props.disjoint, props.overlap_free
    ));
    text.push_str(&format!("index: {}", d.tuple.index()));

    let details = json!({
        "b_words": words(bs.words().items()),
        "derived_group": gamma.to_string(),
        "index": [tuple.index().alpha, tuple.index().beta],
        "moves": moves,
        "relations": words(d.tuple.presentation().relations()),
        "cwords": words(d.tuple.cwords().items()),
        "group_of_units": d.tuple.gamma().to_string(),
        "families": families,
        "properties": {
            "length_preserving": props.length_preserving,
            "disjoint": props.disjoint,
            "overlap_free": props.overlap_free,
        },
        "distinguished_index": [d.tuple.index().alpha, d.tuple.index().beta],
    });
    Ok(Outcome::success("analyze", text, details))
}
