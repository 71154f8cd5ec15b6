//! The `discourse` command line: `dissect`, `match` and `report`.
//!
//! Exit codes: 0 success, 1 novel sentence under `--policy reject`,
//! 2 unreadable input, 3 bad lexicon or snapshot, 4 unwritable output.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::inventory::{InventoryError, MatchOutcome, PatternInventory};
use crate::lexicon::{ClassSet, Lexicon, LexiconError};
use crate::pipeline::{Pipeline, PipelineError, RunOutput};
use crate::reporting::{emit_fact, export_csv, export_plotdata, SaturationReport};

#[derive(Debug, Parser)]
#[command(name = "discourse", version, about = "Rule-based discourse dissection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline over files or directories.
    Dissect(DissectArgs),
    /// Check whether a sentence's pattern is in an inventory.
    Match(MatchArgs),
    /// Rebuild report files from an inventory snapshot.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Emit {
    Units,
    Resolutions,
    Traces,
    Patterns,
    Report,
    Facts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Policy {
    #[default]
    Warn,
    Reject,
}

#[derive(Debug, clap::Args)]
pub struct DissectArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Snapshot to continue from.
    #[arg(long)]
    pub inventory: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "units,resolutions,traces,patterns,report,facts"
    )]
    pub emit: Vec<Emit>,
}

#[derive(Debug, clap::Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub inventory: PathBuf,
    #[arg(long, value_enum, default_value_t = Policy::Warn)]
    pub policy: Policy,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(required = true, num_args = 1..)]
    pub sentence: Vec<String>,
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub inventory: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Segmentation {
        path: PathBuf,
        source: crate::segmentation::SegmentationError,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("lexicon {path}: {source}")]
    Lexicon { path: PathBuf, source: LexiconError },
    #[error("cannot read snapshot {path}: {source}")]
    SnapshotMissing { path: PathBuf, source: io::Error },
    #[error("snapshot {path}: {source}")]
    Snapshot {
        path: PathBuf,
        source: InventoryError,
    },
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Segmentation { .. } | CliError::InvalidInput(_) => 2,
            CliError::Lexicon { .. }
            | CliError::SnapshotMissing { .. }
            | CliError::Snapshot { .. } => 3,
            CliError::Output { .. } => 4,
        }
    }
}

/// Resolved configuration of a `dissect` run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub inventory: Option<PathBuf>,
    pub out: PathBuf,
    pub emit: Vec<Emit>,
}

impl From<DissectArgs> for RunConfig {
    fn from(a: DissectArgs) -> Self {
        RunConfig {
            inputs: a.paths,
            lexicon: a.lexicon,
            inventory: a.inventory,
            out: a.out,
            emit: a.emit,
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Dissect(a) => cmd_dissect(&a.into(), stdout),
        Command::Match(a) => cmd_match(&a, stdout),
        Command::Report(a) => cmd_report(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, CliError> {
    match path {
        None => Ok(Lexicon::default()),
        Some(p) => Lexicon::from_path(p).map_err(|source| CliError::Lexicon {
            path: p.to_path_buf(),
            source,
        }),
    }
}

fn load_inventory(path: &Path) -> Result<PatternInventory, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::SnapshotMissing {
        path: path.to_path_buf(),
        source,
    })?;
    PatternInventory::restore(&text).map_err(|source| CliError::Snapshot {
        path: path.to_path_buf(),
        source,
    })
}

/// Expands directories into their files, sorted by name.
fn input_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for path in paths {
        let input_err = |source| CliError::Input {
            path: path.clone(),
            source,
        };
        if fs::metadata(path).map_err(input_err)?.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .map_err(input_err)?
                .filter_map(Result::ok)
                .map(|e| e.path())
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Output { path, source })
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TokenWire<'a> {
    surface: &'a str,
    classes: ClassSet,
}

#[derive(Serialize)]
struct UnitWire<'a> {
    id: usize,
    fragment_id: usize,
    text: &'a str,
    resolved_text: &'a str,
    kind: &'a str,
    verbless: bool,
    span: (usize, usize),
    tokens: Vec<TokenWire<'a>>,
}

fn units_json(runs: &[RunOutput]) -> String {
    let units: Vec<UnitWire> = runs
        .iter()
        .flat_map(|r| r.units.iter().zip(&r.resolved_units))
        .map(|(u, resolved)| UnitWire {
            id: u.id,
            fragment_id: u.fragment_id,
            text: &u.text,
            resolved_text: &resolved.text,
            kind: u.kind.as_str(),
            verbless: u.verbless,
            span: u.span,
            tokens: u
                .tokens
                .iter()
                .map(|t| TokenWire {
                    surface: &t.surface,
                    classes: t.classes,
                })
                .collect(),
        })
        .collect();
    to_json(&units)
}

fn patterns_txt(inv: &PatternInventory) -> String {
    let mut s = String::from("pattern\toccurrences\tfirst_seen_fragment\n");
    for r in inv.records() {
        s.push_str(&format!(
            "{}\t{}\t{}\n",
            r.pattern, r.occurrences, r.first_seen_fragment
        ));
    }
    s
}

fn write_report(dir: &Path, inv: &PatternInventory) -> Result<(), CliError> {
    let report = SaturationReport::from_inventory(inv);
    write_file(dir, "report.csv", &export_csv(&report))?;
    write_file(dir, "plot.json", &to_json(&export_plotdata(&report)))
}

pub fn summary_line(inv: &PatternInventory) -> String {
    let c = inv.counters();
    format!(
        "{} fragments, {} primitives, {} distinct patterns, {} resolutions",
        c.fragments,
        c.primitives,
        inv.len(),
        c.resolutions
    )
}

pub fn cmd_dissect(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let lexicon = load_lexicon(config.lexicon.as_deref())?;
    let inventory = match &config.inventory {
        Some(p) => load_inventory(p)?,
        None => PatternInventory::new(),
    };
    let mut texts = Vec::new();
    for path in input_files(&config.inputs)? {
        let text = fs::read_to_string(&path).map_err(|source| CliError::Input {
            path: path.clone(),
            source,
        })?;
        texts.push((path, text));
    }

    let mut pipeline = Pipeline::with_inventory(&lexicon, inventory);
    let mut runs = Vec::new();
    for (path, text) in &texts {
        let out = pipeline.process(text).map_err(|e| match e {
            PipelineError::Segmentation(source) => CliError::Segmentation {
                path: path.clone(),
                source,
            },
            PipelineError::Inventory(source) => CliError::Snapshot {
                path: config.inventory.clone().unwrap_or_default(),
                source,
            },
        })?;
        runs.push(out);
    }
    let inv = pipeline.into_inventory();

    fs::create_dir_all(&config.out).map_err(|source| CliError::Output {
        path: config.out.clone(),
        source,
    })?;
    let dir = config.out.as_path();
    let emits = |e: Emit| config.emit.contains(&e);
    if emits(Emit::Units) {
        write_file(dir, "units.json", &units_json(&runs))?;
    }
    if emits(Emit::Resolutions) {
        let records: Vec<_> = runs.iter().flat_map(|r| &r.records).collect();
        write_file(dir, "resolutions.json", &to_json(&records))?;
    }
    if emits(Emit::Traces) {
        let traces: Vec<_> = runs
            .iter()
            .flat_map(|r| &r.traces)
            .map(|t| t.to_json())
            .collect();
        write_file(dir, "traces.json", &to_json(&traces))?;
    }
    if emits(Emit::Patterns) {
        write_file(dir, "patterns.txt", &patterns_txt(&inv))?;
    }
    if emits(Emit::Report) {
        write_report(dir, &inv)?;
    }
    if emits(Emit::Facts) {
        let mut facts = String::new();
        for p in runs
            .iter()
            .flat_map(|r| &r.traces)
            .flat_map(|t| &t.primitives)
        {
            if let Ok(fact) = emit_fact(p, &lexicon) {
                facts.push_str(&fact.rendered);
                facts.push('\n');
            }
        }
        write_file(dir, "facts.txt", &facts)?;
    }
    write_file(dir, "inventory.json", &inv.to_json_string())?;

    let _ = writeln!(stdout, "{}", summary_line(&inv));
    Ok(0)
}

pub fn cmd_match(args: &MatchArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let lexicon = load_lexicon(args.lexicon.as_deref())?;
    let inv = load_inventory(&args.inventory)?;
    let sentence = args.sentence.join(" ");
    let outcome = inv
        .match_sentence(&sentence, &lexicon)
        .map_err(|e| CliError::InvalidInput(e.to_string()))?;
    match outcome {
        MatchOutcome::Known(p) => {
            let _ = writeln!(stdout, "known\t{p}");
            Ok(0)
        }
        MatchOutcome::Novel(p) => {
            let _ = writeln!(stdout, "novel\t{p}");
            Ok(if args.policy == Policy::Reject { 1 } else { 0 })
        }
    }
}

pub fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inv = load_inventory(&args.inventory)?;
    fs::create_dir_all(&args.out).map_err(|source| CliError::Output {
        path: args.out.clone(),
        source,
    })?;
    write_report(&args.out, &inv)?;
    let _ = writeln!(stdout, "{}", summary_line(&inv));
    Ok(0)
}
