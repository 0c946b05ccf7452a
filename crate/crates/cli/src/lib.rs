//! The `pmon` command line: synthesize, classify and run partial monitors.
//!
//! Exit codes: 0 ⊤, 1 ⊥, 2 ?, 3 χ (for `run`), 64 usage, 65 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use pmon_core::prelude::*;
use thiserror::Error;

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

/// Exit status reporting a final verdict.
pub fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Top => 0,
        Verdict::Bot => 1,
        Verdict::Unknown => 2,
        Verdict::GiveUp => 3,
    }
}

#[derive(Debug, Parser)]
#[command(name = "pmon", version, about = "Partial runtime-verification monitors for LTL")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a partial monitor and write it as PMF.
    Synth(SynthArgs),
    /// Print the monitorability report of a formula as JSON.
    Classify(PropertyArgs),
    /// Feed a trace to a monitor and print the verdict after each event.
    Run(RunArgs),
    /// Evaluate a formula on the lasso word stem·loop^ω.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct PropertyArgs {
    /// LTL formula.
    #[arg(short, long)]
    pub formula: String,
    /// Comma separated event names.
    #[arg(short, long, required_unless_present = "infer_alphabet")]
    pub alphabet: Option<String>,
    /// Use the formula's atoms plus a catch-all event `_other`.
    #[arg(long, conflicts_with = "alphabet")]
    pub infer_alphabet: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub property: PropertyArgs,
    /// PMF output file (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write a Graphviz rendering.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Keep the unminimized product machine.
    #[arg(long)]
    pub no_minimize: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// PMF monitor to load.
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    pub monitor: Option<PathBuf>,
    /// Synthesize the monitor from this formula instead.
    #[arg(short, long)]
    pub formula: Option<String>,
    #[arg(short, long, conflicts_with = "monitor", required_unless_present_any = ["infer_alphabet", "monitor"])]
    pub alphabet: Option<String>,
    #[arg(long, conflicts_with_all = ["alphabet", "monitor"])]
    pub infer_alphabet: bool,
    /// Trace file, `-` for stdin.
    #[arg(long, default_value = "-")]
    pub trace: PathBuf,
    /// Stop at the first ⊤, ⊥ or χ verdict.
    #[arg(long)]
    pub stop_early: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(short, long)]
    pub formula: String,
    /// Comma separated events read once.
    #[arg(long, default_value = "")]
    pub stem: String,
    /// Comma separated events repeated forever.
    #[arg(long = "loop")]
    pub cycle: String,
    /// Alphabet; inferred from the formula and the word when omitted.
    #[arg(short, long)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Data(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> u8 {
        EXIT_DATA
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path, stdin: &mut dyn Read) -> CliResult<String> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Parses the formula against `-a`, or infers the alphabet.
pub fn load_property(formula: &str, alphabet: Option<&str>) -> Result<(Formula, Alphabet)> {
    match alphabet {
        Some(list) => {
            let sigma = Alphabet::parse_list(list)?;
            Ok((parse_formula(formula, &sigma)?, sigma))
        }
        None => parse_formula_infer(formula),
    }
}

fn partial_monitor(formula: &str, alphabet: Option<&str>, minimize: bool) -> Result<PartialMonitor> {
    let (phi, sigma) = load_property(formula, alphabet)?;
    Ok(partialize(&synthesize_monitor(&phi, &sigma, minimize)?))
}

pub fn cmd_synth(args: &SynthArgs, out: &mut dyn Write) -> CliResult<u8> {
    let p = &args.property;
    let m = partial_monitor(&p.formula, p.alphabet.as_deref(), !args.no_minimize)?;
    let text = emit_monitor(&m);
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
    }
    if let Some(path) = &args.dot {
        write_file(path, &emit_dot(&m))?;
    }
    Ok(0)
}

pub fn cmd_classify(args: &PropertyArgs, out: &mut dyn Write) -> CliResult<u8> {
    let (phi, sigma) = load_property(&args.formula, args.alphabet.as_deref())?;
    let m = partialize(&synthesize_monitor(&phi, &sigma, true)?);
    writeln!(out, "{}", report_json(&classify(&m), &sigma)).map_err(stdout_err)?;
    Ok(0)
}

/// Per-event verdict lines followed by `FINAL <verdict>`; returns the
/// output text and the final verdict.
pub fn render_run(m: &PartialMonitor, trace: &FiniteTrace, stop_early: bool) -> Result<(String, Verdict)> {
    let steps = run_trace(m, trace, stop_early)?;
    let mut text = String::new();
    for &(i, v) in &steps {
        let name = m.alphabet().name(trace.events[i - 1]);
        text.push_str(&format!("{i} {name} {v}\n"));
    }
    let last = steps.last().map_or(m.output(m.initial()), |&(_, v)| v);
    text.push_str(&format!("FINAL {last}\n"));
    Ok((text, last))
}

pub fn cmd_run(args: &RunArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<u8> {
    let m = match (&args.monitor, &args.formula) {
        // Relabeling is idempotent, so a machine that is already partial is unchanged.
        (Some(path), _) => partialize(&parse_monitor(&read_input(path, stdin)?)?),
        (None, Some(formula)) => partial_monitor(formula, args.alphabet.as_deref(), true)?,
        (None, None) => unreachable!("clap requires --monitor or --formula"),
    };
    let trace = parse_trace(&read_input(&args.trace, stdin)?, m.alphabet())?;
    let (text, last) = render_run(&m, &trace, args.stop_early)?;
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(verdict_code(last))
}

fn split_list(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> CliResult<u8> {
    let stem = split_list(&args.stem);
    let cycle = split_list(&args.cycle);
    let (phi, sigma) = match &args.alphabet {
        Some(list) => load_property(&args.formula, Some(list))?,
        None => {
            let (_, inferred) = parse_formula_infer(&args.formula)?;
            let mut names: Vec<String> = inferred.names().to_vec();
            for e in stem.iter().chain(&cycle) {
                if !names.iter().any(|n| n == e) {
                    names.push(e.to_string());
                }
            }
            let sigma = Alphabet::new(names)?;
            (parse_formula(&args.formula, &sigma)?, sigma)
        }
    };
    let w = LassoWord::new(sigma.resolve(stem)?, sigma.resolve(cycle)?)?;
    let answer = if lasso_eval(&phi, &w) { "SAT" } else { "UNSAT" };
    writeln!(out, "{answer}").map_err(stdout_err)?;
    Ok(0)
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<u8> {
    match &cli.command {
        Command::Synth(a) => cmd_synth(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Run(a) => cmd_run(a, stdin, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    }
}

/// Full command-line behaviour over explicit streams; returns the exit code.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "pmon: {e}");
            e.code()
        }
    }
}
