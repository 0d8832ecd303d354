//! Command-line front end: problem files in, deterministic text or JSON
//! reports out.
//!
//! Exit codes: `0` affirmative verdict, `1` negative verdict (the report
//! explains why), `2` error.

pub mod commands;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::problem::parse_problem;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CheckStandardBasis,
    Obstructions,
    Reduce,
    Trace,
    Joinable,
    Meet,
    Join,
    Compare,
    Dual,
    Pair,
    Represent,
    VerifyGroebner,
    CheckSyntactic,
    GreatestIdeal,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckStandardBasis => "check-standard-basis",
            Command::Obstructions => "obstructions",
            Command::Reduce => "reduce",
            Command::Trace => "trace",
            Command::Joinable => "joinable",
            Command::Meet => "meet",
            Command::Join => "join",
            Command::Compare => "compare",
            Command::Dual => "dual",
            Command::Pair => "pair",
            Command::Represent => "represent",
            Command::VerifyGroebner => "verify-groebner",
            Command::CheckSyntactic => "check-syntactic",
            Command::GreatestIdeal => "greatest-ideal",
        }
    }
}

fn parse_epsilon(s: &str) -> Result<u32, String> {
    s.trim()
        .strip_prefix("2^-")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| format!("expected 2^-k, got `{s}`"))
}

#[derive(Debug, Parser)]
#[command(name = "redop", version, about = "Reduction operators, confluence, standard bases and syntactic algebras")]
pub struct Cli {
    pub command: Command,
    /// Problem file.
    pub problem: Option<PathBuf>,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct Options {
    /// Emit the JSON report.
    #[arg(long)]
    pub json: bool,
    /// Seed for sampled witnesses.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of rewriting steps per trace.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// Target neighbourhood, written `2^-k`.
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: Option<u32>,
    /// Overrides the truncation degree of the problem file.
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Named series (`val` is built in).
    #[arg(long)]
    pub series: Option<String>,
    /// Binary word for `pair`, digit `d` standing for `xd`.
    #[arg(long)]
    pub word: Option<String>,
    /// Polynomial argument, replacing the `vector` parameter.
    #[arg(long)]
    pub poly: Option<String>,
}

fn check_flags(cli: &Cli) -> Result<(), String> {
    let o = &cli.options;
    let c = cli.command;
    if o.word.is_some() && c != Command::Pair {
        return Err("--word only applies to pair".into());
    }
    if o.poly.is_some() && !matches!(c, Command::Pair | Command::Reduce | Command::Trace) {
        return Err("--poly only applies to pair, reduce and trace".into());
    }
    if o.series.is_some() && !matches!(c, Command::Pair | Command::Represent | Command::CheckSyntactic) {
        return Err("--series only applies to pair, represent and check-syntactic".into());
    }
    if o.epsilon.is_some() && !matches!(c, Command::Trace | Command::Joinable) {
        return Err("--epsilon only applies to trace and joinable".into());
    }
    Ok(())
}

fn error_output(command: Option<Command>, json: bool, message: String) -> (i32, String) {
    if json {
        let mut r = Report::new(command.map_or("", Command::name), None);
        r.verdict = "error".into();
        r.exit = 2;
        r.set("error", message);
        (2, r.to_json())
    } else {
        (2, format!("error: {message}\n"))
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let json = cli.options.json;
    if let Err(m) = check_flags(&cli) {
        return error_output(Some(cli.command), json, m);
    }
    let problem = match &cli.problem {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return error_output(Some(cli.command), json, format!("{}: {e}", path.display())),
            };
            match parse_problem(&text) {
                Ok(p) => Some(p),
                Err(e) => return error_output(Some(cli.command), json, format!("{}: {e}", path.display())),
            }
        }
    };
    match commands::execute(cli.command, problem.as_ref(), &cli.options) {
        Ok(report) => {
            let out = if json { report.to_json() } else { report.to_text() };
            (report.exit, out)
        }
        Err(e) => error_output(Some(cli.command), json, e.to_string()),
    }
}
