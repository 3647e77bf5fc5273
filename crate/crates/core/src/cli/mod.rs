//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so tests can drive it directly.

mod demos;
pub mod fixture;
mod inputs;
mod verbs;

pub use demos::DEMOS;
pub use inputs::{CategoryInput, FunctorFile, MonotoneMapFile, Reference};
pub use verbs::load_functor;

use crate::builders::{BuildError, Limits};
use crate::category::{CategoryError, DEFAULT_BUDGET};
use crate::functor::FunctorError;
use crate::galois::GaloisError;
use crate::logic::LogicError;
use crate::nno::NnoError;
use crate::universal::UniversalError;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use std::ffi::OsString;
use std::path::PathBuf;
use thiserror::Error;

/// Seed used by randomized commands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("unknown demo `{0}`; available: {list}", list = DEMOS.join(", "))]
    UnknownDemo(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Universal(#[from] UniversalError),
    #[error(transparent)]
    Nno(#[from] NnoError),
}

#[derive(Debug, Parser)]
#[command(
    name = "fincat",
    version,
    about = "Exhaustive checks for finite categories, adjunctions and categorical logic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest number of arrows or tuples any enumeration may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Largest universe or builder input set.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms.
    Validate { file: PathBuf },
    /// Monic, epic and invertible arrows.
    Predicates {
        file: PathBuf,
        /// Only this arrow.
        #[arg(long)]
        arrow: Option<String>,
    },
    /// All products of two objects, with the isomorphisms between them.
    Products {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        pair: Vec<String>,
    },
    /// Terminal objects and their connecting isomorphisms.
    Terminal { file: PathBuf },
    /// Check a functor file.
    FunctorCheck { file: PathBuf },
    /// Adjoints of a monotone map.
    Adjoints { file: PathBuf },
    /// Weakest precondition `[R]T` along a frame's accessibility relation.
    Wp {
        frame: PathBuf,
        /// Postcondition as a modal formula.
        #[arg(long)]
        post: String,
    },
    /// Worlds satisfying a modal formula.
    ModalEval { frame: PathBuf, formula: String },
    /// Satisfying assignments of a first-order formula.
    FoEval {
        structure: PathBuf,
        formula: String,
        /// Context size: free variables are among v1..vN.
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Primitive recursion trace and natural numbers object search.
    NnoDemo {
        /// Recursion data file; defaults to Z3 with c = 0 and f = +1.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Build a category and dump it in category-file form.
    Builders { file: PathBuf },
    /// Run a packaged walkthrough.
    Demo { name: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// Result of one command. `fail` always carries witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub verb: String,
    pub status: Status,
    pub payload: Value,
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub(crate) fn new(
        verb: &str,
        payload: Value,
        lines: Vec<String>,
        witnesses: Vec<String>,
    ) -> Self {
        let status = if witnesses.is_empty() {
            Status::Ok
        } else {
            Status::Fail
        };
        Report {
            verb: verb.into(),
            status,
            payload,
            witnesses,
            lines,
        }
    }

    fn error(verb: &str, err: &CliError) -> Self {
        Report {
            verb: verb.into(),
            status: Status::Error,
            payload: Value::Null,
            witnesses: vec![err.to_string()],
            lines: Vec::new(),
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            return s;
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        let mut out = format!("{}: {status}\n", self.verb);
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.witnesses {
            out.push_str("  witness: ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }
}

/// Captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Cli {
    pub fn limits(&self) -> Limits {
        Limits {
            cap: self.cap,
            budget: self.budget,
        }
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Predicates { .. } => "predicates",
        Command::Products { .. } => "products",
        Command::Terminal { .. } => "terminal",
        Command::FunctorCheck { .. } => "functor-check",
        Command::Adjoints { .. } => "adjoints",
        Command::Wp { .. } => "wp",
        Command::ModalEval { .. } => "modal-eval",
        Command::FoEval { .. } => "fo-eval",
        Command::NnoDemo { .. } => "nno-demo",
        Command::Builders { .. } => "builders",
        Command::Demo { .. } => "demo",
    }
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let limits = cli.limits();
    match &cli.command {
        Command::Validate { file } => verbs::validate(file, &limits),
        Command::Predicates { file, arrow } => verbs::predicates(file, arrow.as_deref(), &limits),
        Command::Products { file, pair } => verbs::products(file, &pair[0], &pair[1], &limits),
        Command::Terminal { file } => verbs::terminal(file, &limits),
        Command::FunctorCheck { file } => verbs::functor_check(file, &limits),
        Command::Adjoints { file } => verbs::adjoints(file),
        Command::Wp { frame, post } => verbs::wp(frame, post, &limits),
        Command::ModalEval { frame, formula } => verbs::modal_eval(frame, formula),
        Command::FoEval {
            structure,
            formula,
            n,
        } => verbs::fo_eval(structure, formula, *n, &limits),
        Command::NnoDemo { file, n } => verbs::nno_demo(file.as_deref(), *n),
        Command::Builders { file } => verbs::builders(file, &limits),
        Command::Demo { name } => demos::run(name, cli.seed),
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let verb = verb_name(&cli.command);
    match execute(&cli) {
        Ok(report) => Outcome {
            stdout: report.render(cli.json),
            stderr: String::new(),
            code: report.status.exit_code(),
        },
        Err(err) if cli.json => Outcome {
            stdout: Report::error(verb, &err).render(true),
            stderr: String::new(),
            code: 2,
        },
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("{verb}: error: {err}\n"),
            code: 2,
        },
    }
}
