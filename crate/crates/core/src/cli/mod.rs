//! The command-line surface: parse a document, run one kernel operation,
//! print a sorted-key JSON report (or DOT) and return the exit status.
//!
//! Exit status: 0 every check passed, 1 a check failed, 2 the arguments or
//! the document were rejected, 3 an enumeration guard tripped.

mod commands;
pub mod doc;
pub mod dot;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, DEFAULT_CAP};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "multicat", version, about = "Check generalized multicategories over cartesian monads on finite sets")]
pub struct Cli {
    /// Cap on the size of any set a command lists in its report.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Input {
    /// Read the document from this file instead of stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Composition,
    Pullback,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Export {
    Graph,
    Free,
    Opetopes,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monad laws and cartesianness of a built-in monad.
    CheckMonad {
        #[arg(long)]
        name: String,
        /// Exception set, as a JSON list.
        #[arg(long)]
        errors: Option<String>,
        /// Writer monoid table, as a JSON list of rows.
        #[arg(long)]
        table: Option<String>,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Size of the base set `Z`; squares are taken at `Z -> 1`.
        #[arg(long, default_value_t = 2)]
        base: usize,
    },
    /// Typing, unit and associativity axioms of a multicategory.
    CheckMulticat(Input),
    /// A map `{source, target, map}` of multicategories.
    CheckMap(Input),
    /// An algebra `{multicategory, algebra}`.
    CheckAlgebra(Input),
    /// The composite of `{first, second}`, first applied first.
    ComposeSpans(Input),
    /// Free arrows on a graph up to a depth.
    Free {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        arity: Option<usize>,
        /// Also build the fragment and check its axioms.
        #[arg(long)]
        check: bool,
    },
    /// Opetopes of a dimension up to a size.
    Opetopes {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        size: usize,
    },
    /// Every algebra with a carrier of at most the given size.
    Algebras {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        max_carrier: usize,
    },
    /// The endomorphism operad of a set; with `--input`, compare its maps
    /// from an operad with that operad's algebras.
    Endo {
        #[arg(long)]
        carrier: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The multicategory of elements of an algebra `{multicategory, algebra}`.
    Slice(Input),
    /// Check `{transformation}` and transport `{multicategory}` along it.
    Transport {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Composition)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// The free structured category on a multicategory.
    Structured {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        bound: Option<usize>,
        /// Count arrows between the objects of these sizes.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        hom: Option<Vec<usize>>,
        /// Check the structured-category laws up to this size.
        #[arg(long)]
        check: Option<usize>,
    },
    /// Rebuild a multicategory from its monad data.
    Recover(Input),
    /// Emit a graph, free arrows or opetopes.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Export::Graph)]
        what: Export,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
}

/// What a command prints, and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub(crate) enum Output {
    Report(Value, bool),
    Text(String),
}

pub(crate) struct Ctx<'a> {
    pub cap: usize,
    pub stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    pub fn document(&mut self, path: &Option<PathBuf>) -> Result<Value, Error> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?,
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
                s
            }
        };
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("not JSON: {e}")))
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return Outcome { stdout: e.to_string(), code };
        }
    };
    let name = command_name(&cli.command);
    let mut ctx = Ctx { cap: cli.cap, stdin };
    match commands::dispatch(&cli.command, &mut ctx) {
        Ok(Output::Text(t)) => Outcome { stdout: t, code: EXIT_PASS },
        Ok(Output::Report(mut v, passed)) => {
            v["command"] = json!(name);
            v["passed"] = json!(passed);
            v["config"]["cap"] = json!(cli.cap);
            v["config"]["kernel_cap"] = json!(DEFAULT_CAP);
            Outcome { stdout: render(&v), code: if passed { EXIT_PASS } else { EXIT_FAIL } }
        }
        Err(e) => {
            let (kind, code) = match e {
                Error::Explosion { .. } => ("guard", EXIT_GUARD),
                _ => ("input", EXIT_INPUT),
            };
            let v = json!({
                "command": name,
                "error": { "kind": kind, "message": e.to_string() },
                "config": { "cap": cli.cap, "kernel_cap": DEFAULT_CAP },
            });
            Outcome { stdout: render(&v), code }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckMonad { .. } => "check-monad",
        Command::CheckMulticat(_) => "check-multicat",
        Command::CheckMap(_) => "check-map",
        Command::CheckAlgebra(_) => "check-algebra",
        Command::ComposeSpans(_) => "compose-spans",
        Command::Free { .. } => "free",
        Command::Opetopes { .. } => "opetopes",
        Command::Algebras { .. } => "algebras",
        Command::Endo { .. } => "endo",
        Command::Slice(_) => "slice",
        Command::Transport { .. } => "transport",
        Command::Structured { .. } => "structured",
        Command::Recover(_) => "recover",
        Command::Export { .. } => "export",
    }
}
