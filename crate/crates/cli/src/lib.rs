//! The `qmc` command line: check, dist, run, translate, render, selftest.
//!
//! Exit status is 0 on success, 1 when a proof or circuit fails validation,
//! and 2 for usage errors, unreadable files and parse errors.

mod commands;
pub mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{cmd_check, cmd_dist, cmd_render, cmd_run, cmd_translate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Everything a command produced. `main` prints the streams and exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    pub fn fail(code: i32, stdout: String, message: impl std::fmt::Display) -> Self {
        Output { code, stdout, stderr: format!("error: {message}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qmc", version, about = "Check, build and render single-circuit quantum proofs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Proof,
    Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every inference of a proof script.
    Check { path: PathBuf },
    /// Print the outcome distribution of a circuit or proof.
    Dist { path: PathBuf },
    /// Sample one measurement outcome and print the completed proof.
    Run {
        path: PathBuf,
        #[arg(long, env = "QMC_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Convert a circuit to proof scripts or a proof script to a circuit.
    Translate {
        path: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// One proof per outcome (the default for measured circuits).
        #[arg(long, conflicts_with = "seed")]
        enumerate: bool,
        /// One proof with a sampled outcome.
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write; defaults to the input's directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Render a proof script as an indented tree or as LaTeX.
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Unitarity checks, golden proofs and a differential sweep.
    Selftest {
        /// Test hook: replace the named gate's matrix with a broken one.
        #[arg(long, hide = true)]
        corrupt_gate: Option<String>,
    },
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            };
        }
    };
    match cli.command {
        Command::Check { path } => cmd_check(&path),
        Command::Dist { path } => cmd_dist(&path),
        Command::Run { path, seed } => cmd_run(&path, seed),
        Command::Translate { path, to, enumerate: _, seed, out_dir } => {
            cmd_translate(&path, to, seed, out_dir.as_deref())
        }
        Command::Render { path, format } => cmd_render(&path, format),
        Command::Selftest { corrupt_gate } => selftest::cmd_selftest(corrupt_gate.as_deref()),
    }
}
