//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration error or failed identity,
//! 2 syntax or type error, 3 math error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::check::{run_suites, Bounds, CheckOptions, Ops, Suite};
use crate::config::load_config;
use crate::dsl::{eval_str, print_value, Environment};
use crate::error::{Error, ErrorCategory};
use crate::grassmann::Chart;

#[derive(Parser, Debug)]
#[command(name = "supercalc", version, about = "Exact calculus of superfunctions, supervector fields and superforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one expression and print its canonical form.
    Eval {
        #[arg(long)]
        config: PathBuf,
        expression: String,
    },
    /// Verify identities on seeded random inputs.
    Check {
        /// Chart configuration; defaults to n = 2, m = 2 with no declarations.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Total degree of random polynomials.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Random integer coefficients lie in -N..=N.
        #[arg(long)]
        max_coeff: Option<i64>,
        /// Largest power of one dc in random forms.
        #[arg(long)]
        max_dc: Option<usize>,
        /// Largest degree of random forms; defaults to n + 2.
        #[arg(long)]
        max_form_degree: Option<usize>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e.category() {
        ErrorCategory::Config => 1,
        ErrorCategory::Input => 2,
        ErrorCategory::Math => 3,
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, out, err, Ops::default())
}

/// Like [`run`], with the operations used by `check` replaced.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, ops: Ops) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, out, ops) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, ops: Ops) -> Result<i32, Error> {
    match command {
        Command::Eval { config, expression } => {
            let env = load_config(&config)?;
            let value = eval_str(&expression, &env)?;
            let _ = writeln!(out, "{}", print_value(&value, &env.chart));
            Ok(0)
        }
        Command::Check {
            config,
            suite,
            seed,
            cases,
            max_degree,
            max_coeff,
            max_dc,
            max_form_degree,
        } => {
            let env = match config {
                Some(path) => load_config(&path)?,
                None => Environment::new(Chart::new(2, 2)?),
            };
            let suites = Suite::parse(&suite).ok_or_else(|| {
                Error::TypeMismatch(format!("unknown suite {suite:?}"))
            })?;
            let mut bounds = Bounds::for_chart(env.chart.n());
            bounds.max_degree = max_degree.unwrap_or(bounds.max_degree);
            bounds.max_coeff = max_coeff.unwrap_or(bounds.max_coeff);
            bounds.max_dc = max_dc.unwrap_or(bounds.max_dc);
            bounds.max_form_degree = max_form_degree.unwrap_or(bounds.max_form_degree);
            let options = CheckOptions { seed, cases, bounds };
            let report = run_suites(&env, &suites, &options, ops);
            let _ = write!(out, "{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}
