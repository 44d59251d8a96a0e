//! Command-line front end for `cheb-core`: sweeps, comparison tables,
//! stability certificates and the exact-arithmetic self test.
//!
//! Exit codes: 0 when every certificate with a proven bound passed (or the
//! self test passed), 1 on a bound violation or self-test failure, 2 on a
//! usage error, 3 when the report cannot be written.

pub mod args;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use thiserror::Error;

use cheb_core::identities::{run_all, SuiteSizes};
use cheb_core::sweep::{compare_table, ComparisonTable};

pub use args::{parse_args, Command, Format, RunConfig};
pub use report::emit_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", .0.join("\n"))]
    Usage(Vec<String>),

    /// `--help` or `--version` output, not a failure.
    #[error("{0}")]
    Help(String),

    #[error("{0}")]
    Core(#[from] cheb_core::Error),

    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => EXIT_OK,
            CliError::Usage(_) | CliError::Core(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// Reads `CHEB_THREADS`; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("CHEB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                CliError::Usage(vec![format!(
                    "CHEB_THREADS must be a positive integer, got '{v}'"
                )])
            }),
    }
}

fn open_output(cfg: &RunConfig) -> io::Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_selftest(cfg: &RunConfig, mut out: impl Write) -> Result<i32, CliError> {
    let outcomes = run_all(cfg.seed, &SuiteSizes::default());
    let mut ok = true;
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {} ({} checks)", o.name, o.checks)?;
        for f in &o.failures {
            writeln!(out, "    {f}")?;
        }
        ok &= o.passed();
    }
    out.flush()?;
    Ok(if ok { EXIT_OK } else { EXIT_BOUND_VIOLATION })
}

/// Executes a validated configuration and returns the process exit code.
pub fn run(cfg: &RunConfig) -> Result<i32, CliError> {
    let mut out = open_output(cfg)?;
    if cfg.command == Command::SelfTest {
        return run_selftest(cfg, out);
    }
    let table = compare_table(&cfg.algorithms, &cfg.degrees, &cfg.grid)?;
    emit_report(
        &table,
        cfg.format,
        cfg.command == Command::Certify,
        &mut out,
    )?;
    out.flush()?;

    Ok(exit_code_for(&table))
}

/// `EXIT_BOUND_VIOLATION` when any certificate that has a proven constant
/// failed, reporting each violation on stderr.
pub fn exit_code_for(table: &ComparisonTable) -> i32 {
    let mut code = EXIT_OK;
    for r in table.reports() {
        let c = &r.certificate;
        if let Some(l) = c.l_theoretical {
            if !c.passed {
                eprintln!(
                    "bound violated: algorithm {} N = {}: L_observed = {} > L = {} at x = {}",
                    r.algorithm, r.degree, c.l_observed, l, c.worst_point
                );
                code = EXIT_BOUND_VIOLATION;
            }
        }
    }
    code
}
