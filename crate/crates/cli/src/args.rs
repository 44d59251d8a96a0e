use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cheb_core::sweep::Spacing;
use cheb_core::{Algorithm, GridSpec};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sweep,
    Table,
    Certify,
    SelfTest,
}

/// A fully validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub algorithms: Vec<Algorithm>,
    pub degrees: Vec<u32>,
    pub grid: GridSpec,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(
    name = "cheb",
    version,
    about = "Accuracy sweeps for Chebyshev T_N(x) evaluation algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// One CSV row per (algorithm, degree) with the worst error and certificate
    Sweep(SweepArgs),
    /// Worst error per degree (rows) and algorithm (columns)
    Table(SweepArgs),
    /// Backward-stability certificates against the proven constants
    Certify(SweepArgs),
    /// Exact-arithmetic identity and lower-bound suites
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated algorithms: I, II, III, IV (or recurrence, doubling, trig, horner)
    #[arg(long, default_value = "I,II,III,IV")]
    algos: String,

    /// Degrees: a list like 8,16,32, ranges like 100..1000:100, or powers like 2^3..2^10
    #[arg(long, default_value = "2^3..2^10")]
    degrees: String,

    /// Interval a,b within [-1, 1]
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    interval: String,

    /// Grid step h
    #[arg(long, conflicts_with = "points", allow_hyphen_values = true)]
    step: Option<f64>,

    /// Number of grid points p (h = (b - a) / (p - 1))
    #[arg(long)]
    points: Option<usize>,

    /// Write the report here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Parses and validates the command line, reporting every violated
/// constraint together.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = std::iter::once("cheb".into())
        .chain(argv.into_iter().map(Into::into))
        .collect();
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(vec![e
            .to_string()
            .trim_end()
            .trim_start_matches("error: ")
            .to_string()]),
    })?;

    let (command, a) = match cli.command {
        Sub::Selftest { seed } => {
            return Ok(RunConfig {
                command: Command::SelfTest,
                algorithms: Vec::new(),
                degrees: Vec::new(),
                grid: GridSpec::with_step(-1.0, 1.0, 0.01).expect("default grid"),
                output: None,
                format: Format::Csv,
                seed,
            })
        }
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::Table(a) => (Command::Table, a),
        Sub::Certify(a) => (Command::Certify, a),
    };

    let mut problems = Vec::new();

    let algorithms: Vec<Algorithm> = a
        .algos
        .split(',')
        .filter_map(|s| s.parse().map_err(|e: String| problems.push(e)).ok())
        .collect();

    let degrees = parse_degrees(&a.degrees).unwrap_or_else(|e| {
        problems.push(e);
        Vec::new()
    });

    // the table records incompatible pairs as skipped cells; the other
    // commands run every pair, so those are rejected here
    if command != Command::Table && algorithms.contains(&Algorithm::Doubling) {
        let bad: Vec<String> = degrees
            .iter()
            .filter(|d| !d.is_power_of_two())
            .map(u32::to_string)
            .collect();
        if !bad.is_empty() {
            problems.push(format!(
                "algorithm II (doubling) requires power-of-two degrees N = 2^p; got {}",
                bad.join(", ")
            ));
        }
    }

    let interval = parse_interval(&a.interval).unwrap_or_else(|e| {
        problems.push(e);
        (-1.0, 1.0)
    });
    let spacing = match (a.step, a.points) {
        (_, Some(p)) => Spacing::Points(p),
        (Some(h), None) => Spacing::Step(h),
        (None, None) => Spacing::Step(0.01),
    };
    problems.extend(GridSpec::violations(interval.0, interval.1, spacing));

    if !problems.is_empty() {
        return Err(CliError::Usage(problems));
    }
    let grid = GridSpec::new(interval.0, interval.1, spacing).expect("validated above");
    let format = a.format.unwrap_or(match command {
        Command::Sweep => Format::Csv,
        _ => Format::Markdown,
    });
    Ok(RunConfig {
        command,
        algorithms,
        degrees,
        grid,
        output: a.output,
        format,
        seed: 0,
    })
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("interval must look like a,b; got '{s}'"));
    };
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| format!("interval end '{t}' is not a number"))
    };
    Ok((num(a)?, num(b)?))
}

fn parse_degree(s: &str) -> Result<(u32, bool), String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        if base.trim() != "2" {
            return Err(format!("only powers of two are supported, got '{s}'"));
        }
        let p: u32 = exp
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent in '{s}'"))?;
        return 1u32
            .checked_shl(p)
            .filter(|_| p < 32)
            .map(|v| (v, true))
            .ok_or_else(|| format!("'{s}' is too large"));
    }
    let v: i64 = s
        .parse()
        .map_err(|_| format!("degree '{s}' is not an integer"))?;
    if v <= 0 {
        return Err(format!("degree must be positive, got {v}"));
    }
    u32::try_from(v)
        .map(|v| (v, false))
        .map_err(|_| format!("degree {v} is too large"))
}

/// Accepts `8,16,32`, `100..1000:100` and `2^3..2^10` (geometric when both
/// ends use power notation).
pub fn parse_degrees(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, st)) => (hi, Some(st)),
                None => (rest, None),
            };
            let (lo, lo_pow) = parse_degree(lo)?;
            let (hi, hi_pow) = parse_degree(hi)?;
            if lo > hi {
                return Err(format!("empty degree range '{item}'"));
            }
            if lo_pow && hi_pow && step.is_none() {
                let mut d = lo;
                while d <= hi {
                    out.push(d);
                    match d.checked_mul(2) {
                        Some(n) => d = n,
                        None => break,
                    }
                }
            } else {
                let step: u32 = match step {
                    Some(st) => st
                        .trim()
                        .parse()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| format!("bad range step in '{item}'"))?,
                    None => 1,
                };
                out.extend((lo..=hi).step_by(step as usize));
            }
        } else {
            out.push(parse_degree(item)?.0);
        }
    }
    if out.is_empty() {
        return Err("no degrees given".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usage(argv: &[&str]) -> Vec<String> {
        match parse_args(argv) {
            Err(CliError::Usage(p)) => p,
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn table_one_config() {
        let cfg = parse_args([
            "table",
            "--algos",
            "I,II,III,IV",
            "--degrees",
            "8,16,32,64,128,256,512,1024",
            "--interval",
            "-1,1",
            "--step",
            "0.01",
        ])
        .unwrap();
        assert_eq!(cfg.command, Command::Table);
        assert_eq!(cfg.algorithms, Algorithm::ALL.to_vec());
        assert_eq!(cfg.degrees, vec![8, 16, 32, 64, 128, 256, 512, 1024]);
        assert_eq!(cfg.grid.point_count(), 201);
        assert_eq!(cfg.format, Format::Markdown);
    }

    #[test]
    fn minimal_sweep() {
        let cfg = parse_args([
            "sweep",
            "--algos",
            "I",
            "--degrees",
            "2",
            "--interval",
            "-1,1",
            "--points",
            "3",
        ])
        .unwrap();
        assert_eq!(cfg.command, Command::Sweep);
        assert_eq!(cfg.degrees, vec![2]);
        assert_eq!(cfg.grid.points(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn reversed_interval() {
        let p = usage(&["table", "--interval", "1,-1"]);
        assert!(
            p.iter().any(|m| m.contains("interval requires a < b")),
            "{p:?}"
        );
    }

    #[test]
    fn every_problem_listed() {
        let p = usage(&[
            "sweep",
            "--algos",
            "I,II,V",
            "--degrees",
            "0,12",
            "--interval",
            "1,-1",
            "--step",
            "-2",
        ]);
        assert_eq!(p.len(), 4, "{p:?}");
        let p = usage(&["sweep", "--algos", "II", "--degrees", "8,12"]);
        assert!(p[0].contains("power-of-two"), "{p:?}");
    }

    #[test]
    fn table_allows_skipped_doubling() {
        let cfg = parse_args(["table", "--algos", "I,II", "--degrees", "3,4"]).unwrap();
        assert_eq!(cfg.degrees, vec![3, 4]);
    }

    #[test]
    fn unknown_flag() {
        let p = usage(&["sweep", "--bogus", "1"]);
        assert!(p[0].contains("--bogus"), "{p:?}");
    }

    #[test]
    fn degree_notation() {
        assert_eq!(
            parse_degrees("2^3..2^10").unwrap(),
            vec![8, 16, 32, 64, 128, 256, 512, 1024]
        );
        assert_eq!(parse_degrees("100..500:200").unwrap(), vec![100, 300, 500]);
        assert_eq!(parse_degrees("101, 301,2^4").unwrap(), vec![101, 301, 16]);
        assert_eq!(parse_degrees("3..5").unwrap(), vec![3, 4, 5]);
        assert!(parse_degrees("0").is_err());
        assert!(parse_degrees("-4").is_err());
        assert!(parse_degrees("3^2").is_err());
        assert!(parse_degrees("5..2").is_err());
        assert!(parse_degrees("").is_err());
    }

    #[test]
    fn selftest_takes_seed() {
        let cfg = parse_args(["selftest", "--seed", "9"]).unwrap();
        assert_eq!(cfg.command, Command::SelfTest);
        assert_eq!(cfg.seed, 9);
    }
}
