//! Command-line front end. Exit codes: 0 success, 2 usage or parameter
//! error, 3 geometric precondition violated.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::circle::{self, CircleConfiguration, CircleError, ExactProbability};
use crate::config::{ConfigError, ConfigFile, Meta};
use crate::constructions::{antipodal_config, vandermonde_config};
use crate::hemisphere::{self, closed_bound, HemisphereError, DEFAULT_TOL};
use crate::montecarlo::{self, MonteCarloEstimate};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Geometric(String),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Output(_) => 2,
            CliError::Geometric(_) => 3,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CircleError> for CliError {
    fn from(e: CircleError) -> Self {
        match e {
            CircleError::NonGeneric { .. } => CliError::Geometric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "equator", version, about = "Hemisphere occupancy and equator-balanced point sets on S^N")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed/open hemisphere maxima and balance verdict for a configuration file
    Analyze(AnalyzeArgs),
    /// Write a Vandermonde or antipodal configuration file
    Construct(ConstructArgs),
    /// Monte Carlo estimate of p(N, n)
    Simulate(SimulateArgs),
    /// Closed-form p(N, n), where known
    Exact(ExactArgs),
    /// Circle (N = 1) sweep and antipodal-flip oracles
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for the open-hemisphere pole search
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Vandermonde,
    Antipodal,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub points: usize,
    /// Trial count; scientific notation such as 1e7 is accepted
    #[arg(long, value_parser = parse_count)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Sweep,
    Flip,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub mode: OracleMode,
    /// Configuration file with dim = 1
    #[arg(long, conflicts_with = "angles", required_unless_present = "angles")]
    pub file: Option<PathBuf>,
    /// Comma-separated angles in radians
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub angles: Option<Vec<f64>>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("{s:?} is not a non-negative integer count")),
    }
}

/// Runs one command, writing its report to `out` and warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(a) => analyze(a, out, err),
        Command::Construct(a) => construct(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Exact(a) => exact(a, out),
        Command::Oracle(a) => oracle(a, out, err),
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    #[serde(rename = "N")]
    dim: usize,
    n: usize,
    label: Option<&'a str>,
    closed_bound: usize,
    hemisphere: &'a hemisphere::HemisphereReport,
    balance: Option<&'a hemisphere::BalanceVerdict>,
    balance_error: Option<serde_json::Value>,
    open: &'a hemisphere::OpenReport,
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let file = ConfigFile::read(&a.file)?;
    let (c, warnings) = file.to_configuration()?;
    for w in warnings {
        writeln!(err, "warning: {w}")?;
    }
    let usage = |e: HemisphereError| CliError::Usage(e.to_string());
    let report = hemisphere::max_closed_hemisphere(&c, a.tol).map_err(usage)?;
    let balance = hemisphere::is_equator_balanced(&c, a.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let open = hemisphere::best_open_hemisphere(&c, &mut rng, a.tol).map_err(|e| CliError::Geometric(e.to_string()))?;
    let violation = match &balance {
        Err(HemisphereError::GeneralPositionViolation { subset, point }) => Some((subset.clone(), *point)),
        Err(e) => return Err(CliError::Usage(e.to_string())),
        Ok(_) => None,
    };
    let (n, dim) = (c.len(), c.dim());
    if a.json {
        let doc = AnalyzeReport {
            dim,
            n,
            label: c.label(),
            closed_bound: closed_bound(dim, n),
            hemisphere: &report,
            balance: balance.as_ref().ok(),
            balance_error: violation
                .as_ref()
                .map(|(subset, point)| json!({"kind": "GeneralPositionViolation", "subset": subset, "point": point})),
            open: &open,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
    } else {
        if let Some(label) = c.label() {
            writeln!(out, "label: {label}")?;
        }
        writeln!(out, "N: {dim}")?;
        writeln!(out, "n: {n}")?;
        writeln!(out, "closed_bound: {}", closed_bound(dim, n))?;
        writeln!(out, "max_count: {}", report.max_count)?;
        writeln!(out, "witness subset: {:?}", report.witness_subset)?;
        writeln!(out, "witness pole: {}", fmt_vec(report.witness_pole.coords()))?;
        if report.degenerate_subsets > 0 {
            writeln!(out, "degenerate subsets skipped: {}", report.degenerate_subsets)?;
        }
        match (&balance, &violation) {
            (Ok(v), _) if v.vacuous => writeln!(out, "balanced: true (vacuous, n <= N+1)")?,
            (Ok(v), _) => {
                writeln!(out, "balanced: {}", v.balanced)?;
                if let Some(bad) = &v.violation {
                    writeln!(out, "violation: subset {:?} splits the rest {}/{}", bad.subset, bad.counts.positive, bad.counts.negative)?;
                }
            }
            (_, Some((subset, point))) => {
                writeln!(out, "balanced: undefined (point {point} on the great circle through subset {subset:?})")?
            }
            _ => unreachable!("balance errors handled above"),
        }
        writeln!(out, "open hemisphere count: {}", open.count)?;
        writeln!(out, "open hemisphere pole: {}", fmt_vec(open.pole.coords()))?;
    }
    match violation {
        Some((subset, point)) => {
            Err(CliError::Geometric(format!("general position violated: point {point} lies on the great circle through subset {subset:?}")))
        }
        None => Ok(()),
    }
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let usage = |e: crate::constructions::ConstructionError| CliError::Usage(e.to_string());
    let file = match a.kind {
        Kind::Vandermonde => ConfigFile::from_exact(&vandermonde_config(a.dim, a.points).map_err(usage)?, None),
        Kind::Antipodal => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let c = antipodal_config(a.dim, a.points, &mut rng).map_err(usage)?;
            let meta =
                Meta { label: c.label().map(str::to_owned), seed: Some(a.seed), generator: Some("antipodal".into()), integer_points: None };
            ConfigFile::from_configuration(&c, Some(meta))
        }
    };
    file.write(&a.out)?;
    writeln!(out, "wrote {} points on S^{} to {}", file.points.len(), file.dim, a.out.display())?;
    Ok(())
}

/// Column header and one row in the layout `N n trials success 1/p precision seed elapsed_s`.
pub fn table_row(e: &MonteCarloEstimate) -> (String, String) {
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"));
    let header = format!(
        "{:>3} {:>3} {:>14} {:>12} {:>14} {:>12} {:>20} {:>10}",
        "N", "n", "trials", "success", "1/p(N,n)", "precision", "seed", "elapsed_s"
    );
    let row = format!(
        "{:>3} {:>3} {:>14} {:>12} {:>14} {:>12} {:>20} {:>10.2}",
        e.dim,
        e.n,
        e.trials,
        e.successes,
        opt(e.inv_p_hat),
        opt(e.precision_3sigma),
        e.seed,
        e.elapsed_seconds
    );
    (header, row)
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let e = montecarlo::estimate(a.dim, a.points, a.trials, a.seed, a.workers).map_err(|e| CliError::Usage(e.to_string()))?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&e).expect("estimate serializes"))?;
    } else {
        let (header, row) = table_row(&e);
        writeln!(out, "{header}")?;
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn exact(a: ExactArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.dim == 0 || a.points == 0 {
        return Err(CliError::Usage("need --dim >= 1 and --points >= 1".into()));
    }
    match circle::exact_probability(a.dim, a.points) {
        Some(p) => writeln!(out, "{p}")?,
        None => writeln!(out, "no closed form known")?,
    }
    Ok(())
}

fn oracle(a: OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let c = match (&a.file, a.angles) {
        (Some(path), _) => {
            let file = ConfigFile::read(path)?;
            if file.dim != 1 {
                return Err(CliError::Usage(format!("oracle needs a dim = 1 configuration, got dim = {}", file.dim)));
            }
            let (config, warnings) = file.to_configuration()?;
            for w in warnings {
                writeln!(err, "warning: {w}")?;
            }
            CircleConfiguration::from_configuration(&config).map_err(|e| CliError::Usage(e.to_string()))?
        }
        (None, Some(angles)) => CircleConfiguration::new(angles)?,
        (None, None) => return Err(CliError::Usage("give --file or --angles".into())),
    };
    match a.mode {
        OracleMode::Sweep => {
            let seq = circle::sweep_sequence(&c)?;
            writeln!(out, "sequence: {:?}", seq.counts())?;
            writeln!(out, "balanced: {}", circle::is_balanced_circle(&c)?)?;
        }
        OracleMode::Flip => {
            let count = circle::flip_enumeration_count(&c)?;
            writeln!(out, "count: {count}, ratio: {}", ExactProbability::from_flip_count(count, c.len()))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("10000000"), Ok(10_000_000));
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }
}
