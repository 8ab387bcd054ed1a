//! `kdp`: exact identity verification, Landau spectra and conserved currents.
//!
//! Exit codes: 0 when every check meets its expectation, 1 on a failed
//! check or disagreeing spectral routes, 2 on a configuration error.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kdp_core::algebra::Representation;
use kdp_core::currents::{currents_report, CurrentsReport};
use kdp_core::spectra::{
    landau_spectrum_spin0, landau_spectrum_spin1, spin0_finite_difference,
    residuals_spin0, residuals_spin1, spin0_oracle, spin1_route, Level, ResidualReport, Route,
};
use kdp_core::suite::{run_identities, SuiteEntry};
use kdp_core::KdpError;
use serde::Serialize;

use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Kdp(#[from] KdpError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_)
            | CliError::Kdp(
                KdpError::InvalidParameter(_)
                | KdpError::UnsupportedSpin(_)
                | KdpError::FreeMaxwellViolation { .. }
                | KdpError::NotAntisymmetric
                | KdpError::InvalidForm { .. }
                | KdpError::NonZeroScalarPotential
                | KdpError::WrongSpin { .. },
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "kdp", version, about = "Exact verification toolkit for the Kemmer-Duffin-Petiau equation")]
struct Cli {
    /// JSON configuration file; every key is optional.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized density sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities by id; no ids means all of them.
    Verify {
        ids: Vec<String>,
        /// Emit JSON instead of one line per check.
        #[arg(long)]
        json: bool,
    },
    /// Landau levels in a uniform magnetic field.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        spin: u8,
        /// A single route; by default all routes are computed and cross-checked.
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Also lift each level to a full spinor and report its residuals.
        #[arg(long)]
        residuals: bool,
    },
    /// Conservation and positivity of the currents for the configured modes.
    Currents,
    /// Everything, as one JSON document.
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    #[value(name = "o_red-eigen")]
    ORedEigen,
    #[value(name = "fourth-order")]
    FourthOrder,
    #[value(name = "analytic-oracle")]
    AnalyticOracle,
    #[value(name = "finite-difference")]
    FiniteDifference,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::ORedEigen => Route::ORedEigen,
            RouteArg::FourthOrder => Route::FourthOrder,
            RouteArg::AnalyticOracle => Route::AnalyticOracle,
            RouteArg::FiniteDifference => Route::FiniteDifference,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn status(e: &SuiteEntry) -> &'static str {
    match (e.as_expected(), e.report.passed) {
        (false, _) => "FAIL",
        (true, _) if e.expectation == kdp_core::suite::Expectation::Informational => "INFO",
        (true, true) => "PASS",
        (true, false) => "PASS (expected failure)",
    }
}

fn verify(cfg: &Config, ids: &[String], json: bool, out: &Option<PathBuf>) -> Result<bool, CliError> {
    let entries = run_identities(ids, &cfg.suite_options()?)?;
    let ok = entries.iter().all(SuiteEntry::as_expected);
    if json {
        write_json(out, &entries)?;
    } else {
        let mut w = output(out)?;
        for e in &entries {
            let field = e.field.as_deref().map(|f| format!(" [{f}]")).unwrap_or_default();
            writeln!(w, "{:<5} {} spin-{}{field}: {} cases", status(e), e.report.id, e.spin, e.report.cases_checked)?;
            if !e.as_expected() {
                for c in e.report.counterexamples.iter().take(3) {
                    writeln!(w, "      counterexample: {}", c.case)?;
                }
            }
        }
        let bad = entries.iter().filter(|e| !e.as_expected()).count();
        writeln!(w, "{} checks, {bad} not as expected", entries.len())?;
    }
    Ok(ok)
}

#[derive(Serialize)]
struct SpectrumResult {
    levels: Vec<Level>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    residuals: Vec<ResidualReport>,
}

fn levels(cfg: &Config, spin: u8, route: Option<Route>) -> Result<Vec<Level>, CliError> {
    let p = cfg.landau(spin);
    let tol = cfg.tolerance(spin);
    Ok(match (spin, route) {
        (0, None) => {
            let (a, b) = landau_spectrum_spin0(p, tol)?;
            a.into_iter().chain(b).collect()
        }
        (0, Some(Route::FiniteDifference)) => spin0_finite_difference(p)?,
        (0, Some(Route::AnalyticOracle)) => spin0_oracle(p)?,
        (1, None) => {
            let (a, b) = landau_spectrum_spin1(p, tol)?;
            a.into_iter().chain(b).collect()
        }
        (1, Some(r @ (Route::ORedEigen | Route::FourthOrder))) => spin1_route(p, r)?,
        (s, Some(r)) => {
            return Err(CliError::Config(format!("route {} is not available for spin {s}", r.tag())));
        }
        (s, None) => return Err(CliError::Config(format!("unsupported spin {s}"))),
    })
}

fn residual_reports(cfg: &Config, spin: u8, levels: &[Level]) -> Result<Vec<ResidualReport>, CliError> {
    let p = cfg.landau(spin);
    let tol = cfg.tolerance(spin);
    let wanted: std::collections::BTreeSet<(i8, usize)> = levels.iter().map(|l| (l.spin_projection, l.n)).collect();
    let wanted: Vec<(i8, usize)> = wanted.into_iter().collect();
    Ok(if spin == 0 {
        residuals_spin0(p, &wanted.iter().map(|w| w.1).collect::<Vec<_>>(), tol)?
    } else {
        residuals_spin1(p, &wanted, tol)?
    })
}

fn spectrum(
    cfg: &Config,
    spin: u8,
    route: Option<Route>,
    format: Format,
    residuals: bool,
    out: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let levels = levels(cfg, spin, route)?;
    let residuals = if residuals { residual_reports(cfg, spin, &levels)? } else { Vec::new() };
    let ok = residuals.iter().all(|r| r.passed);
    match format {
        Format::Json => write_json(out, &SpectrumResult { levels, residuals })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(output(out)?);
            for l in &levels {
                w.serialize(l)?;
            }
            w.flush()?;
            for r in residuals.iter().filter(|r| !r.passed) {
                eprintln!("residual check failed for spin {} s={} n={}", r.spin, r.spin_projection, r.n);
            }
        }
    }
    Ok(ok)
}

fn currents(cfg: &Config) -> Result<Vec<CurrentsReport>, CliError> {
    cfg.spins
        .iter()
        .map(|&s| Ok(currents_report(&Representation::spin(s)?, cfg.m, &cfg.modes, cfg.samples, cfg.seed)?))
        .collect()
}

#[derive(Serialize)]
struct SpectrumSection {
    spin: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<Level>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    residuals: Vec<ResidualReport>,
}

#[derive(Serialize)]
struct Report {
    passed: bool,
    identities: Vec<SuiteEntry>,
    spectra: Vec<SpectrumSection>,
    currents: Vec<CurrentsReport>,
}

fn report(cfg: &Config, out: &Option<PathBuf>) -> Result<bool, CliError> {
    let identities = run_identities(&[], &cfg.suite_options()?)?;
    let mut spectra = Vec::new();
    for &spin in &cfg.spins {
        // Disagreeing routes are a failed check, not an aborted report.
        match levels(cfg, spin, None) {
            Ok(l) => {
                let residuals = residual_reports(cfg, spin, &l)?;
                spectra.push(SpectrumSection { spin, levels: Some(l), error: None, residuals });
            }
            Err(CliError::Kdp(e @ KdpError::RouteDisagreement(_))) => {
                spectra.push(SpectrumSection { spin, levels: None, error: Some(e.to_string()), residuals: Vec::new() })
            }
            Err(e) => return Err(e),
        }
    }
    let currents = currents(cfg)?;
    let passed = identities.iter().all(SuiteEntry::as_expected)
        && spectra.iter().all(|s| s.error.is_none() && s.residuals.iter().all(|r| r.passed))
        && currents.iter().all(|c| c.passed);
    write_json(out, &Report { passed, identities, spectra, currents })?;
    Ok(passed)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Verify { ids, json } => verify(&cfg, &ids, json, &cli.out),
        Command::Spectrum { spin, route, format, residuals } => {
            spectrum(&cfg, spin, route.map(Route::from), format, residuals, &cli.out)
        }
        Command::Currents => {
            let reports = currents(&cfg)?;
            write_json(&cli.out, &reports)?;
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Report => report(&cfg, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kdp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
