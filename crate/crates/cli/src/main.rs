//! `kgz`: batch runner for the radial Klein-Gordon-Zakharov toolkit.

mod commands;
mod config;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kgz_core::io::write_manifest;
use kgz_core::Error;

use crate::config::{Config, ConfigError};

#[derive(Parser, Debug)]
#[command(name = "kgz", version, about, after_long_help = config::key_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory; created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = "kgz-out")]
    out: PathBuf,
    /// Override one configuration key; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Integrate from Gaussian data and export the trajectory.
    Simulate,
    /// Check the frequency lemma bounds for `sim.alpha`.
    Resonance,
    /// Duhamel residuals of the normal-form equations plus the boundedness sweep.
    NormalformCheck,
    /// Dyadic Strichartz scan of a free evolution.
    StrichartzScan,
    /// Witness ratios at a borderline pair.
    Sharpness,
    /// Scattering profiles, Cauchy differences and resolution norms.
    ScatterDiag,
    /// Print the frequency lemma constants.
    Params,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Resonance => "resonance",
            Command::NormalformCheck => "normalform-check",
            Command::StrichartzScan => "strichartz-scan",
            Command::Sharpness => "sharpness",
            Command::ScatterDiag => "scatter-diag",
            Command::Params => "params",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Core(Error),
    /// A check ran to completion and failed.
    Check(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Check(m) => f.write_str(m),
        }
    }
}

impl CliError {
    /// 1 generic, 2 configuration, 3 blow-up, 4 guard violation.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Check(_) => 1,
            CliError::Core(e) => match e {
                Error::InvalidConfig(_)
                | Error::InvalidGrid(_)
                | Error::InvalidExponent(_)
                | Error::NotAdmissible { .. }
                | Error::Model(_) => 2,
                Error::BlowUp { .. } => 3,
                Error::Horizon(_) | Error::Window(_) | Error::Cfl { .. } | Error::SingularSymbol { .. } => 4,
                _ => 1,
            },
        }
    }
}

fn manifest(command: Command, cfg: &Config, resolved: &[(String, String)]) -> Vec<(String, String)> {
    let mut m = vec![("run.command".to_string(), command.name().to_string())];
    m.extend(cfg.entries());
    m.extend(resolved.iter().cloned());
    m
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = Config::defaults(cli.command);
    if let Some(path) = &cli.config {
        cfg.merge_file(path)?;
    }
    for pair in &cli.overrides {
        cfg.merge_override(pair)?;
    }
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(ConfigError("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Check(format!("cannot start {n} worker threads: {e}")))?;
    }
    let out: &Path = &cli.out;
    std::fs::create_dir_all(out).map_err(Error::from)?;
    let manifest_path = out.join("manifest.txt");
    write_manifest(&manifest_path, &manifest(cli.command, &cfg, &[]))?;
    let resolved = match cli.command {
        Command::Simulate => commands::simulate(&cfg, out)?,
        Command::Resonance => commands::resonance(&cfg, out)?,
        Command::NormalformCheck => commands::normalform_check(&cfg, out)?,
        Command::StrichartzScan => commands::strichartz_scan_cmd(&cfg, out)?,
        Command::Sharpness => commands::sharpness(&cfg, out)?,
        Command::ScatterDiag => commands::scatter_diag(&cfg, out)?,
        Command::Params => commands::params(&cfg)?,
    };
    write_manifest(&manifest_path, &manifest(cli.command, &cfg, &resolved))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kgz {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}
