mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand};
use cihom_core::error::Error;
use commands::Outcome;
use report::Reporter;
use std::path::PathBuf;
use std::process::ExitCode;

/// Ext families over complete-intersection quotients: resolutions, operator
/// actions, and stabilization certificates.
#[derive(Parser)]
#[command(name = "cihom", disable_help_subcommand = true)]
struct Cli {
    /// experiment configuration (TOML)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// output directory for reports
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// override cohomological bound i_max
    #[arg(long, global = true)]
    imax: Option<usize>,
    /// override family bound n_max
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// degree cap recorded in reports (guard only; computations are exact)
    #[arg(long, global = true)]
    degcap: Option<usize>,
    /// random seed for searches
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// reduced Groebner bases of the ideal and the module relations
    Gb,
    /// minimal free resolution of M with periodicity detection
    Resolve,
    /// full Ext table with u and t actions
    ExtTable,
    /// finite-generation certificate over S = A[t]
    CertifyFg,
    /// associated primes per cell and their stabilization
    AssTable,
    /// stable annihilator, d-invariants, theta, spread, filter-regular search
    Theta,
    /// complexity and support-variety dimension over ideal powers
    CxTable,
    /// same analysis for quotient families (exploratory)
    ExploreQuotient,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Parse("--config is required".into()))?;
    let overrides = config::Overrides {
        i_max: cli.imax,
        n_max: cli.nmax,
        deg_cap: cli.degcap,
        seed: cli.seed,
    };
    cihom_core::par::configure_jobs(cli.jobs);
    let exp = config::load(config_path, &overrides)?;
    let rep = Reporter::new(
        &cli.out,
        &exp.config_hash,
        exp.i_max,
        exp.n_max,
        exp.deg_cap,
        exp.seed,
    )?;
    match cli.cmd {
        Cmd::Gb => commands::gb(&exp, &rep),
        Cmd::Resolve => commands::resolve_cmd(&exp, &rep),
        Cmd::ExtTable => commands::ext_table(&exp, &rep),
        Cmd::CertifyFg => commands::certify_fg(&exp, &rep),
        Cmd::AssTable => commands::ass_table(&exp, &rep),
        Cmd::Theta => commands::theta_cmd(&exp, &rep),
        Cmd::CxTable => commands::cx_table(&exp, &rep),
        Cmd::ExploreQuotient => commands::explore_quotient(&exp, &rep),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Finding(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NotRegularSequence(_) | Error::Inhomogeneous(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
