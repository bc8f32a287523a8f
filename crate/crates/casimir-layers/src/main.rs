//! Thin command-line front end over the `casimir_layers` scenarios.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use casimir_layers::hamaker::ForceConvention;
use casimir_layers::numerics::{QuadratureConfig, RootConfig};
use casimir_layers::scenario::{
    materials_summary, run_fig1, run_fig2, run_fig3, run_sweep, RunReport, ScenarioConfig,
};

#[derive(Parser)]
#[command(name = "casimir-layers", version, about = "Casimir/van der Waals forces in three-layer systems")]
struct Cli {
    /// Scenario config file (TOML); required by `sweep`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path (defaults to <command>.csv in the working directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Relative tolerance for the quadratures.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Hamaker force normalization: F = −H/3L³ (paper) or −H/6πL³.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Paper)]
    convention: ConventionArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Paper,
    Conventional,
}

impl From<ConventionArg> for ForceConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Paper => ForceConvention::Paper,
            ConventionArg::Conventional => ForceConvention::Conventional,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Export the coupled and single-interface plasmon dispersion curves.
    Fig1,
    /// Export the plasmon/photon decomposition of the Casimir energy.
    Fig2,
    /// Export force reduction factors and short-distance asymptotes.
    Fig3,
    /// Run the distance sweep described by --config.
    Sweep,
    /// List the built-in (and any user-supplied) material presets.
    Materials,
}

fn report_outcome(report: RunReport) -> ExitCode {
    for f in &report.failures {
        eprintln!("not converged: {f}");
    }
    if report.all_converged() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot size worker pool: {e}");
            return ExitCode::FAILURE;
        }
    }

    let quad = match cli.rel_tol {
        Some(t) => QuadratureConfig::default().with_rel_tol(t),
        None => QuadratureConfig::default(),
    };
    if let Err(e) = quad.validate() {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }

    let out_or = |default: &str| cli.out.clone().unwrap_or_else(|| PathBuf::from(default));

    let result = match cli.command {
        Command::Fig1 => {
            // exported points feed residual checks downstream: solve tightly
            let root = RootConfig { rel_tol: 1e-15, ..RootConfig::default() };
            run_fig1(&out_or("fig1.csv"), &root).map(report_outcome)
        }
        Command::Fig2 => {
            run_fig2(&out_or("fig2.csv"), &quad, &RootConfig::default()).map(report_outcome)
        }
        Command::Fig3 => run_fig3(&out_or("fig3.csv"), &quad).map(report_outcome),
        Command::Sweep => {
            let Some(path) = cli.config.as_deref() else {
                eprintln!("error: sweep requires --config");
                return ExitCode::FAILURE;
            };
            ScenarioConfig::from_file(path).and_then(|cfg| {
                let out = match (&cli.out, &cfg.out) {
                    (Some(o), _) => o.clone(),
                    (None, Some(o)) => o.clone(),
                    (None, None) => PathBuf::from("sweep.csv"),
                };
                run_sweep(&cfg, &out, &quad, cli.convention.into()).map(report_outcome)
            })
        }
        Command::Materials => materials_summary().map(|text| {
            print!("{text}");
            ExitCode::SUCCESS
        }),
    };

    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
