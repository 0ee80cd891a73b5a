use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tlsrelax_cli::config::parse_nu_list;
use tlsrelax_cli::scenarios::{run_fig1, run_fig2, run_fig3, run_pointer};
use tlsrelax_cli::validate::run_validate;
use tlsrelax_cli::{Method, RunConfig, Scenario};

/// Relaxation of a two-level system in a Gaussian-Markovian field.
#[derive(Parser)]
#[command(name = "tlsrelax", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML configuration file (key = value pairs under [section] headers).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    method: Option<Method>,
    /// Comma-separated nu/Omega0 values.
    #[arg(long, global = true, value_parser = parse_nu_list)]
    nu: Option<::std::vec::Vec<f64>>,
    /// Monte Carlo trajectories.
    #[arg(long, global = true)]
    ntraj: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Population relaxation N(t) for several rates.
    Fig1,
    /// J(alpha t) extracted from the PDE population.
    Fig2,
    /// Coherence relaxation R(t) against the interpolation formula.
    Fig3,
    /// Conditional state in the pointer basis.
    Pointer,
    /// Run the self-checks; exits nonzero if any fails.
    Validate,
}

fn scenario(c: Command) -> Scenario {
    match c {
        Command::Fig1 => Scenario::Fig1,
        Command::Fig2 => Scenario::Fig2,
        Command::Fig3 => Scenario::Fig3,
        Command::Pointer => Scenario::Pointer,
        Command::Validate => Scenario::Validate,
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let sc = scenario(cli.command);
    if let Some(s) = cfg.scenario {
        if s != sc {
            bail!(
                "configuration is for scenario {} but {} was requested",
                s.name(),
                sc.name()
            );
        }
    }
    cfg.scenario = Some(sc);
    let c = &cli.common;
    if let Some(v) = c.seed {
        cfg.seed = v;
    }
    if let Some(v) = &c.out {
        cfg.out = v.clone();
    }
    if let Some(v) = c.method {
        cfg.method = v;
    }
    if let Some(v) = &c.nu {
        cfg.params.nu = Some(v.clone());
    }
    if let Some(v) = c.ntraj {
        cfg.mc.n_traj = v;
    }
    cfg.check()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = build_config(cli)?;
    let written = match cli.command {
        Command::Fig1 => run_fig1(&cfg)?,
        Command::Fig2 => run_fig2(&cfg)?,
        Command::Fig3 => run_fig3(&cfg)?,
        Command::Pointer => run_pointer(&cfg)?,
        Command::Validate => {
            let checks = run_validate(&cfg)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                println!("{}", c.line());
            }
            println!("summary passed={} failed={failed}", checks.len() - failed);
            return Ok(failed == 0);
        }
    };
    for f in &written.files {
        println!("wrote {}", f.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
