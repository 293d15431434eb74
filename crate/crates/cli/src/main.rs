//! Command-line front end over the workbench library. Every subcommand
//! prints one self-contained report; json is the source format and text
//! and csv are renderings of the same data.
//!
//! Exit codes: 0 on success, 1 when a verification inside the report
//! failed, 2 on configuration or parse errors.

mod model_cmds;
mod output;
mod verify;
mod wreath_cmds;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use output::{emit, Format, Outcome, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "orbitalis",
    version,
    about = "Exact workbench for orbitals, towers, and orders of groups acting on the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; csv is defined for commands with a tabular slice.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed driving every randomized check.
    #[arg(
        long,
        global = true,
        env = "ORBITALIS_SEED",
        default_value_t = orbitalis_core::sample::DEFAULT_SEED
    )]
    seed: u64,
    /// Threads for parallel phases; 0 keeps the runtime default. Worker
    /// count never changes report bytes, so it is not echoed in them.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the orbitals and fixed set of a word's map.
    Orbitals(model_cmds::OrbitalsArgs),
    /// Search for a longest chain of nested orbitals.
    TowerSearch(model_cmds::TowerSearchArgs),
    /// Search for a crossed pair and certify a free subsemigroup.
    CrossedPair(model_cmds::CrossedPairArgs),
    /// Report maximal chains of orbitals sharing one end.
    QuasiOrbital(model_cmds::QuasiOrbitalArgs),
    /// Count distinct elements at iterated commutator depths.
    CommutatorProbe(model_cmds::CommutatorProbeArgs),
    /// Check the ordered wreath product's order contract.
    OrderCheck(wreath_cmds::OrderCheckArgs),
    /// Build an order-preserving realization table on the line.
    Realize(wreath_cmds::RealizeArgs),
    /// Certify strict nesting of conjugate orbitals in the realization.
    VerifyTower(wreath_cmds::VerifyTowerArgs),
    /// Run a construction's full verification bundle.
    #[command(subcommand)]
    VerifyConstruction(verify::Construction),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Orbitals(_) => "orbitals",
            Command::TowerSearch(_) => "tower-search",
            Command::CrossedPair(_) => "crossed-pair",
            Command::QuasiOrbital(_) => "quasi-orbital",
            Command::CommutatorProbe(_) => "commutator-probe",
            Command::OrderCheck(_) => "order-check",
            Command::Realize(_) => "realize",
            Command::VerifyTower(_) => "verify-tower",
            Command::VerifyConstruction(verify::Construction::Bs12(_)) => {
                "verify-construction bs12"
            }
            Command::VerifyConstruction(verify::Construction::Wreath(_)) => {
                "verify-construction wreath"
            }
        }
    }

    /// Commands whose report carries a tabular slice for `--format csv`.
    fn has_csv(&self) -> bool {
        matches!(
            self,
            Command::Orbitals(_)
                | Command::TowerSearch(_)
                | Command::QuasiOrbital(_)
                | Command::Realize(_)
                | Command::VerifyTower(_)
        )
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    if cli.format == Format::Csv && !cli.command.has_csv() {
        anyhow::bail!(
            "csv output is not defined for `{}`; use json or text",
            cli.command.name()
        );
    }
    let config = RunConfig::new(cli.command.name(), cli.seed, cli.format);
    match &cli.command {
        Command::Orbitals(args) => model_cmds::orbitals(args, config),
        Command::TowerSearch(args) => model_cmds::tower_search_cmd(args, config),
        Command::CrossedPair(args) => model_cmds::crossed_pair_cmd(args, config),
        Command::QuasiOrbital(args) => model_cmds::quasi_orbital_cmd(args, config),
        Command::CommutatorProbe(args) => model_cmds::commutator_probe_cmd(args, config),
        Command::OrderCheck(args) => wreath_cmds::order_check(args, config),
        Command::Realize(args) => wreath_cmds::realize(args, config),
        Command::VerifyTower(args) => wreath_cmds::verify_tower(args, config),
        Command::VerifyConstruction(verify::Construction::Bs12(args)) => {
            verify::bs12(args, config)
        }
        Command::VerifyConstruction(verify::Construction::Wreath(args)) => {
            verify::wreath(args, config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        // Sizes the pool for parallel read-only phases; never affects output.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
        if let Err(e) = pool {
            eprintln!("orbitalis: setting worker count: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("orbitalis: {e:#}");
            return ExitCode::from(2);
        }
    };
    match emit(cli.format, &outcome) {
        Ok(text) => {
            print!("{text}");
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("orbitalis: {e:#}");
            ExitCode::from(2)
        }
    }
}
