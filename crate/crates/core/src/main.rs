use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use choi_duality::harness::{self, report::AuditReport, AuditConfig, Suite};
use choi_duality::Tolerances;

/// Basis-dependent Choi matrices and Choi-type correspondences.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Print the full report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Override a tolerance, e.g. `--tol psd_tol=1e-8`. Repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE", global = true)]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the four worked examples.
    Demo {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        example: u8,
    },
    /// Decide whether an operator basis yields a Choi correspondence.
    CheckBasis { file: PathBuf },
    /// Decide whether a super-map basis yields a Choi-type correspondence.
    CheckSupermapBasis { file: PathBuf },
    /// Generalized Choi matrix of a map in a basis.
    Choi {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        basis: PathBuf,
    },
    /// Randomized audit of the algebraic properties and theorems.
    Audit {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Hilbert-space dimension for operator-level properties.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=6))]
        dim: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut tol = Tolerances::default();
    for entry in &cli.tol {
        if let Err(e) = tol.set_override(entry) {
            eprintln!("--tol {entry}: {e}");
            return ExitCode::from(2);
        }
    }
    let report: AuditReport = match cli.command {
        Command::Demo { example } => harness::cmd_demo(example, &tol),
        Command::CheckBasis { file } => harness::cmd_check_basis(&file, &tol),
        Command::CheckSupermapBasis { file } => harness::cmd_check_supermap_basis(&file, &tol),
        Command::Choi { map, basis } => harness::cmd_choi(&map, &basis, &tol),
        Command::Audit { suite, trials, seed, dim } => {
            let config = AuditConfig { trials, seed, dim: dim as usize, tol };
            harness::cmd_audit(suite, &config)
        }
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.to_table());
    }
    ExitCode::from(report.status.code() as u8)
}
