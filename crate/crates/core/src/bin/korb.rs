use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use korb_core::cli::{self, CliError, Format, OutputDocument};
use korb_core::WeightVector;

/// Orbifold K-theory of weighted projective spaces.
#[derive(Parser)]
#[command(name = "korb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Comma-separated positive weights, e.g. 1,2,4
    #[arg(value_parser = parse_weights, allow_hyphen_values = true)]
    weights: WeightVector,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Sector chart: roots of unity, fixed subspaces, logweights
    Chart(Common),
    /// Multiplication table of the sector generators
    Table(Common),
    /// Kirwan-kernel generator of each sector
    Kernels(Common),
    /// Presentation by generators and relations
    Present(Common),
    /// Rank over Z
    Rank(Common),
    /// Torsion-freeness check
    Torsion(Common),
    /// Randomized and exhaustive ring-axiom checks
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce a polynomial to its canonical residue in one sector
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sector: usize,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Twisted product of two elements given as "s:<poly>;s:<poly>"
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
}

fn parse_weights(s: &str) -> Result<WeightVector, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn run(command: Command) -> Result<OutputDocument, CliError> {
    match command {
        Command::Chart(c) => cli::cmd_chart(&c.weights, c.format),
        Command::Table(c) => cli::cmd_table(&c.weights, c.format),
        Command::Kernels(c) => cli::cmd_kernels(&c.weights, c.format),
        Command::Present(c) => cli::cmd_present(&c.weights, c.format),
        Command::Rank(c) => cli::cmd_rank(&c.weights, c.format),
        Command::Torsion(c) => cli::cmd_torsion(&c.weights, c.format),
        Command::Verify {
            common,
            trials,
            seed,
        } => cli::cmd_verify(&common.weights, trials, seed, common.format),
        Command::Reduce {
            common,
            sector,
            poly,
        } => cli::cmd_reduce(&common.weights, sector, &poly, common.format),
        Command::Mul { common, lhs, rhs } => cli::cmd_mul(&common.weights, &lhs, &rhs, common.format),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(doc) => {
            let mut out = std::io::stdout().lock();
            if writeln!(out, "{doc}").and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            if doc.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
