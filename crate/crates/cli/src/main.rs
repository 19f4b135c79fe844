use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cache;
mod commands;

use commands::Failure;

/// Transvection groups, (n,p)-groups, inertia weights and Mackey sweeps.
#[derive(Parser, Debug)]
#[command(name = "sympal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Element cap for group enumeration.
    #[arg(long, default_value_t = sympal::groupkit::DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the group in a fixture file.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the (n,p)-group for (n, q, p, ell) and emit it as a fixture.
    NpGroup {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
        /// Twist by the unramified character sending Frobenius to this integer.
        #[arg(long)]
        twist: Option<i64>,
        /// Also run the classifier on the result.
        #[arg(long)]
        classify: bool,
        /// Coprime factors of the conductor, recorded as metadata.
        #[arg(long, requires = "n2")]
        n1: Option<u64>,
        #[arg(long, requires = "n1")]
        n2: Option<u64>,
        /// Write the fixture here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// List the pairs (q, p) with q <= q-max for a given n.
    FindPrimes {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q_max: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check that the n!-th powers of a weight profile's characters are distinct.
    Regularity {
        #[arg(long)]
        input: PathBuf,
        /// Twist by this power of the cyclotomic character first.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the induced-character sweeps on a finite group.
    Mackey {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { input, common } => commands::run_classify(&input, &common),
        Command::NpGroup {
            n,
            q,
            p,
            ell,
            twist,
            classify,
            n1,
            n2,
            output,
            common,
        } => commands::run_np_group(
            &commands::NpArgs {
                n,
                q,
                p,
                ell,
                twist,
                classify,
                conductor: n1.zip(n2),
                output,
            },
            &common,
        ),
        Command::FindPrimes { n, q_max, common } => commands::run_find_primes(n, q_max, &common),
        Command::Regularity { input, twist, common } => commands::run_regularity(&input, twist, &common),
        Command::Mackey { input, common } => commands::run_mackey(&input, &common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
