use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(
    name = "scrollflex",
    version,
    about = "Inflectional loci of scrolls over curves"
)]
struct Cli {
    /// Emit one JSON document instead of aligned text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Invariants {
    /// Dimension of the scroll
    #[arg(long)]
    pub n: usize,
    /// Dimension N of the ambient projective space
    #[arg(long)]
    pub ambient: usize,
    /// Degree (omit together with --g for formal output)
    #[arg(long, requires = "g", allow_negative_numbers = true)]
    pub d: Option<i64>,
    /// Genus of the base curve
    #[arg(long, requires = "d", allow_negative_numbers = true)]
    pub g: Option<i64>,
}

#[derive(Args, Debug)]
pub struct Sampling {
    /// Number of pseudo-random sample points
    #[arg(long, default_value_t = scrollflex_core::scanner::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Seed of the sample generator
    #[arg(long, default_value_t = scrollflex_core::scanner::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class of the k-th inflectional locus in the L, F basis
    Class(Invariants),
    /// Degree of the k-th inflectional locus
    Degree(Invariants),
    /// Check the Segre-term product pipeline against its closed form
    #[command(name = "verify-theorem3")]
    VerifyTheorem3 {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_k: u64,
    },
    /// Which scrolls with these invariants are uninflected
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Seeded jet-rank scan of an explicit scroll
    Scan {
        /// Summand degrees, e.g. "1,3"
        #[arg(long)]
        scroll: String,
        /// Jet order (defaults to floor(N/n))
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Inflection weights of a rational curve from its Wronskian
    Wronskian {
        /// Degree of a rational normal curve, e.g. "4"
        #[arg(long, conflicts_with = "basis", required_unless_present = "basis")]
        degrees: Option<String>,
        /// File with one polynomial per line: integer coefficients, constant term first
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Jet order (defaults to the span of the basis)
        #[arg(long)]
        k: Option<u32>,
    },
    /// Compare the closed-form class with the applicable oracle
    CrossValidate {
        /// Summand degrees, e.g. "1,2"
        #[arg(long, conflicts_with = "basis", required_unless_present = "basis")]
        scroll: Option<String>,
        /// Rational curve basis file, as for `wronskian`
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Ranks of the jet bundle and its pieces
    Ranks {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            if cli.json {
                print!("{}", out.render_json());
            } else {
                print!("{}", out.render_text());
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
