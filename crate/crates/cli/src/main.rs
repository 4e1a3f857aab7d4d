//! `gtc`: generalized toric codes from the command line.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gtc_core::verify::Budget;

#[derive(Parser)]
#[command(name = "gtc", version, about = "Generalized toric codes over small finite fields")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Emit a JSON report instead of the text table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(p^h): modulus, primitive element, optionally the log table.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Print every element with its discrete log.
        #[arg(long)]
        table: bool,
    },
    /// Parameters [n, k, d] of the code of a point set.
    Code {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Enumerate one codeword per torus orbit (exhaustive engine).
        #[arg(long)]
        orbits: bool,
        /// Report n and k only.
        #[arg(long)]
        no_distance: bool,
    },
    /// Full Minkowski length and its maximal decompositions.
    Minklen {
        #[command(flatten)]
        source: Source,
        /// Field orders at which to evaluate the distance bounds.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Lower bounds and the segment-case prediction, optionally against the true distance.
    Bounds {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        /// Also compute the minimum distance at each q.
        #[arg(long)]
        compute: bool,
    },
    /// Factorization-pattern census of u^l + t_1 u^k_1 + ... + t_m.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        #[arg(long)]
        ell: u32,
        /// Exponents k_1 > ... > k_{m-1} > 0 of the middle terms.
        #[arg(long, value_delimiter = ',')]
        ks: Vec<u32>,
        /// Also report the scaling-orbit structure of the split members.
        #[arg(long)]
        orbits: bool,
    },
    /// Primes p in a range for which the family has a split member over GF(p).
    SplitPrimes {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_delimiter = ',')]
        ks: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Point counts and smoothness on the cubic family a x^2 y + b x y^2 + c x y z + d z^3.
    Cubics {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = CubicCheck::All)]
        check: CubicCheck,
        /// Recount the supersingular members over GF(q^2).
        #[arg(long)]
        quadratic: bool,
    },
    /// Recompute the published tables and diff against the shipped values.
    Verify {
        /// Tables to check (default: all).
        tables: Vec<String>,
        #[arg(long, default_value = "quick")]
        budget: Budget,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// JSON document {"p", "h", "m", "points"} or {"vertices"}.
    file: Option<std::path::PathBuf>,
    /// A shipped figure: figure1 .. figure4.
    #[arg(long)]
    figure: Option<String>,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic, overriding the document.
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree, overriding the document.
    #[arg(long)]
    h: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Exhaustive,
    Bz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CubicCheck {
    All,
    Divby3,
    Supersingular,
    Predict,
    T0s,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("report serializes"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
