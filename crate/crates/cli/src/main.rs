mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qring::{CoeffRing, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qring", version, about = "Exact computations in quandle rings")]
pub struct Cli {
    /// Coefficient ring: Z, Q or Zmod:m.
    #[arg(long, global = true)]
    pub ring: Option<String>,

    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,

    /// Largest power of the augmentation ideal to compute.
    #[arg(long = "max-k", global = true, default_value_t = 4)]
    pub max_k: usize,

    /// Coefficient radius for exhaustive scans.
    #[arg(long = "box", global = true, default_value_t = 2)]
    pub radius: i64,

    /// Read the quandle from a JSON file instead of the catalog.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog keys.
    List,
    /// Print a quandle in the JSON exchange format.
    Export { key: Option<String> },
    /// Axioms, flags and orbits.
    Info { key: Option<String> },
    /// Powers of the augmentation ideal and their successive quotients.
    Graded { key: Option<String>, k: Option<usize> },
    /// Order of the graded quotients of dihedral quandles.
    Conjecture {
        #[arg(value_delimiter = ',', default_value = "3,4,5,6,7,8,9")]
        n: Vec<usize>,
    },
    /// Basis of an ideal: a power of the augmentation ideal or a closure.
    Ideal {
        key: Option<String>,
        /// `delta`, `deltaK` (e.g. `delta2`) or `aug`.
        #[arg(long)]
        ideal: Option<String>,
        /// Generator coordinates, comma separated; repeatable.
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// The subquandles determined by an ideal.
    Partition {
        key: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Compare the blocks of every pair of base points.
        #[arg(long)]
        orbit_iso: bool,
    },
    /// Kernel ideal of a homomorphism and the fiber it recovers.
    Dictionary {
        key: Option<String>,
        #[arg(long)]
        target: String,
        /// Images of 0..n, comma separated. Defaults to the first surjection.
        #[arg(long, value_delimiter = ',')]
        map: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Units of the extended ring.
    Units {
        key: Option<String>,
        /// Coordinates `a0,...,a(n-1),e` of a single element to test.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        element: Option<Vec<String>>,
        /// Exhaustive check of the split sequence over Zmod:m.
        #[arg(long)]
        split: bool,
    },
    /// Center of the integral quandle ring.
    Center {
        key: Option<String>,
        /// Build the central unit e + alpha*w for a latin quandle.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Iterated commutators in the extended ring of T2.
    Commutators {
        /// Augmentation of v.
        #[arg(long, allow_hyphen_values = true)]
        ev: String,
        /// Augmentation of u.
        #[arg(long, allow_hyphen_values = true)]
        eu: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Associativity of the quandle ring.
    Assoc { key: Option<String> },
    /// The identities u^2 u = u u^2 and (u^2 u) u = u^2 u^2.
    PowerAssoc {
        key: Option<String>,
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        symbolic: bool,
        /// Test one element `a0,...,a(n-1)` instead of scanning the box.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        element: Option<Vec<i64>>,
    },
    /// Search for an isomorphism between two quandles.
    Iso { a: String, b: Option<String> },
}

pub struct RunConfig {
    pub ring: Option<CoeffRing>,
    pub max_k: usize,
    pub radius: i64,
    pub file: Option<PathBuf>,
}

pub const MAX_K_CAP: usize = 16;
pub const MAX_RADIUS_CAP: i64 = 1000;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisNotMet(_)
        | Error::NotAnIdeal(_)
        | Error::NotClosed
        | Error::SingularUnit(_)
        | Error::NonUnit(_)
        | Error::NonUnitAugmentation(_) => 1,
        Error::ResourceLimit { .. } => 3,
        _ => 2,
    }
}

fn config(cli: &Cli) -> qring::Result<RunConfig> {
    if cli.max_k == 0 {
        return Err(Error::InvalidInput("--max-k must be positive".into()));
    }
    if cli.max_k > MAX_K_CAP {
        return Err(Error::ResourceLimit { what: "--max-k", cap: MAX_K_CAP });
    }
    if cli.radius < 0 {
        return Err(Error::InvalidInput("--box must be non-negative".into()));
    }
    if cli.radius > MAX_RADIUS_CAP {
        return Err(Error::ResourceLimit { what: "--box", cap: MAX_RADIUS_CAP as usize });
    }
    let ring = cli.ring.as_deref().map(CoeffRing::parse).transpose()?;
    Ok(RunConfig { ring, max_k: cli.max_k, radius: cli.radius, file: cli.file.clone() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(&cli).and_then(|cfg| commands::run(&cli.command, &cfg));
    match result {
        Ok(out) => {
            let text = match cli.format {
                Format::Table => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json value") + "\n",
            };
            print!("{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", serde_json::json!({ "error": e.to_string(), "code": exit_code(&e) }));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
