mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spf_core::combin::Partition;

#[derive(Parser, Debug)]
#[command(name = "spf", version, about = "Schur functors, their adjoints and strict polynomial functors over F_p")]
pub struct Cli {
    /// Characteristic of the prime field.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// Dimension of the evaluation space (defaults to d).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Degree.
    #[arg(long, global = true, default_value_t = 3)]
    pub d: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "SPF_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Adjoints,
    Simples,
    Mullineux,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    SimpleTensor,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parameters, algebra dimension and simple modules.
    Info,
    /// Evaluates an expression and prints its dimension and character.
    Eval {
        #[arg(long)]
        expr: String,
        /// Evaluation dimension (defaults to n).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Decides whether two expressions give isomorphic modules.
    Iso {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Runs a verification suite and prints one report per claim.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Prints a classification table.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
    },
    /// The Mullineux image of a p-regular partition.
    Mullineux {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
    },
    /// dim Ext¹(L_μ, L_ν) between simple functors.
    Ext {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let code = pool.install(|| commands::run(&cli));
    ExitCode::from(code)
}
