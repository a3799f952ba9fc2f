mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "glob-kernel", version, about = "Check finite strict ∞-groupoids, their twisted structures and décalage data")]
struct Cli {
    /// Worker threads for exhaustive sweeps.
    #[arg(long, env = "GLOB_KERNEL_THREADS", global = true)]
    threads: Option<usize>,

    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the structure laws and the selected axioms of a structure file.
    Check {
        file: PathBuf,
        /// Optional axioms beyond Ass and Exc, e.g. `l,r,f,li,ri`.
        #[arg(long, default_value = "")]
        axioms: String,
        /// Maximum counterexamples collected per axiom instance.
        #[arg(long, default_value_t = glob_kernel::omega::DEFAULT_CAP)]
        cap: usize,
    },
    /// Build the twisted structure, truncated one dimension lower.
    Twist {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the décalage checks: section over all small tables, naturality, unit identities.
    Decalage {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Print the décalage generators on the simplex-like category and sweep its laws.
    Delta {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Write a generated structure file.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        /// Group for deloopings and suspensions: `z<n>` or `s3`.
        #[arg(long, default_value = "z2")]
        group: String,
        /// Dimension carrying the group in a suspension.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        /// Cell names of a discrete structure.
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        names: Vec<String>,
        /// Factors of a product.
        #[arg(long, required_if_eq("kind", "product"))]
        left: Option<PathBuf>,
        #[arg(long, required_if_eq("kind", "product"))]
        right: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the globular product of a structure over a table of dimensions.
    Sum { table: String, file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    Discrete,
    Delooping,
    Suspension,
    Product,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mut out = output::Reporter::new(cli.format);
    match cli.command {
        Command::Check { file, axioms, cap } => commands::check(&mut out, &file, &axioms, cap),
        Command::Twist { file, output } => commands::twist(&mut out, &file, output.as_deref()),
        Command::Decalage { file, max_width, max_dim } => commands::decalage(&mut out, &file, max_width, max_dim),
        Command::Delta { max_n } => commands::delta(&mut out, max_n),
        Command::Fixture { kind, group, dim, trunc, names, left, right, output } => {
            let spec = commands::FixtureSpec { kind, group, dim, trunc, names, left, right };
            commands::fixture(&mut out, &spec, output.as_deref())
        }
        Command::Sum { table, file } => commands::sum(&mut out, &table, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
