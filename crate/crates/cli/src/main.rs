use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "supclass",
    version,
    about = "Support classes of SL2(F_q): compute, tabulate and verify"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the conjugation spot-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorruptArg {
    Table,
    Adjacency,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Support-class sizes and GL2 conjugacy-class counts.
    Classes {
        #[arg(long)]
        q: u32,
    },
    /// Product of two support vectors, e.g. `--x B --y 2*C,-1/2*D+`.
    Mul {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// All 49 products of support classes.
    Table {
        #[arg(long)]
        q: u32,
    },
    /// Central idempotents, matrix units, traces and character tables.
    Idempotents {
        #[arg(long)]
        q: u32,
    },
    /// Explicit association scheme: classes, constants and the β table.
    Scheme {
        #[arg(long)]
        q: u32,
        /// d5, merged45, merged12_45 or tilde.
        #[arg(long, default_value = "d5")]
        variant: String,
    },
    /// GL2 class profiles, ranks and the decomposition report.
    Chars {
        #[arg(long)]
        q: u32,
    },
    /// Symmetric fusion constants of the rank-3 subalgebra.
    Fusion {
        #[arg(long)]
        q: u32,
    },
    /// Brute-force verification suite.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        /// Run every module's battery, not just the group-ring oracle.
        #[arg(long)]
        all: bool,
        /// Inject a broken fixture (negative control).
        #[arg(long, value_enum)]
        corrupt: Option<CorruptArg>,
    },
}

fn run(cli: &Cli) -> Result<supclass_core::Report, CliError> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Classes { q } => commands::classes(*q, seed),
        Cmd::Mul { q, x, y } => commands::mul(*q, x, y, seed),
        Cmd::Table { q } => commands::table(*q, seed),
        Cmd::Idempotents { q } => commands::idempotents(*q, seed),
        Cmd::Scheme { q, variant } => commands::scheme(*q, variant, seed),
        Cmd::Chars { q } => commands::chars(*q, seed),
        Cmd::Fusion { q } => commands::fusion(*q, seed),
        Cmd::Verify { q, all, corrupt } => {
            let corrupt = corrupt.map(|c| match c {
                CorruptArg::Table => supclass_core::oracle::Corruption::Table,
                CorruptArg::Adjacency => supclass_core::oracle::Corruption::Adjacency,
            });
            commands::verify(q, *all, corrupt, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = match cli.format {
        Format::Json => report.to_canonical_json() + "\n",
        Format::Text => render::text(&report),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
