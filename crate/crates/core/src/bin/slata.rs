use std::io::Read;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use slata::workbench::{self, Direction, Format, Kind, Output, WorkbenchConfig, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "slata",
    version,
    about = "Finite-model workbench for semilattice duality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 7)]
    max_size: usize,
    /// Largest space on which S4 is checked exhaustively.
    #[arg(long, default_value_t = slata::sspace::DEFAULT_S4_LIMIT)]
    s4_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Common {
    fn config(&self) -> WorkbenchConfig {
        WorkbenchConfig {
            seed: self.seed,
            count: self.count,
            max_size: self.max_size,
            s4_limit: self.s4_limit,
            format: self.format,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against the axioms for its kind.
    Validate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Input file, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dual space of a semilattice or Slata.
    Dualize {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Move between meet-relations, multirelations, σ-relations and SlataSpaces.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        input: PathBuf,
    },
    /// Goldens plus the seeded roundtrip battery.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
    /// Print a seeded random instance with its certificate.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Graphviz rendering of a document.
    ExportDot {
        #[arg(long, value_enum)]
        kind: Kind,
        input: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String, Output> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map(|_| text).map_err(|e| Output {
        code: EXIT_INPUT,
        text: slata::json::render(
            &serde_json::json!({"error": format!("{}: {e}", path.display())}),
        ),
    })
}

fn main() {
    let cli = Cli::parse();
    let out = (|| -> Result<Output, Output> {
        Ok(match &cli.command {
            Command::Validate {
                kind,
                input,
                common,
            } => workbench::cmd_validate(&read(input)?, *kind, &common.config()),
            Command::Dualize { input, common } => {
                workbench::cmd_dualize(&read(input)?, &common.config())
            }
            Command::Convert { direction, input } => {
                workbench::cmd_convert(&read(input)?, *direction)
            }
            Command::Selftest { common } => workbench::cmd_selftest(&common.config()),
            Command::Gen { kind, common } => workbench::cmd_gen(&common.config(), *kind),
            Command::ExportDot { kind, input } => workbench::cmd_export_dot(&read(input)?, *kind),
        })
    })()
    .unwrap_or_else(|e| e);
    print!("{}", out.text);
    process::exit(out.code);
}
