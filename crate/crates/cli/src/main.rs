//! `trig`: command-line front end.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "trig", version, about = "Exact computations for trigonal curves")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Scalar field: `q` or `p=<prime>` with prime > 3.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    P(u64),
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "q" {
        return Ok(FieldSpec::Q);
    }
    let p: u64 = s
        .strip_prefix("p=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| format!("expected `q` or `p=<prime>`, got `{s}`"))?;
    trigonal::algebra::PrimeField::new(p).map_err(|e| e.to_string())?;
    Ok(FieldSpec::P(p))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern class pipeline and Picard groups.
    #[command(subcommand)]
    Chow(ChowCmd),
    /// Binary cubics, cubic algebras and singularities.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Matrices of linear forms and splitting types.
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// Run the acceptance checks.
    Verify {
        /// Comma-separated check keys.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChowCmd {
    /// Class of W in the equivariant Chow ring.
    ClassW,
    /// Class of Y_g, symbolic in g or at a fixed genus.
    ClassY {
        #[arg(long, conflicts_with = "symbolic", value_parser = clap::value_parser!(i64).range(2..))]
        genus: Option<i64>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Picard groups over a range of genera.
    Picard {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(2..))]
        from: i64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(2..))]
        to: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Membership of f + εg in W.
    Singular {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Structure constants of the cubic algebra of a binary cubic.
    Build {
        #[arg(long)]
        cubic: String,
    },
    /// Singular points of a trigonal datum read from JSON.
    Smooth {
        #[arg(long)]
        input: std::path::PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BundleCmd {
    /// Splitting type of the cokernel of a matrix read from JSON.
    Split {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Whether the matrix has full rank at every point.
    Degeneracy {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Random or exhaustive degeneracy statistics over F_p.
    Probe {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        exhaustive: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            output::report_usage(e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    let res = match cli.command {
        Command::Chow(c) => commands::chow(&cli.global, c),
        Command::Cover(c) => commands::cover(&cli.global, c),
        Command::Bundle(c) => commands::bundle(&cli.global, c),
        Command::Verify { only } => commands::verify(&cli.global, only),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            output::report_error(&e);
            ExitCode::from(e.exit_code())
        }
    }
}
