mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Failure;
use crate::report::Format;

#[derive(Parser)]
#[command(name = "orbitcat", version, about = "Diagram spaces, orbits and the orbit-category adjunction")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a document and report the status of every entity.
    Validate { file: PathBuf },
    /// Orbit enumeration.
    #[command(subcommand)]
    Orbits(OrbitsCommand),
    /// Split a discrete diagram into its orbits.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        dset: String,
    },
    /// Objects and hom-set sizes of an orbit category.
    OrbitCat {
        file: PathBuf,
        #[arg(long)]
        category: String,
        #[arg(long)]
        family: String,
    },
    /// The translation category of a discrete diagram.
    Translation {
        file: PathBuf,
        #[arg(long)]
        dset: String,
    },
    /// Components of the fixed points of a diagram, per orbit.
    Pi0 {
        file: PathBuf,
        #[arg(long)]
        dspace: String,
        #[arg(long)]
        family: String,
    },
    /// Cell complexes.
    #[command(subcommand)]
    Cells(CellsCommand),
    /// The adjunction between presheaves on an orbit category and diagrams.
    #[command(subcommand)]
    Elmendorf(ElmendorfCommand),
}

#[derive(Subcommand)]
enum OrbitsCommand {
    /// One representative per isomorphism class of discrete orbits.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        category: String,
        #[arg(long)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum CellsCommand {
    /// Build a scripted complex and print its stages.
    Build {
        file: PathBuf,
        #[arg(long)]
        script: String,
        /// Check every orbit of the result against this family.
        #[arg(long)]
        check_type: Option<String>,
    },
}

#[derive(Subcommand)]
enum ElmendorfCommand {
    /// Exhaustively check the adjunction, the unit on free cells and K∘Φ ≅ id.
    Check {
        file: PathBuf,
        #[arg(long)]
        category: String,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 2)]
        max_points: usize,
        /// Naturality squares sampled per pair.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of (presheaf, diagram) pairs to enumerate.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u128,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Failure::Usage(String::new()).code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Orbits(OrbitsCommand::Enumerate {
            file,
            category,
            max_size,
        }) => commands::enumerate_orbits(&file, &category, max_size),
        Command::Decompose { file, dset } => commands::decompose(&file, &dset),
        Command::OrbitCat { file, category, family } => commands::orbit_cat(&file, &category, &family),
        Command::Translation { file, dset } => commands::translation(&file, &dset),
        Command::Pi0 { file, dspace, family } => commands::pi0(&file, &dspace, &family),
        Command::Cells(CellsCommand::Build {
            file,
            script,
            check_type,
        }) => commands::cells_build(&file, &script, check_type.as_deref()),
        Command::Elmendorf(ElmendorfCommand::Check {
            file,
            category,
            family,
            max_points,
            samples,
            seed,
            budget,
        }) => commands::elmendorf_check(
            &file,
            &category,
            &family,
            orbitcat::elmendorf::AdjunctionBounds {
                max_points,
                samples,
                seed,
                budget,
            },
        ),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(Failure::Check.code())
            }
        }
        Err((failure, report)) => {
            if let Some(r) = report {
                print!("{}", r.render(cli.format));
            }
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
