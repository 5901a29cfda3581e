//! `strata`: batch front end over strata-core. Every command prints one JSON
//! document on standard output. Exit codes: 0 success, 2 bad input, 1 internal
//! invariant violation.

mod commands;
mod error;
mod formats;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "strata", version, about = "Supports, Koszul complexes, Stanley-Reisner towers and Adams resolutions over graded polynomial rings")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Largest codegree examined by degreewise computations.
    #[arg(long, global = true, default_value_t = 30)]
    pub d_max: i64,
    /// Largest tower stage searched.
    #[arg(long, global = true, default_value_t = 8)]
    pub n_max: usize,
    /// Coefficient field overriding the inputs: `Q`, `F7` or `7`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Order of Hilbert series expansions.
    #[arg(long, global = true, default_value_t = 30)]
    pub expand: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Support of a module presentation or a perfect complex.
    Support {
        #[arg(long, conflicts_with = "complex", required_unless_present = "complex")]
        module: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Koszul complex on the generators of an ideal file, with its homology.
    Koszul {
        #[arg(long)]
        ideal: PathBuf,
        /// Tensor with the presentation complex of this module.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Regular sequence test for the generators of an ideal file.
    Regseq {
        #[arg(long)]
        ideal: PathBuf,
        /// Ideal J of the ambient quotient R/J; defaults to zero.
        #[arg(long)]
        quotient: Option<PathBuf>,
    },
    /// Power torsion of a module with respect to an ideal.
    Torsion {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Complete intersection test for a Stanley-Reisner ideal.
    SrCi {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Tower of odd spherical fibrations for a complete intersection.
    SociTower {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Cohomology ring of the Davis-Januszkiewicz space.
    Dj {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Hilbert series of R/I.
    Hilbert {
        #[arg(long)]
        ideal: PathBuf,
        /// Ring for ideal files without one.
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// Specialization closed subset naming the thick subcategory of the given complexes.
    ThickClassify {
        #[arg(long = "complex", num_args = 0..)]
        complexes: Vec<PathBuf>,
        /// Ring used when no complex is given.
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// Koszul generator of the thick subcategory named by a subset.
    ThickGenerator {
        #[arg(long)]
        ring: PathBuf,
        /// JSON list of 1-based variable lists, e.g. `[[1],[1,2]]`.
        #[arg(long)]
        subset: PathBuf,
    },
    /// Adams tower of R -> R/(X) for the regular sequence in an ideal file.
    Adams {
        #[arg(long)]
        ideal: PathBuf,
        /// Report the homology of R/I^{⊗n}.
        #[arg(long)]
        n: Option<usize>,
        /// Search the injectivity bound for this complex.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Exactness check of I^{⊗n} ⊗ A -> R/I^{⊗(n+1)} -> R/I^{⊗n}.
    PoCheck {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Compare the thick subcategories generated by two complexes.
    FfOrder {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Cohomology dimensions of a free graded-commutative dg algebra.
    DgCohomology {
        #[arg(long)]
        dga: PathBuf,
    },
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input("io", format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::input("io", format!("cannot read {}: {e}", path.display())))
    }
}

fn emit(v: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            emit(&CliError::input("usage", msg.trim_end()).to_json());
            return ExitCode::from(2);
        }
    };
    let result = std::panic::catch_unwind(|| commands::run(&cli));
    match result {
        Ok(Ok(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            emit(&e.to_json());
            ExitCode::from(e.exit_code())
        }
        Err(_) => {
            emit(&CliError::Internal("computation panicked".into()).to_json());
            ExitCode::from(1)
        }
    }
}
