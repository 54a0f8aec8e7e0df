//! The `rootoidlab` command line tool.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rootoidlab",
    version,
    about = "Build, classify and export finite protorootoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elaborate a structure file into a canonical protorootoid file.
    Build {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide every classification property and the rootoid axioms.
    Classify {
        input: PathBuf,
        /// Print the report as a JSON document.
        #[arg(long)]
        json: bool,
        /// Check join orthogonality on all families instead of pairs.
        #[arg(long)]
        exhaustive_jop: bool,
        /// Abridge before classifying.
        #[arg(long)]
        abridge_first: bool,
    },
    /// Export a weak order as DOT, its cover relation or the cocycle as TSV.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "weak-order")]
        what: ExportKind,
        /// Object whose weak order to export (defaults to the first object).
        #[arg(long)]
        object: Option<String>,
    },
    /// Grade a morphism between two structures.
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// Build the universal cover of a protorootoid.
    Cover {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the covering morphism.
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
    /// Replace each ring by the subring generated by the weak order.
    Abridge {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate a Coxeter system and verify its root combinatorics.
    Coxeter {
        /// Named type: A<n>, B<n>, D<n>, E6, E7, E8, F4, H3, H4 or I2(<m>).
        #[arg(long = "type", conflicts_with = "matrix")]
        kind: Option<String>,
        /// Coxeter matrix as JSON, with 0 or "inf" for infinity.
        #[arg(long)]
        matrix: Option<String>,
        /// Comma separated generator labels.
        #[arg(long)]
        labels: Option<String>,
        /// Only enumerate elements up to this length.
        #[arg(long)]
        cutoff: Option<usize>,
        /// Comma separated generators of a reflection subgroup.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the chamber protorootoid of a central hyperplane arrangement.
    Arrangement {
        /// Normals as `a,b;c,d;...`.
        #[arg(long)]
        normals: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    WeakOrder,
    Hasse,
    RootTable,
}
