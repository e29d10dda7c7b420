//! Command-line surface.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "counterpoint",
    version,
    about = "Dichotomy, projection, and successor workbench for two-voice counterpoint on Z_2k"
)]
pub struct Cli {
    /// Even modulus 2k of the tone system
    #[arg(long, global = true, default_value_t = 12)]
    pub modulus: u32,

    /// The consonance half X as a comma-separated list of k residues
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true,
        default_value = "0,3,4,7,8,9"
    )]
    pub consonances: Vec<i64>,

    /// Emit the machine-readable JSON record instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Projection-table cache file (read if valid, rewritten otherwise)
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Worker threads for the parallel sweeps (default: rayon's choice)
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find the unique polarity of the dichotomy, or diagnose why there is none
    Polarity,

    /// Enumerate all strong dichotomies of Z_2k
    Dichotomies {
        /// Print only how many there are
        #[arg(long)]
        count_only: bool,
    },

    /// Maximal projections and admitted successors for downbeat y and upbeat z
    Projections {
        /// Downbeat interval (must be consonant)
        #[arg(short = 'y', value_name = "Y", allow_negative_numbers = true)]
        y: Option<i64>,

        /// Upbeat interval
        #[arg(short = 'z', value_name = "Z", allow_negative_numbers = true)]
        z: Option<i64>,

        /// Sweep every (y, z) cell instead of a single one
        #[arg(long, conflicts_with_all = ["y", "z"])]
        all: bool,

        /// Re-derive every cell with the brute-force oracle and compare
        #[arg(long)]
        oracle: bool,
    },

    /// Admitted successors of the 2-interval c + e1.x + e2.y
    Successors {
        /// The source 2-interval as "c,x,y"
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            value_name = "C,X,Y"
        )]
        interval: Vec<i64>,

        /// Also print the admitting projections in matrix form
        #[arg(long)]
        matrix: bool,

        /// Re-derive the cell with the brute-force oracle and compare
        #[arg(long)]
        oracle: bool,
    },

    /// Validate every transition of a composition file
    Check {
        /// Composition JSON document
        path: PathBuf,

        /// Also print the admitting projections in matrix form
        #[arg(long)]
        matrix: bool,
    },

    /// Run the rule-comparison experiment and report the contingency table
    Compare {
        /// Which dissonance treatment to probe: 1 (dissonant upbeat) or 2 (consonant upbeat)
        #[arg(long)]
        case: u8,

        /// Candidate universe: "all" or "fs-valid"
        #[arg(long, default_value = "all")]
        universe: String,

        /// Drop case 1's requirement that the downbeat progression be a
        /// valid first-species step (sensitivity analysis)
        #[arg(long)]
        case1_no_fs_step: bool,
    },
}
