use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Diagram groups, Thompson's group F and wreath product experiments.
#[derive(Parser, Debug)]
#[command(name = "dg", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Presentation used to read diagrams and elements.
    #[arg(long, global = true, value_enum, default_value_t = Preset::F)]
    pub preset: Preset,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest random diagram drawn by sampling verbs.
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cells: u64,
    /// Largest ball any BFS may build.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ball: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    F,
    U,
    W,
    Z3,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// The integers.
    Z,
    /// The lamplighter-like group Z wr Z.
    Zwrz,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupName {
    F,
    Z,
    Zwrz,
    /// The diagram group of W, generated by the images of t and a.
    W,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a diagram file; prints cell counts on stderr.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Product of group elements, as a reduced diagram.
    Mul {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Diagram distance and embedded squared distance of two elements.
    Dist { a: String, b: String },
    /// Cell addresses of an element.
    Embed { element: String },
    #[command(subcommand)]
    F(FCommand),
    #[command(subcommand)]
    U(UCommand),
    #[command(subcommand)]
    Wreath(WreathCommand),
    /// Sphere and ball sizes of a Cayley graph.
    Growth {
        #[arg(long, value_enum)]
        group: GroupName,
        #[arg(long)]
        radius: usize,
    },
    #[command(subcommand)]
    Zwrz(ZwrzCommand),
    /// Graphviz rendering of a diagram or element.
    ExportDot { element: String },
    /// Quick versions of the acceptance checks.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum FCommand {
    /// Cell counts of the commuting families and their signed products.
    Skew {
        #[arg(long)]
        n: usize,
        /// `all`, `random:K`, or an explicit string over `+` and `-`.
        #[arg(long, default_value = "random:1")]
        signs: String,
        /// Add a word length column from a ball in {x0, x1} bounded by
        /// `--max-ball`; lengths past its radius `R` print as `>R`.
        #[arg(long)]
        lengths: bool,
    },
    /// Word length against cell count over a ball in {x0, x1}.
    Ball {
        #[arg(long)]
        radius: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum UCommand {
    /// Rewrite elements of the universal group over x0, x1, x2.
    Rewrite {
        /// An element; omit to sample with `--random`.
        element: Option<String>,
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WreathCommand {
    /// Exact word length in Z wr H.
    Len {
        #[arg(long, value_enum, default_value_t = Base::Z)]
        h: Base,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// The families w_b over the ball B_n of H.
    Wr2 {
        #[arg(long, value_enum, default_value_t = Base::Z)]
        h: Base,
        #[arg(long)]
        n: usize,
        /// Report K random signed products instead.
        #[arg(long)]
        products: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZwrzCommand {
    /// Images of Z wr Z elements in the diagram group of W.
    Embed {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Word length against cell count over a ball of Z wr Z.
    Propb {
        #[arg(long)]
        radius: usize,
    },
}

/// Exit statuses, one per failure class.
pub mod status {
    pub const CHECK_FAILED: u8 = 1;
    pub const INVALID_INPUT: u8 = 3;
    pub const CAP_EXCEEDED: u8 = 4;
    pub const IO: u8 = 5;
}

fn exit_status(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return status::IO;
        }
        if let Some(e) = cause.downcast_ref::<diagram_core::Error>() {
            return match e {
                diagram_core::Error::CapExceeded(_) => status::CAP_EXCEEDED,
                _ => status::INVALID_INPUT,
            };
        }
        if cause.downcast_ref::<commands::CheckFailed>().is_some() {
            return status::CHECK_FAILED;
        }
    }
    status::INVALID_INPUT
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
