use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "yagzhev", version, about = "Exact checks for cubic-homogeneous maps with symmetric Jacobian over Q(i)")]
pub struct Cli {
    /// Print the JSON report instead of the text report
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse every polynomial in a file and print it canonically
    Parse(FileArg),
    /// Jacobian matrix and determinant of a map file
    Jacobian(FileArg),
    /// Map x + grad P from a quartic potential P
    FromPotential(FileArg),
    /// Quartic potential of a map x + H with symmetric Jacobian
    ToPotential(FileArg),
    /// Check the hypotheses on a map and decide every coordinate
    CheckMap(FileArg),
    /// Decide irreducibility of a coordinate x_k + H_k
    Irreducible(IrreducibleArgs),
    /// Replay the divisibility argument on a map
    Replay(ReplayArgs),
    /// Generate seeded instances
    Gen(GenArgs),
    /// Generate nilpotent-Hessian instances and check each one
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct FileArg {
    /// Input file, or `-` for standard input
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct IrreducibleArgs {
    /// Map file, or a file holding the single coordinate polynomial
    #[arg(long)]
    pub file: PathBuf,
    /// 1-based coordinate index (default: every coordinate of a map, or
    /// the coordinate read off a single polynomial)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub coordinate: Option<u64>,
    /// Also run the bounded linear-factor search with this coefficient bound
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub bound: Option<u32>,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// 1-based pivot coordinate (default: all)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub coordinate: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Number of variables
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Term draws and coefficient bound of the random quartic
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub richness: u32,
    /// Emit maps whose given 1-based coordinate is divisible by its variable
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub coordinate: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub richness: u32,
    /// Worker threads; the report does not depend on it
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}
