//! `ngon`: build, verify and inspect Fermat-prime polygon towers, and compile
//! them to straightedge-and-compass constructions.

mod draw;
mod report;
mod tables;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ngon_core::invariant_sets::{build_invariant_sets, InvariantSetTable};
use ngon_core::residues::FermatParams;
use ngon_core::tower::ScheduleKind;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ngon", version, about = "Quadratic towers for regular polygons with a Fermat-prime number of sides")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    Full,
    Pruned,
}

impl From<Schedule> for ScheduleKind {
    fn from(s: Schedule) -> Self {
        match s {
            Schedule::Full => ScheduleKind::Full,
            Schedule::Pruned => ScheduleKind::Pruned,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Sets,
    Product,
    Square,
    Mu,
    Ksets,
    Signs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Arith,
    Geom,
}

#[derive(clap::Args)]
struct ModulusArgs {
    /// Number of sides: 3, 5, 17, 257 or 65537.
    #[arg(long)]
    n: u64,
    /// Skip the primality test for Fermat-shaped n.
    #[arg(long)]
    assume_fermat_prime: bool,
    /// Generator used to number the invariant sets.
    #[arg(long, default_value_t = 3)]
    factor: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build, sign, evaluate and verify a tower; print a report.
    Build {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, value_enum, default_value = "pruned")]
        schedule: Schedule,
        /// Mantissa bits (default 128, or 512 for n = 65537).
        #[arg(long)]
        precision: Option<usize>,
        /// Where to write the tower document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a stored tower exactly and numerically.
    Verify {
        #[arg(long)]
        tower: PathBuf,
        /// Re-evaluate at this many bits instead of the stored precision.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Print set, product, multiplicity and sign tables.
    Tables {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        /// Parent level: the table for splitting parts of size 2^m.
        #[arg(long)]
        m: Option<u32>,
        /// Schedule whose signs are listed.
        #[arg(long, value_enum, default_value = "pruned")]
        schedule: Schedule,
    },
    /// Compile an evaluated tower to an arithmetic or geometric program.
    Compile {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        out: PathBuf,
        /// Expand midpoints, perpendiculars and transfers into primitives.
        #[arg(long)]
        expand_macros: bool,
    },
    /// Execute the construction of a tower and draw it as SVG.
    Render {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Vertices drawn for polygons too large to show whole.
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
        #[arg(long, default_value_t = 800)]
        size: u32,
        #[arg(long, default_value_t = 1.0)]
        zoom: f64,
    },
    /// Decide whether a regular N-gon is constructible.
    Constructible { n: u64 },
}

/// A failed run: usage problems exit with 2, failed checks with 1.
pub enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

pub type Outcome = Result<(), Failure>;

pub fn check_failed(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Check(e.into())
}

pub fn params(n: u64, assume: bool) -> anyhow::Result<FermatParams> {
    let p = if assume {
        FermatParams::assume_prime(n)
    } else {
        FermatParams::new(n)
    };
    p.map_err(|e| anyhow!("InvalidN: {e}"))
}

pub fn table(params: FermatParams, factor: u64) -> anyhow::Result<InvariantSetTable> {
    build_invariant_sets(params, factor).map_err(|e| anyhow!("invalid factor: {e}"))
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Build {
            modulus,
            schedule,
            precision,
            out,
        } => {
            let p = params(modulus.n, modulus.assume_fermat_prime)?;
            let t = table(p, modulus.factor)?;
            report::build(&t, schedule.into(), precision, out.as_deref())
        }
        Command::Verify { tower, precision } => report::verify(&tower, precision),
        Command::Tables {
            modulus,
            kind,
            i,
            j,
            m,
            schedule,
        } => {
            let p = params(modulus.n, modulus.assume_fermat_prime)?;
            let t = table(p, modulus.factor)?;
            let text = tables::render(&t, kind, i, j, m, schedule.into())?;
            print!("{text}");
            Ok(())
        }
        Command::Compile {
            tower,
            target,
            out,
            expand_macros,
        } => draw::compile(&tower, target, &out, expand_macros),
        Command::Render {
            tower,
            out,
            max_vertices,
            size,
            zoom,
        } => draw::render(&tower, &out, max_vertices, size, zoom),
        Command::Constructible { n } => {
            if n < 3 {
                return Err(Failure::Usage(anyhow!("n must be at least 3")));
            }
            let c = ngon_core::constructible::constructible(n);
            let verdict = if c.is_constructible() { "yes" } else { "no" };
            println!("{verdict}: {c}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
