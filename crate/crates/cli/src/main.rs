mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use subtree_core::{Error, ErrorKind};

use crate::commands::{
    BstemTableArgs, DecreaseArgs, JamisonArgs, MuArgs, ScanArgs, ThresholdArgs, TrendArgs,
};
use crate::output::Format;

/// Exact subtree counts and mean subtree orders.
#[derive(Parser, Debug)]
#[command(name = "subtree", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Omit timing so that identical runs give identical output.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Worker threads (overrides CENSUS_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subtree statistics of one graph or family member.
    Mu(MuArgs),
    /// Search for star sizes where adding chords lowers the mean.
    Decrease(DecreaseArgs),
    /// Compare K_m + nK_1 with K_{m,n} for n = 1..n-max.
    Threshold(ThresholdArgs),
    /// Look for mean-decreasing edge additions.
    Scan(ScanArgs),
    /// Check mu(T) >= (n + 2) / 3 on every labelled tree.
    Jamison(JamisonArgs),
    /// Counts f(a, b) of b-stems per class.
    BstemTable(BstemTableArgs),
    /// Densities along the star-size sequence s_n = ceil(2 log2 n).
    Trend(TrendArgs),
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(io::Error),
    /// A check reported by the command itself did not hold.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Resource => 3,
                ErrorKind::Invariant => 4,
            },
            Failure::Io(_) => 2,
            Failure::Check(_) => 4,
        }
    }
}

fn configure_jobs(jobs: Option<usize>) {
    let jobs = jobs.or_else(|| std::env::var("CENSUS_JOBS").ok()?.parse().ok());
    if let Some(n) = jobs.filter(|&n| n > 0) {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_jobs(cli.jobs);
    let start = Instant::now();
    let (mut report, check) = match cli.command {
        Command::Mu(a) => (commands::mu(&a)?, Ok(())),
        Command::Decrease(a) => (commands::decrease(&a)?, Ok(())),
        Command::Threshold(a) => (commands::threshold(&a)?, Ok(())),
        Command::Scan(a) => (commands::scan(&a)?, Ok(())),
        Command::Jamison(a) => commands::jamison(&a)?,
        Command::BstemTable(a) => (commands::bstem_table(&a)?, Ok(())),
        Command::Trend(a) => (commands::trend(&a)?, Ok(())),
    };
    if !cli.deterministic {
        report.elapsed = Some(start.elapsed());
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    report.write(cli.format, &mut out)?;
    out.flush()?;
    check.map_err(Failure::Check)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Check(m) => eprintln!("check failed: {m}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
