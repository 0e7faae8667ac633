use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lp2d_core::format::write_problem;
use lp2d_core::gen::{gen, GenKind, GenSpec, DEFAULT_MARGIN};
use lp2d_core::reduce::ReduceStrategy;
use lp2d_core::serial::DEFAULT_BOUND;
use lp2d_core::{Scheduler, Tolerance, DEFAULT_BLOCK_WIDTH};
use lp2d_cli::contention::{contention_bench, contention_levels, DEFAULT_ELEMENTS};
use lp2d_cli::records::{emit, read_run_records, Format};
use lp2d_cli::sweep::{mixed_batch, record_batch, relative_speedup, sweep_batch, sweep_size, SweepOptions};
use lp2d_cli::verify::verify;

#[derive(Parser)]
#[command(name = "lp2d", version, about = "Batch 2D LP solver benchmarks and verification")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    reps: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_BLOCK_WIDTH)]
    block_width: usize,
    #[arg(long, global = true, value_enum, default_value_t = SchedulerArg::Both)]
    scheduler: SchedulerArg,
    /// Output file; records are appended.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchedulerArg {
    Naive,
    Balanced,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Feasible,
    Infeasible,
    Adversarial,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Feasible => GenKind::FeasibleRandom,
            KindArg::Infeasible => GenKind::Infeasible,
            KindArg::Adversarial => GenKind::AdversarialOrdered,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fixed batch, varied LP size.
    SweepSize {
        #[arg(long, default_value_t = 128)]
        batch: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Also time the brute-force oracle (sizes up to its cap).
        #[arg(long)]
        with_oracle: bool,
    },
    /// Fixed LP size, varied batch amount.
    SweepBatch {
        #[arg(long, default_value_t = 64)]
        size: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        batches: Vec<usize>,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Naive over balanced wall time, from a record file or a mixed-size run.
    Relative {
        /// Run records written by sweep-size or sweep-batch.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Sizes cycled across the batch when no input is given.
        #[arg(long, value_delimiter = ',', default_value = "16,1024")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_BLOCK_WIDTH)]
        batch: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Feasible)]
        kind: KindArg,
    },
    /// Segmented min/max reduction strategies across contention levels.
    Contention {
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        contentions: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_ELEMENTS)]
        elements: usize,
    },
    /// Cross-check oracle, serial, naive and balanced on random instances.
    Verify {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 128)]
        max_size: usize,
    },
    /// Write one generated problem in lp2d v1 format.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Feasible)]
        kind: KindArg,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: f64,
    },
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Jsonl => Format::Jsonl,
    }
}

fn sweep_options(common: &Common, with_oracle: bool) -> SweepOptions {
    SweepOptions {
        block_width: common.block_width,
        schedulers: match common.scheduler {
            SchedulerArg::Naive => vec![Scheduler::Naive],
            SchedulerArg::Balanced => vec![Scheduler::Balanced],
            SchedulerArg::Both => vec![Scheduler::Naive, Scheduler::Balanced],
        },
        with_oracle,
        ..SweepOptions::default()
    }
}

fn write_text(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let common = &cli.common;
    if common.block_width == 0 {
        bail!("--block-width must be at least 1");
    }
    if common.reps == 0 {
        bail!("--reps must be at least 1");
    }
    let format = format_of(common.format);
    let out = common.out.as_deref();
    match cli.command {
        Command::SweepSize { batch, sizes, with_oracle } => {
            let recs = sweep_size(batch, &sizes, common.reps, common.seed, &sweep_options(common, with_oracle))?;
            emit(&recs, format, out)?;
        }
        Command::SweepBatch { size, batches, with_oracle } => {
            let recs = sweep_batch(size, &batches, common.reps, common.seed, &sweep_options(common, with_oracle))?;
            emit(&recs, format, out)?;
        }
        Command::Relative { input, sizes, batch, kind } => {
            let records = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    read_run_records(&text, format)?
                }
                None => {
                    let opts = SweepOptions {
                        with_serial: false,
                        ..sweep_options(common, false)
                    };
                    let b = mixed_batch(&sizes, batch, kind.into(), common.seed)?;
                    let lp_size = sizes.iter().copied().max().unwrap_or(0);
                    let mut recs = Vec::new();
                    for rep in 0..common.reps {
                        recs.extend(record_batch(&b, &format!("mixed-r{rep}"), lp_size, common.seed, &opts)?);
                    }
                    recs
                }
            };
            emit(&relative_speedup(&records), format, out)?;
        }
        Command::Contention { strategies, contentions, elements } => {
            let strategies = if strategies.is_empty() {
                ReduceStrategy::ALL.to_vec()
            } else {
                strategies
                    .iter()
                    .map(|s| ReduceStrategy::parse(s).with_context(|| format!("unknown strategy {s}")))
                    .collect::<anyhow::Result<_>>()?
            };
            let contentions = if contentions.is_empty() { contention_levels() } else { contentions };
            let recs = contention_bench(&strategies, &contentions, common.reps, elements, common.seed)?;
            emit(&recs, format, out)?;
        }
        Command::Verify { count, max_size } => {
            let report = verify(count, max_size, common.seed, common.block_width, &Tolerance::default())?;
            write_text(&report.to_string(), out)?;
            if !report.passed() {
                return Ok(Outcome::VerificationFailed);
            }
        }
        Command::Gen { m, kind, margin, bound } => {
            let spec = GenSpec {
                interior_margin: margin,
                bound_m: bound,
                ..GenSpec::new(kind.into(), m, common.seed)
            };
            write_text(&write_problem(&gen(&spec)?), out)?;
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
