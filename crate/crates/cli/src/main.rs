mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use bn_cells::cells::Relation;
use bn_cells::conjectures::{P15Mode, P15_SEED};
use bn_cells::par;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Kazhdan-Lusztig cells of type B_n with asymptotic parameters.
#[derive(Parser, Debug)]
#[command(name = "bncells", version)]
struct Cli {
    /// Worker threads for the table sweeps (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run above the default rank limit.
    #[arg(long)]
    force: bool,
}

/// One-parameter weights `L(s_i) = a`, `L(t) = b`; the asymptotic
/// two-parameter algebra when both are omitted.
#[derive(Args, Debug, Clone, Copy)]
pub struct Regime {
    #[arg(long, requires = "b")]
    a: Option<i64>,
    #[arg(long, requires = "a")]
    b: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump every p*_{y,w}.
    Kl {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        regime: Regime,
    },
    /// Left, right or two-sided cells with their Hasse diagram.
    Cells {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        regime: Regime,
        #[arg(long, default_value = "lr")]
        relation: Relation,
    },
    /// The generalised Robinson-Schensted map of one element or of all of W_n.
    Rs {
        /// Element in window notation, e.g. "[-1,2]".
        #[arg(long, conflicts_with = "rank")]
        element: Option<String>,
        #[arg(long, required_unless_present = "element")]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// a, Delta, n_z, membership in D and alpha for every element.
    Alpha {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        regime: Regime,
    },
    /// Lusztig's conjectures P1-P15 and the T_{w0} degree bounds.
    Conjectures {
        #[command(flatten)]
        common: Common,
        /// Check P15 on every quadruple even above rank 2.
        #[arg(long)]
        p15_exhaustive: bool,
        #[arg(long, default_value_t = 100_000)]
        p15_samples: usize,
        #[arg(long, default_value_t = P15_SEED)]
        seed: u64,
        /// Also print experimental eigenvalue sign data for T_{w0} on left cells.
        #[arg(long)]
        epsilon: bool,
    },
    /// Compare the asymptotic KL basis with the one for weights (a, b).
    Specialize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Every exhaustive theorem check at one rank.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<bn_cells::Error> for CliError {
    fn from(e: bn_cells::Error) -> Self {
        match e {
            bn_cells::Error::Parse(_)
            | bn_cells::Error::InvalidElement(_)
            | bn_cells::Error::OutOfRange(_)
            | bn_cells::Error::RankMismatch(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Finished command: the artifact text and whether every check held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

const TABLE_LIMIT: usize = 4;
const CHECK_LIMIT: usize = 3;

fn group_order(n: usize) -> f64 {
    (1..=n).map(|i| 2.0 * i as f64).product()
}

fn guard(rank: usize, limit: usize, force: bool, what: &str) -> Result<(), CliError> {
    if rank == 0 {
        return Err(CliError::Usage("--rank must be at least 1".into()));
    }
    if rank <= limit || force {
        return Ok(());
    }
    let size = group_order(rank);
    Err(CliError::Usage(format!(
        "refusing {what} at rank {rank}: W_{rank} has {size:.0} elements, so the KL table holds up to {:.2e} polynomials \
         and the structure constants {:.2e} products; the default limit is rank {limit}, pass --force to run anyway",
        size * size / 2.0,
        size * size,
    )))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Kl { common, regime } => {
            guard(common.rank, TABLE_LIMIT, common.force, "kl")?;
            render::kl(&common, regime)
        }
        Command::Cells { common, regime, relation } => {
            guard(common.rank, TABLE_LIMIT, common.force, "cells")?;
            render::cells(&common, regime, relation)
        }
        Command::Rs { element, rank, format, out: _, force } => match element {
            Some(e) => render::rs_one(&e, format),
            None => {
                let rank = rank.unwrap_or(0);
                guard(rank, 6, force, "rs")?;
                render::rs_all(rank, format)
            }
        },
        Command::Alpha { common, regime } => {
            guard(common.rank, CHECK_LIMIT, common.force, "alpha")?;
            render::alpha_cmd(&common, regime)
        }
        Command::Conjectures { common, p15_exhaustive, p15_samples, seed, epsilon } => {
            guard(common.rank, CHECK_LIMIT, common.force, "conjectures")?;
            let mode = if p15_exhaustive || common.rank <= 2 {
                P15Mode::Exhaustive
            } else {
                P15Mode::Sample { count: p15_samples, seed }
            };
            render::conjectures(&common, mode, epsilon)
        }
        Command::Specialize { common, a, b } => {
            guard(common.rank, CHECK_LIMIT, common.force, "specialize")?;
            render::specialize(&common, a, b)
        }
        Command::Report { common } => {
            guard(common.rank, CHECK_LIMIT, common.force, "report")?;
            render::report(&common)
        }
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    match &cli.command {
        Command::Kl { common, .. }
        | Command::Cells { common, .. }
        | Command::Alpha { common, .. }
        | Command::Conjectures { common, .. }
        | Command::Specialize { common, .. }
        | Command::Report { common } => common.out.clone(),
        Command::Rs { out, .. } => out.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = out_path(&cli);
    let jobs = cli.jobs;
    match par::with_jobs(jobs, move || run(cli)) {
        Ok(outcome) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
