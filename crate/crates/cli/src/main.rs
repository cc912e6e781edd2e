//! wordmap-lab: evaluate word maps on finite groups, certify words
//! symbolically, and run the numeric SU(n) experiments.
//!
//! Every task prints a human summary to stdout and can write a JSON
//! report (`--out`) whose embedded config replays byte-identically via
//! `rerun`. Diagnostics go to stderr. Exit code 0 on success, 1 when an
//! engine rejects the input or a rerun mismatches, 2 on usage errors.

mod run;

use clap::{Parser, Subcommand, ValueEnum};
use run::{CliError, Execution, Meta, Report, RootField, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use wordmap_core::compact::LengthNorm;
use wordmap_core::imaging::EvalMode;

#[derive(Parser)]
#[command(name = "wordmap-lab", version, about = "word map laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the full JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write a CSV projection to this file (row-shaped results only).
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    /// Enumerate x_1 over class representatives only.
    Pruned,
    /// Enumerate all |G|^d tuples.
    Naive,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> EvalMode {
        match m {
            ModeArg::Pruned => EvalMode::Pruned,
            ModeArg::Naive => EvalMode::Naive,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum NormArg {
    Operator,
    Frobenius,
}

impl From<NormArg> for LengthNorm {
    fn from(n: NormArg) -> LengthNorm {
        match n {
            NormArg::Operator => LengthNorm::Operator,
            NormArg::Frobenius => LengthNorm::Frobenius,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for RootField {
    fn from(f: FieldArg) -> RootField {
        match f {
            FieldArg::Real => RootField::Real,
            FieldArg::Complex => RootField::Complex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a word, canonicalize it, and show its basic structure
    Parse { word: String },
    /// Build a finite group and print its conjugacy class table
    Group {
        /// Shorthand like sl2:5 / psl2:7 / gl2:3, or a JSON descriptor file
        group: String,
    },
    /// Image of the word map on a finite group
    Image {
        group: String,
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
    },
    /// Fiber sizes of the word map, one value per conjugacy class
    Fibers {
        group: String,
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
    },
    /// Smallest k with (Im w)^k = G, or the subgroup the powers stall on
    Width {
        group: String,
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
        #[arg(long, default_value_t = wordmap_core::imaging::DEFAULT_WIDTH_CAP)]
        cap: u32,
    },
    /// Compare fibers on inverse class pairs
    Chirality {
        group: String,
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
    },
    /// Does Im(w1) Im(w2) [Im(w3)] cover the group?
    Waring {
        group: String,
        /// Factor words; repeated variables are shifted apart automatically
        #[arg(num_args = 2..=3, required = true)]
        factors: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
    },
    /// Surjectivity of a word over a family of PSL(2,p)
    Scan {
        word: String,
        /// Comma-separated primes, e.g. 5,7,11,13
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
    },
    /// Trace polynomial of a word against a generic SL2 pair
    TracePoly {
        word: String,
        /// Determinant-1 rational 2x2 constants for generators 2, 3, ...
        /// (the first generator stays generic), e.g. --constant '[[0,1],[-1,0]]'
        #[arg(long = "constant", value_name = "JSON")]
        constants: Vec<String>,
    },
    /// Locate a word in the derived series via the Magnus embedding
    Magnus { word: String },
    /// Length decay of the self-commutator tower on Haar samples of SU(n)
    Thom {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
        #[arg(long, default_value_t = 24)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = NormArg::Operator)]
        norm: NormArg,
    },
    /// Search for a tuple with w(X) = target in SU(n)
    Solve {
        word: String,
        /// identity, minus-identity, inline JSON rows, or @file
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Coverage of sampled word images in the normalized rank metric
    Density {
        word: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        targets: usize,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decide k-th root existence in SL(2,R) or SL(2,C), with witness
    Root {
        /// 2x2 matrix, entries as numbers or [re, im] pairs
        #[arg(long, value_name = "JSON")]
        matrix: String,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
        field: FieldArg,
    },
    /// Image and additive width of the Lie bracket on gl2/sl2 over F_p
    Bracket {
        p: u32,
        /// gl2 or sl2
        space: String,
    },
    /// Re-execute a report's config and verify the result is unchanged
    Rerun { report: PathBuf },
}

fn config_from(cmd: Cmd) -> Result<RunConfig, CliError> {
    Ok(match cmd {
        Cmd::Parse { word } => RunConfig::Parse { word },
        Cmd::Group { group } => RunConfig::Group { group: run::resolve_group_spec(&group)? },
        Cmd::Image { group, word, mode } => {
            RunConfig::Image { group: run::resolve_group_spec(&group)?, word, mode: mode.into() }
        }
        Cmd::Fibers { group, word, mode } => {
            RunConfig::Fibers { group: run::resolve_group_spec(&group)?, word, mode: mode.into() }
        }
        Cmd::Width { group, word, mode, cap } => RunConfig::Width {
            group: run::resolve_group_spec(&group)?,
            word,
            mode: mode.into(),
            cap,
        },
        Cmd::Chirality { group, word, mode } => RunConfig::Chirality {
            group: run::resolve_group_spec(&group)?,
            word,
            mode: mode.into(),
        },
        Cmd::Waring { group, factors, mode } => RunConfig::Waring {
            group: run::resolve_group_spec(&group)?,
            factors,
            mode: mode.into(),
        },
        Cmd::Scan { word, primes, mode } => RunConfig::Scan { word, primes, mode: mode.into() },
        Cmd::TracePoly { word, constants } => RunConfig::TracePoly {
            word,
            constants: constants
                .iter()
                .map(|c| run::parse_rational_matrix(c))
                .collect::<Result<_, _>>()?,
        },
        Cmd::Magnus { word } => RunConfig::Magnus { word },
        Cmd::Thom { dim, kmax, samples, seed, norm } => {
            RunConfig::Thom { dim, kmax, samples, seed, norm: norm.into() }
        }
        Cmd::Solve { word, target, dim, seed, budget, tol } => RunConfig::Solve {
            word,
            dim,
            target: run::parse_target(&target, dim)?,
            seed,
            budget,
            tol,
        },
        Cmd::Density { word, dim, samples, targets, epsilon, seed } => {
            RunConfig::Density { word, dim, samples, targets, epsilon, seed }
        }
        Cmd::Root { matrix, k, field } => {
            RunConfig::Root { field: field.into(), k, matrix: run::parse_matrix_rows(&matrix)? }
        }
        Cmd::Bracket { p, space } => {
            RunConfig::Bracket { p, space: space.parse().map_err(CliError::Usage)? }
        }
        Cmd::Rerun { .. } => unreachable!("rerun is dispatched separately"),
    })
}

#[cfg(feature = "parallel")]
fn setup_threads(n: Option<usize>) {
    if let Some(n) = n {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("note: could not size the thread pool: {e}");
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn setup_threads(n: Option<usize>) {
    if n.is_some_and(|n| n > 1) {
        eprintln!("note: built without the parallel feature; running on one thread");
    }
}

fn meta(started: Instant) -> Meta {
    Meta {
        tool: "wordmap-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        threads: wordmap_core::thread_count(),
        timing_ms: started.elapsed().as_millis() as u64,
    }
}

fn emit(
    out: Option<&PathBuf>,
    csv: Option<&PathBuf>,
    report: &Report,
    exec: &Execution,
) -> Result<(), CliError> {
    println!("{}", exec.summary);
    if let Some(path) = out {
        std::fs::write(path, run::report_json(report))
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
        println!("report: {}", path.display());
    }
    if let Some(path) = csv {
        let Some(text) = &exec.csv else {
            return Err(CliError::Usage("this task has no tabular projection".into()));
        };
        std::fs::write(path, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
        println!("csv: {}", path.display());
    }
    Ok(())
}

fn real_main(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let Cli { cmd, out, csv, .. } = cli;
    if let Cmd::Rerun { report: path } = &cmd {
        let (stored, exec, matches) = run::rerun(path)?;
        let report =
            Report { config: stored.config, result: exec.result.clone(), meta: meta(started) };
        emit(out.as_ref(), csv.as_ref(), &report, &exec)?;
        if matches {
            println!("reproduced: result matches the stored report");
            return Ok(());
        }
        return Err(CliError::Domain(format!(
            "rerun of {} produced a different result",
            path.display()
        )));
    }
    let config = config_from(cmd)?;
    let exec = run::execute(&config)?;
    let report = Report { config, result: exec.result.clone(), meta: meta(started) };
    emit(out.as_ref(), csv.as_ref(), &report, &exec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    setup_threads(cli.threads);
    match real_main(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
