use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altpath::io::{read_graphs, write_digraph6, write_edge_list, Format};
use altpath::report::{emit_report, OutFormat, OutcomeJson};
use altpath::sweep::{run_sweep, SweepConfig, SweepError, SweepMode};
use altpath_core::generate::blowup_directed_cycle;
use altpath_core::oracle::{longest_alt_path_exact, OracleBudget};
use altpath_core::{find_alternating_path, largest_qualifying_k, FinderBudget, FinderOutcome};
use clap::{Parser, Subcommand};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET_OR_IO: u8 = 3;

/// Alternating paths in oriented graphs.
#[derive(Parser)]
#[command(name = "altpath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print degree statistics and the longest alternating path order.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Look for an alternating path on k vertices; prints one JSON object per graph.
    Find {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        budget_rounds: Option<usize>,
    },
    /// Batch checks over generated graphs.
    Sweep(SweepArgs),
    /// Write a generated graph.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: SweepMode,
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    samples: u64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inclusive cycle-length range for blowups.
    #[arg(long, value_parser = parse_range, default_value = "3..5")]
    t_range: (usize, usize),
    /// Inclusive class-size range for blowups.
    #[arg(long, value_parser = parse_range, default_value = "1..3")]
    b_range: (usize, usize),
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    out_format: OutFormat,
    /// Zero timings so the report is byte-identical across runs.
    #[arg(long)]
    stable: bool,
    /// Keep only aggregates.
    #[arg(long)]
    no_records: bool,
}

#[derive(Subcommand)]
enum Construct {
    /// Blow-up of a directed t-cycle with classes of b vertices.
    Blowup {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("altpath: {msg}");
    ExitCode::from(EXIT_BUDGET_OR_IO)
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check(file: &Path, format: Option<Format>) -> ExitCode {
    let graphs = match read_graphs(file, format.unwrap_or_else(|| Format::guess(file))) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let budget = OracleBudget::default();
    for g in &graphs {
        let s = g.degree_summary();
        let show = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let longest = longest_alt_path_exact(g, &budget);
        println!(
            "n={} edges={} min_semidegree={} min_pseudo_semidegree={} largest_k={} longest={}",
            g.n(),
            s.edge_count,
            show(s.min_semidegree),
            show(s.min_pseudo_semidegree),
            show(largest_qualifying_k(s.min_pseudo_semidegree)),
            longest
                .as_ref()
                .map_or_else(|e| format!("unknown ({e})"), |(l, _)| l.to_string()),
        );
        if let Ok((_, witness)) = &longest {
            println!("witness {witness}");
        }
    }
    ExitCode::SUCCESS
}

fn find(file: &Path, k: usize, format: Option<Format>, rounds: Option<usize>) -> ExitCode {
    let graphs = match read_graphs(file, format.unwrap_or_else(|| Format::guess(file))) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let budget = FinderBudget {
        rounds,
        ..FinderBudget::default()
    };
    let mut gave_up = false;
    for g in &graphs {
        let run = find_alternating_path(g, k, &budget);
        gave_up |= matches!(run.outcome, FinderOutcome::GaveUp { .. });
        println!(
            "{}",
            serde_json::to_string(&OutcomeJson::from(&run)).expect("plain data")
        );
    }
    if gave_up {
        ExitCode::from(EXIT_BUDGET_OR_IO)
    } else {
        ExitCode::SUCCESS
    }
}

fn sweep(args: SweepArgs) -> ExitCode {
    let mut cfg = SweepConfig::new(args.mode)
        .samples(args.samples)
        .p(args.p)
        .seed(args.seed)
        .workers(args.workers)
        .records(!args.no_records)
        .stable(args.stable);
    if let Some(n) = args.n {
        cfg = cfg.n(n);
    }
    if let Some((lo, hi)) = args.n_range {
        cfg = cfg.n_range(lo, hi);
    }
    cfg.k = args.k;
    cfg.t_range = args.t_range;
    cfg.b_range = args.b_range;

    let report = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e @ (SweepError::VacuousParams { .. } | SweepError::BadConfig(_))) => {
            eprintln!("altpath: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => return fail(e),
    };
    let written = output(args.out.as_deref())
        .and_then(|mut w| emit_report(&report, args.out_format, &mut w).and_then(|()| w.flush()));
    if let Err(e) = written {
        return fail(e);
    }
    eprintln!("{}", report.summary());
    let a = &report.aggregate;
    for m in &a.audit.messages {
        eprintln!("audit: {m}");
    }
    if a.counterexamples > 0 || a.audit.failures > 0 {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    } else {
        ExitCode::SUCCESS
    }
}

fn construct(what: Construct) -> ExitCode {
    let Construct::Blowup { t, b, out, format } = what;
    let g = match blowup_directed_cycle(t, b) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let text = match format {
        Format::Edgelist => write_edge_list(&g),
        Format::Digraph6 => write_digraph6(&g) + "\n",
    };
    match output(out.as_deref()).and_then(|mut w| w.write_all(text.as_bytes()).and_then(|()| w.flush())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, format } => check(&file, format),
        Command::Find {
            file,
            k,
            format,
            budget_rounds,
        } => find(&file, k, format, budget_rounds),
        Command::Sweep(args) => sweep(args),
        Command::Construct { what } => construct(what),
    }
}
