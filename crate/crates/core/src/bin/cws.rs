use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use serde_json::json;

use cws_core::clique::Budget;
use cws_core::code::{read_code_file, CodeFile};
use cws_core::error_model::{ErrorSet, ErrorSetKind};
use cws_core::graph::read_graph6_lines;
use cws_core::orbits::{load_or_compute, render_cache};
use cws_core::report::{load_results, render_csv, render_text};
use cws_core::search::{
    random_search, rerun_requeued, search_graphs, ResultsRow, ResultsTable, SearchOptions,
    SearchOutcome,
};
use cws_core::standard_form::cws_code_from_stabilizer;
use cws_core::verifier::{centralizer_report, verify_detection};
use cws_core::{AxisPerm, CwsError, Result};

#[derive(Parser)]
#[command(
    name = "cws",
    version,
    about = "Search and verify codeword-stabilized quantum codes"
)]
struct Cli {
    /// Increase log verbosity (-v debug, -vv trace).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for codes of length N detecting an error set.
    Search(SearchArgs),
    /// Write LC-orbit representatives as graph6.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print an error set.
    Errors {
        #[command(flatten)]
        set: ErrorSetArgs,
        /// Per-qubit axis permutation, e.g. ID,XZ,YZ.
        #[arg(long)]
        perm: Option<AxisPerm>,
        /// Print one Pauli string per line.
        #[arg(long)]
        list: bool,
    },
    /// Check that a code detects an error set.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        set: ErrorSetArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the detection report as JSON.
        #[arg(long)]
        emit_report: Option<PathBuf>,
    },
    /// Render the results of earlier searches.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Clone)]
struct ErrorSetArgs {
    #[arg(long)]
    n: usize,
    /// ad1, ad2, dephase or custom.
    #[arg(long)]
    error_set: String,
    /// Maximum Z weight for the dephase set.
    #[arg(long)]
    r: Option<usize>,
    /// Pauli strings, one per line, for the custom set.
    #[arg(long)]
    errors_file: Option<PathBuf>,
}

impl ErrorSetArgs {
    fn build(&self) -> Result<ErrorSet> {
        let kind = ErrorSetKind::from_name(&self.error_set, self.r)?;
        match (kind, &self.errors_file) {
            (ErrorSetKind::Custom, Some(path)) => {
                ErrorSet::parse_custom(self.n, &fs::read_to_string(path)?)
            }
            (ErrorSetKind::Custom, None) => Err(CwsError::InvalidParameter(
                "the custom error set needs --errors-file".into(),
            )),
            (_, Some(_)) => Err(CwsError::InvalidParameter(
                "--errors-file only applies to the custom error set".into(),
            )),
            (kind, None) => kind.build(self.n),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    set: ErrorSetArgs,
    /// Sweep every graph representative against every axis permutation.
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    /// Sample random graphs and permutations.
    #[arg(long, requires_all = ["seed", "iterations"])]
    random: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
    /// Graphs to sweep instead of the orbit representatives.
    #[arg(long, conflicts_with = "orbits_cache")]
    graphs: Option<PathBuf>,
    /// Directory for cached orbit representatives.
    #[arg(long)]
    orbits_cache: Option<PathBuf>,
    #[arg(long)]
    connected_only: bool,
    /// Require c·u = 0 for every codeword rather than for every difference.
    #[arg(long)]
    strict_degeneracy: bool,
    /// Write a witness for every best instance of an exhaustive sweep, not one per graph.
    #[arg(long)]
    all_witnesses: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Wall-clock limit per clique search, in seconds.
    #[arg(long)]
    time_limit_per_instance: Option<f64>,
    /// Node limit per clique search.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Re-run the budget-exhausted instances recorded in this output directory.
    #[arg(long, conflicts_with_all = ["random", "graphs"])]
    requeue: bool,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "info",
        1 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp_secs()
        .init();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Search(args) => search(args),
        Command::Orbits {
            n,
            connected_only,
            out,
        } => {
            let reps = load_or_compute(n, connected_only, None)?;
            fs::write(&out, render_cache(n, connected_only, &reps))?;
            println!(
                "{} representatives written to {}",
                reps.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Errors { set, perm, list } => {
            let mut es = set.build()?;
            if let Some(p) = perm {
                es = es.transform(&p)?;
            }
            if list {
                for m in es.members() {
                    println!("{}", m.letter_string());
                }
            } else {
                println!(
                    "{} on {} qubits: {} members",
                    es.kind(),
                    es.num_qubits(),
                    es.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            code,
            set,
            tol,
            emit_report,
        } => verify(&code, &set, tol, emit_report.as_deref()),
        Command::Report { input, csv } => {
            let table = load_results(&input)?;
            if csv {
                print!("{}", render_csv(&table)?);
            } else {
                print!("{}", render_text(&table));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(path: &Path, set: &ErrorSetArgs, tol: f64, emit: Option<&Path>) -> Result<ExitCode> {
    let es = set.build()?;
    let mut centralizer = None;
    let code = match read_code_file(path)? {
        CodeFile::Cws(code) => code,
        CodeFile::Stabilizer(gens) => {
            let report = centralizer_report(&gens, &es)?;
            println!(
                "centralizer check: {} ({} errors in the stabilizer, {} undetectable)",
                if report.ok { "ok" } else { "FAILED" },
                report.in_stabilizer.len(),
                report.violations.len()
            );
            for v in report.violations.iter().take(10) {
                println!("  undetectable: {}", v.letter_string());
            }
            centralizer = Some(report);
            cws_code_from_stabilizer(&gens, Some(&es))?.0
        }
    };
    let report = verify_detection(&code, &es, tol)?;
    println!(
        "(({}, {})) against {} ({} errors), tol {tol:e}: {}",
        code.n,
        code.dimension(),
        es.kind(),
        es.len(),
        if report.ok { "ok" } else { "FAILED" }
    );
    println!("degenerate: {}", report.degenerate);
    if !report.ok {
        println!("{} violations, first ones:", report.violation_count);
        for v in report.violations.iter().take(10) {
            println!("  {v:?}");
        }
    }
    if let Some(out) = emit {
        let mut doc = report.to_json();
        if let Some(c) = &centralizer {
            doc["centralizer_ok"] = json!(c.ok);
            doc["in_stabilizer"] = json!(c
                .in_stabilizer
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>());
        }
        fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")?;
    }
    let ok = report.ok && centralizer.map_or(true, |c| c.ok);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn file_stem(row: &ResultsRow) -> String {
    let mut s = format!("code_n{}_{}", row.n, row.error_set.name());
    if let Some(r) = row.error_set.r() {
        s.push_str(&format!("_r{r}"));
    }
    if let Some(seed) = row.seed {
        s.push_str(&format!("_seed{seed}"));
    }
    if row.strict_degeneracy {
        s.push_str("_strict");
    }
    s
}

fn same_run(a: &ResultsRow, b: &ResultsRow) -> bool {
    (
        a.n,
        a.error_set,
        a.mode,
        a.strict_degeneracy,
        a.connected_only,
        a.seed,
    ) == (
        b.n,
        b.error_set,
        b.mode,
        b.strict_degeneracy,
        b.connected_only,
        b.seed,
    )
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    if let Some(j) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CwsError::InvalidParameter(format!("thread pool: {e}")))?;
    }
    if !args.exhaustive && !args.random && !args.requeue {
        return Err(CwsError::InvalidParameter(
            "choose --exhaustive, --random or --requeue".into(),
        ));
    }
    let es = args.set.build()?;
    let n = es.num_qubits();
    let budget = Budget {
        max_nodes: args.max_nodes,
        time_limit: args.time_limit_per_instance.map(Duration::from_secs_f64),
    };
    let opts = SearchOptions {
        budget,
        strict_degeneracy: args.strict_degeneracy,
        connected_only: args.connected_only,
        orbits_cache: args.orbits_cache.clone(),
        verify_witnesses: n <= cws_core::verifier::MAX_DENSE_QUBITS,
        all_witnesses: args.all_witnesses,
    };
    fs::create_dir_all(&args.out)?;
    let results_path = args.out.join("results.json");
    let mut table = if results_path.is_file() {
        ResultsTable::parse(&fs::read_to_string(&results_path)?)?
    } else {
        ResultsTable::default()
    };

    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let outcome: SearchOutcome = if args.requeue {
        let previous = table
            .rows
            .iter()
            .find(|r| {
                r.n == n
                    && r.error_set == es.kind()
                    && r.strict_degeneracy == args.strict_degeneracy
                    && r.connected_only == args.connected_only
            })
            .ok_or_else(|| CwsError::InvalidParameter("no matching row to re-queue".into()))?;
        info!(
            "re-running {} budget-exhausted instances",
            previous.requeue.len()
        );
        rerun_requeued(previous, &es, &opts)?
    } else if args.random {
        let (seed, iterations) = (args.seed.unwrap_or(0), args.iterations.unwrap_or(0));
        random_search(n, &es, seed, iterations, &opts)?
    } else {
        let graphs = match &args.graphs {
            Some(path) => read_graph6_lines(&fs::read_to_string(path)?)?,
            None => load_or_compute(n, args.connected_only, args.orbits_cache.as_deref())?,
        };
        search_graphs(&graphs, &es, &opts)?
    };

    let SearchOutcome { mut row, codes } = outcome;
    let stem = file_stem(&row);
    if !codes.is_empty() {
        for (k, (code, w)) in codes.iter().zip(row.witnesses.iter_mut()).enumerate() {
            let name = format!("{stem}_{k:03}.json");
            code.write(&args.out.join(&name))?;
            w.file = Some(name);
        }
    }
    let summary = json!({
        "n": row.n,
        "error_set": row.error_set,
        "mode": row.mode,
        "best_k": row.best_k,
        "exhaustive": row.exhaustive,
        "instances": row.instances,
        "budget_exhausted": row.budget_exhausted,
        "elapsed_seconds": row.elapsed_seconds,
        "witnesses": row.witnesses.len(),
    });
    println!("{}", serde_json::to_string(&summary)?);
    if row.budget_exhausted > 0 {
        warn!(
            "{} instances hit the budget; re-run with --requeue and a larger budget",
            row.budget_exhausted
        );
    }
    let found = row.best_k.is_some();
    table.rows.retain(|r| !same_run(r, &row));
    table.rows.push(row);
    fs::write(&results_path, table.to_json_string()? + "\n")?;
    append_manifest(&args, started)?;
    Ok(if found {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn append_manifest(args: &SearchArgs, started: u64) -> Result<()> {
    let path = args.out.join("manifest.json");
    let mut manifest = if path.is_file() {
        serde_json::from_str(&fs::read_to_string(&path)?)?
    } else {
        json!({ "tool": "cws", "version": env!("CARGO_PKG_VERSION"), "runs": [] })
    };
    let run = json!({
        "started_unix": started,
        "args": std::env::args().collect::<Vec<_>>(),
        "n": args.set.n,
        "error_set": args.set.error_set,
        "r": args.set.r,
        "seed": args.seed,
        "iterations": args.iterations,
        "connected_only": args.connected_only,
        "strict_degeneracy": args.strict_degeneracy,
        "all_witnesses": args.all_witnesses,
        "jobs": args.jobs.unwrap_or_else(rayon::current_num_threads),
        "time_limit_per_instance": args.time_limit_per_instance,
        "max_nodes": args.max_nodes,
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let Some(runs) = manifest["runs"].as_array_mut() {
        runs.push(run);
    }
    fs::write(path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}
