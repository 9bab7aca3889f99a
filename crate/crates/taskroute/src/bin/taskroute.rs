//! Thin command-line driver: scenario generation, single solves, Monte Carlo
//! campaigns and oracle checks. Set RUST_LOG for diagnostics.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
//! 3 no feasible route.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use taskroute::bench::{self, AlgoConfig, Algorithm, RunRecord};
use taskroute::oracle;
use taskroute::{load_graph, save_graph, Error, MissionGraph, RunConfig};

#[derive(Parser)]
#[command(name = "taskroute", version, about = "Time-budgeted task routing on waypoint graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random scenario and write it as a graph file
    Generate {
        /// Run configuration file (JSON); defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the scenario seed from the configuration
        #[arg(long)]
        seed: Option<u64>,
        /// Output graph file
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one graph with one engine and report the route
    Solve {
        /// Graph file produced by `generate` (or hand-written)
        #[arg(long)]
        graph: PathBuf,
        /// Engine to run
        #[arg(long)]
        algo: CliAlgo,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the engine seed from the configuration
        #[arg(long)]
        seed: Option<u64>,
        /// Report file; a convergence history lands next to it
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a GA-vs-PSO Monte Carlo campaign
    Bench {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the campaign master seed from the configuration
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for records, summary and histories
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exhaustive optimum on a small graph, optionally compared to the engines
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also run GA and PSO and print their optimality gaps
        #[arg(long)]
        compare: bool,
        /// Node-count cap for the exhaustive search
        #[arg(long)]
        guard: Option<usize>,
        /// Engine seed override for --compare
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliAlgo {
    Ga,
    Pso,
}

impl From<CliAlgo> for Algorithm {
    fn from(a: CliAlgo) -> Algorithm {
        match a {
            CliAlgo::Ga => Algorithm::Ga,
            CliAlgo::Pso => Algorithm::Pso,
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NoFeasibleRoute | Error::InitializationFailure => 3,
        Error::Io(_) | Error::Csv(_) => 2,
        _ => 1,
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, Error> {
    match path {
        Some(p) => RunConfig::load(p).map_err(|e| match e {
            // a missing or unreadable config file is a configuration error
            Error::Io(io) => Error::Config(format!("cannot read config: {io}")),
            other => other,
        }),
        None => Ok(RunConfig::default()),
    }
}

fn read_graph(path: &Path) -> Result<MissionGraph, Error> {
    let bytes = std::fs::read(path)?;
    load_graph(&bytes)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate { config, seed, out } => cmd_generate(&config, seed, &out),
        Command::Solve { graph, algo, config, seed, out, format } => {
            cmd_solve(&graph, algo, &config, seed, &out, format)
        }
        Command::Bench { config, seed, out, format } => cmd_bench(&config, seed, &out, format),
        Command::Oracle { graph, config, compare, guard, seed } => {
            cmd_oracle(&graph, &config, compare, guard, seed)
        }
    }
}

fn cmd_generate(config: &Option<PathBuf>, seed: Option<u64>, out: &Path) -> Result<ExitCode, Error> {
    let mut cfg = load_config(config)?;
    if let Some(s) = seed {
        cfg.scenario.seed = s;
    }
    let graph = taskroute::generate_scenario(&cfg.scenario)?;
    std::fs::write(out, save_graph(&graph)?)?;
    println!("generated graph: {} nodes, {} edges -> {}", graph.n_nodes(), graph.edges().len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn summary_block(record: &RunRecord) {
    let feasibility = if record.feasible { "Yes" } else { "No" };
    println!("Algorithm                  {}", record.algorithm);
    println!("Optimum route              {{{}}}", join_ids(&record.route));
    println!("CPU Run Time(sec)          {:.3}", record.cpu_time_s);
    println!("Best Cost                  {:.6}", record.best_cost);
    println!("Total Available Time(sec)  {}", record.t_available_s);
    println!("Route Travel Time(sec)     {:.1}", record.t_route_s);
    println!("Total Distance             {:.1}", record.total_distance_m);
    println!("Total Weight               {:.3}", record.total_weight);
    println!("N-Tasks                    {}", record.n_tasks);
    println!("Violation                  {:.6}", record.violation);
    println!("Feasibility                {feasibility}");
}

fn join_ids(ids: &[u32]) -> String {
    ids.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_solve(
    graph_path: &Path,
    algo: CliAlgo,
    config: &Option<PathBuf>,
    seed: Option<u64>,
    out: &Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, Error> {
    let cfg = load_config(config)?;
    let graph = read_graph(graph_path)?;

    let mut engine = match Algorithm::from(algo) {
        Algorithm::Ga => AlgoConfig::Ga(cfg.ga),
        Algorithm::Pso => AlgoConfig::Pso(cfg.pso),
    };
    if let Some(s) = seed {
        engine = engine.with_seed(s);
    }

    let record = bench::run_once(&graph, &engine, &cfg.cost);
    if record.route.is_empty() || !record.feasible {
        eprintln!("no feasible route found");
        return Ok(ExitCode::from(3));
    }

    summary_block(&record);
    if let Some(out) = out {
        write_records(std::slice::from_ref(&record), out, format)?;
        let history_path = out.with_extension("history.csv");
        std::fs::write(&history_path, bench::emit_history_csv(&record.history))?;
        println!("report -> {}", out.display());
        println!("history -> {}", history_path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn write_records(records: &[RunRecord], out: &Path, format: Format) -> Result<(), Error> {
    let body = match format {
        Format::Csv => bench::emit_records_csv(records)?,
        Format::Json => bench::emit_records_json(records)?,
    };
    std::fs::write(out, body)?;
    Ok(())
}

fn cmd_bench(
    config: &Option<PathBuf>,
    seed: Option<u64>,
    out_dir: &Path,
    format: Format,
) -> Result<ExitCode, Error> {
    let mut cfg = load_config(config)?;
    if let Some(s) = seed {
        cfg.scenario.seed = s;
    }
    let report = bench::monte_carlo(&cfg.campaign())?;

    std::fs::create_dir_all(out_dir)?;
    let records_path = out_dir.join(match format {
        Format::Csv => "records.csv",
        Format::Json => "records.json",
    });
    write_records(&report.records, &records_path, format)?;
    std::fs::write(out_dir.join("campaign.json"), bench::emit_campaign_json(&report)?)?;

    let history_dir = out_dir.join("histories");
    std::fs::create_dir_all(&history_dir)?;
    for (i, record) in report.records.iter().enumerate() {
        if record.history.is_empty() {
            continue;
        }
        let name = format!("run_{:04}_{}.csv", i / 2, record.algorithm.to_string().to_lowercase());
        std::fs::write(history_dir.join(name), bench::emit_history_csv(&record.history))?;
    }

    for summary in [&report.ga, &report.pso] {
        println!(
            "{}: weight mean {:.3} (sd {:.3}), t_route mean {:.1} s (sd {:.1}), feasibility {:.1}%",
            summary.algorithm,
            summary.total_weight.mean,
            summary.total_weight.stddev,
            summary.t_route.mean,
            summary.t_route.stddev,
            100.0 * summary.feasibility_rate,
        );
    }
    println!("reports -> {}", out_dir.display());

    let completed = report.records.iter().filter(|r| !r.route.is_empty()).count();
    if completed == 0 {
        eprintln!("no run produced a route");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(
    graph_path: &Path,
    config: &Option<PathBuf>,
    compare: bool,
    guard: Option<usize>,
    seed: Option<u64>,
) -> Result<ExitCode, Error> {
    let cfg = load_config(config)?;
    let graph = read_graph(graph_path)?;
    let guard = guard.unwrap_or(oracle::DEFAULT_ENUMERATION_GUARD);

    let result = oracle::optimal_route_bruteforce_guarded(&graph, &cfg.cost, guard)?;
    println!("optimal route              {{{}}}", join_ids(&result.best_route.nodes));
    println!("optimal cost               {:.9}", result.best_cost.cost_total);
    println!("simple paths enumerated    {}", result.n_paths_enumerated);

    if compare {
        for mut engine in [AlgoConfig::Ga(cfg.ga), AlgoConfig::Pso(cfg.pso)] {
            if let Some(s) = seed {
                engine = engine.with_seed(s);
            }
            let record = bench::run_once(&graph, &engine, &cfg.cost);
            if record.route.is_empty() || !record.feasible {
                println!("{}: no feasible route found", engine.algorithm());
                continue;
            }
            let gap = (record.best_cost - result.best_cost.cost_total) / result.best_cost.cost_total;
            println!(
                "{}: cost {:.9}, gap {:.4}%, route {{{}}}",
                record.algorithm,
                record.best_cost,
                100.0 * gap,
                join_ids(&record.route),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
