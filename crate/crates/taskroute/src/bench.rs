//! Benchmark harness: seeded single runs, GA-vs-PSO Monte Carlo campaigns and
//! CSV/JSON report emission. Every derived metric on a record can be recomputed
//! from the stored route, the graph and the cost parameters.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cost::{evaluate, violation, CostParams};
use crate::error::{Error, Result};
use crate::ga::{evolve, GaConfig};
use crate::graph::{generate_scenario, MissionGraph, ScenarioConfig};
use crate::pso::{run_pso, SwarmConfig};
use crate::solve::{HistoryPoint, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "GA")]
    Ga,
    #[serde(rename = "PSO")]
    Pso,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ga => "GA",
            Algorithm::Pso => "PSO",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ga" => Ok(Algorithm::Ga),
            "pso" => Ok(Algorithm::Pso),
            other => Err(Error::InvalidParameter(format!("unknown algorithm '{other}', expected ga or pso"))),
        }
    }
}

/// Engine choice together with its configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AlgoConfig {
    Ga(GaConfig),
    Pso(SwarmConfig),
}

impl AlgoConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgoConfig::Ga(_) => Algorithm::Ga,
            AlgoConfig::Pso(_) => Algorithm::Pso,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            AlgoConfig::Ga(c) => c.seed,
            AlgoConfig::Pso(c) => c.seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        match &mut self {
            AlgoConfig::Ga(c) => c.seed = seed,
            AlgoConfig::Pso(c) => c.seed = seed,
        }
        self
    }
}

/// One solver execution with every reported metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Wall-clock seconds around the engine call only.
    pub cpu_time_s: f64,
    pub best_cost: f64,
    pub t_available_s: f64,
    pub t_route_s: f64,
    pub total_distance_m: f64,
    pub total_weight: f64,
    pub n_tasks: usize,
    pub violation: f64,
    pub feasible: bool,
    pub route: Vec<u32>,
    /// Convergence history; emitted separately, not a CSV column.
    #[serde(default)]
    pub history: Vec<HistoryPoint>,
}

fn failed_record(algo: Algorithm, seed: u64, cpu_time_s: f64, p: &CostParams) -> RunRecord {
    RunRecord {
        algorithm: algo,
        seed,
        cpu_time_s,
        best_cost: p.penalty,
        t_available_s: p.t_available,
        t_route_s: 0.0,
        total_distance_m: 0.0,
        total_weight: 0.0,
        n_tasks: 0,
        violation: 0.0,
        feasible: false,
        route: Vec::new(),
        history: Vec::new(),
    }
}

/// Runs one engine on one graph. The returned route is re-validated and
/// re-evaluated independently of the engine's own bookkeeping; engine errors
/// come back as a failed (penalty-cost, infeasible) record.
pub fn run_once(g: &MissionGraph, cfg: &AlgoConfig, p: &CostParams) -> RunRecord {
    let started = Instant::now();
    let outcome: Result<SolveResult> = match cfg {
        AlgoConfig::Ga(c) => evolve(g, c, p),
        AlgoConfig::Pso(c) => run_pso(g, c, p),
    };
    let cpu_time_s = started.elapsed().as_secs_f64();

    let result = match outcome {
        Ok(r) => r,
        Err(_) => return failed_record(cfg.algorithm(), cfg.seed(), cpu_time_s, p),
    };
    let ev = evaluate(&result.best_route, g, p);
    let (t_route, distance, weight, n_tasks) = match &ev.metrics {
        Some(m) => (m.t_route, m.total_distance, m.total_weight, m.n_tasks),
        None => (0.0, 0.0, 0.0, 0),
    };
    RunRecord {
        algorithm: cfg.algorithm(),
        seed: cfg.seed(),
        cpu_time_s,
        best_cost: ev.cost.cost_total,
        t_available_s: p.t_available,
        t_route_s: t_route,
        total_distance_m: distance,
        total_weight: weight,
        n_tasks,
        violation: if t_route > 0.0 { violation(t_route, p.t_available).unwrap_or(0.0) } else { 0.0 },
        feasible: ev.report.feasible,
        route: result.best_route.nodes,
        history: result.history,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub n_runs: usize,
    /// `scenario.seed` acts as the campaign's master seed.
    pub scenario: ScenarioConfig,
    /// Engine seeds are overridden per run, derived from the master seed.
    pub ga: GaConfig,
    pub pso: SwarmConfig,
    pub cost: CostParams,
    /// Fresh graph per run (the Monte Carlo protocol) or one shared graph.
    pub regenerate_graph_per_run: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            n_runs: 100,
            scenario: ScenarioConfig::default(),
            ga: GaConfig::default(),
            pso: SwarmConfig::default(),
            cost: CostParams::default(),
            regenerate_graph_per_run: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats {
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

impl DistributionStats {
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return DistributionStats { mean: 0.0, stddev: 0.0, min: 0.0, max: 0.0 };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let stddev = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        DistributionStats { mean, stddev, min, max }
    }
}

/// Per-algorithm aggregate over a campaign: the two Monte Carlo metrics plus
/// the feasibility rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoSummary {
    pub algorithm: Algorithm,
    pub t_route: DistributionStats,
    pub total_weight: DistributionStats,
    /// Fraction of runs whose returned route passed every criterion.
    pub feasibility_rate: f64,
}

fn summarize(records: &[RunRecord], algo: Algorithm) -> AlgoSummary {
    let of_algo: Vec<&RunRecord> = records.iter().filter(|r| r.algorithm == algo).collect();
    let completed: Vec<&&RunRecord> = of_algo.iter().filter(|r| !r.route.is_empty()).collect();
    let times: Vec<f64> = completed.iter().map(|r| r.t_route_s).collect();
    let weights: Vec<f64> = completed.iter().map(|r| r.total_weight).collect();
    let feasible = of_algo.iter().filter(|r| r.feasible).count();
    AlgoSummary {
        algorithm: algo,
        t_route: DistributionStats::from_values(&times),
        total_weight: DistributionStats::from_values(&weights),
        feasibility_rate: if of_algo.is_empty() { 0.0 } else { feasible as f64 / of_algo.len() as f64 },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub n_runs: usize,
    pub master_seed: u64,
    pub records: Vec<RunRecord>,
    pub ga: AlgoSummary,
    pub pso: AlgoSummary,
}

/// Counter-based split of the master seed; run `index` gets an independent,
/// reproducible stream.
fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The Monte Carlo protocol: `n_runs` GA/PSO pairs, each pair on the same
/// graph with the same derived engine seed. Graph generation failures yield
/// failed records instead of aborting the campaign.
pub fn monte_carlo(cfg: &CampaignConfig) -> Result<CampaignReport> {
    if cfg.n_runs == 0 {
        return Err(Error::Config("n_runs must be at least 1".into()));
    }
    let master = cfg.scenario.seed;
    let shared = if cfg.regenerate_graph_per_run {
        None
    } else {
        Some(generate_scenario(&cfg.scenario)?)
    };

    let mut records = Vec::with_capacity(cfg.n_runs * 2);
    for run in 0..cfg.n_runs as u64 {
        let graph_seed = derive_seed(master, 2 * run);
        let engine_seed = derive_seed(master, 2 * run + 1);
        let graph = match &shared {
            Some(g) => g.clone(),
            None => {
                let scenario = ScenarioConfig { seed: graph_seed, ..cfg.scenario.clone() };
                match generate_scenario(&scenario) {
                    Ok(g) => g,
                    Err(e) => {
                        log::warn!("run {run}: scenario generation failed: {e}");
                        records.push(failed_record(Algorithm::Ga, engine_seed, 0.0, &cfg.cost));
                        records.push(failed_record(Algorithm::Pso, engine_seed, 0.0, &cfg.cost));
                        continue;
                    }
                }
            }
        };
        records.push(run_once(&graph, &AlgoConfig::Ga(GaConfig { seed: engine_seed, ..cfg.ga }), &cfg.cost));
        records.push(run_once(&graph, &AlgoConfig::Pso(SwarmConfig { seed: engine_seed, ..cfg.pso }), &cfg.cost));
    }

    Ok(CampaignReport {
        n_runs: cfg.n_runs,
        master_seed: master,
        ga: summarize(&records, Algorithm::Ga),
        pso: summarize(&records, Algorithm::Pso),
        records,
    })
}

pub const CSV_COLUMNS: [&str; 12] = [
    "algorithm",
    "seed",
    "cpu_time_s",
    "best_cost",
    "t_available_s",
    "t_route_s",
    "total_distance_m",
    "total_weight",
    "n_tasks",
    "violation",
    "feasible",
    "route",
];

fn route_field(route: &[u32]) -> String {
    route.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
}

/// Records as CSV with the fixed column set; the route is a space-separated
/// id list. Floats print in shortest-round-trip form, so parsing them back is
/// exact.
pub fn emit_records_csv(records: &[RunRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_COLUMNS)?;
    for r in records {
        writer.write_record([
            r.algorithm.to_string(),
            r.seed.to_string(),
            r.cpu_time_s.to_string(),
            r.best_cost.to_string(),
            r.t_available_s.to_string(),
            r.t_route_s.to_string(),
            r.total_distance_m.to_string(),
            r.total_weight.to_string(),
            r.n_tasks.to_string(),
            r.violation.to_string(),
            r.feasible.to_string(),
            route_field(&r.route),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Config(format!("csv flush failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn parse_records_csv(text: &str) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(Error::Config(format!("unexpected CSV columns: {headers:?}")));
    }

    fn field<T: FromStr>(record: &csv::StringRecord, idx: usize, name: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        record
            .get(idx)
            .ok_or_else(|| Error::Config(format!("missing column {name}")))?
            .parse()
            .map_err(|e| Error::Config(format!("bad {name} value: {e}")))
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let route_text: String = field(&row, 11, "route")?;
        let route = route_text
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Config(format!("bad route node: {e}"))))
            .collect::<Result<Vec<u32>>>()?;
        records.push(RunRecord {
            algorithm: field::<String>(&row, 0, "algorithm")?.parse()?,
            seed: field(&row, 1, "seed")?,
            cpu_time_s: field(&row, 2, "cpu_time_s")?,
            best_cost: field(&row, 3, "best_cost")?,
            t_available_s: field(&row, 4, "t_available_s")?,
            t_route_s: field(&row, 5, "t_route_s")?,
            total_distance_m: field(&row, 6, "total_distance_m")?,
            total_weight: field(&row, 7, "total_weight")?,
            n_tasks: field(&row, 8, "n_tasks")?,
            violation: field(&row, 9, "violation")?,
            feasible: field(&row, 10, "feasible")?,
            route,
            history: Vec::new(),
        });
    }
    Ok(records)
}

pub fn emit_records_json(records: &[RunRecord]) -> Result<String> {
    Ok(serde_json::to_string_pretty(records)?)
}

pub fn parse_records_json(text: &str) -> Result<Vec<RunRecord>> {
    Ok(serde_json::from_str(text)?)
}

pub fn emit_campaign_json(report: &CampaignReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

/// Convergence history as CSV: iteration, best_cost, mean_cost.
pub fn emit_history_csv(history: &[HistoryPoint]) -> String {
    let mut out = String::from("iteration,best_cost,mean_cost\n");
    for h in history {
        out.push_str(&format!("{},{},{}\n", h.iteration, h.best_cost, h.mean_cost));
    }
    out
}
