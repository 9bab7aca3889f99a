//! Task-prioritized route planning on waypoint graphs under a mission time budget.
//!
//! A mission is a 3D waypoint graph whose edges carry a task: a priority, a risk
//! percentage and an on-site completion time. A route is a simple path from the
//! start waypoint to the destination that should collect as much task weight as
//! possible while keeping total travel-plus-task time close to the available
//! mission time.
//!
//! Candidate routes are encoded as priority vectors: one real value per waypoint,
//! decoded greedily from the start node by always moving to the unvisited
//! neighbor with the highest priority. That keeps every candidate a connected
//! walk by construction and lets continuous optimizers search over routes. Two
//! engines are provided, a genetic algorithm ([`ga`]) and particle swarm
//! optimization ([`pso`]), plus an exhaustive oracle ([`oracle`]) for small
//! graphs and a Monte Carlo benchmark harness ([`bench`]).
//!
//! ```
//! use taskroute::{generate_scenario, CostParams, GaConfig, ScenarioConfig};
//!
//! let scenario = ScenarioConfig { n_nodes: 12, seed: 7, ..ScenarioConfig::default() };
//! let graph = generate_scenario(&scenario).unwrap();
//! let params = CostParams { t_available: 20_000.0, ..CostParams::default() };
//! let cfg = GaConfig { population_size: 20, max_generations: 15, ..GaConfig::default() };
//! let result = taskroute::ga::evolve(&graph, &cfg, &params).unwrap();
//! assert_eq!(result.best_route.nodes.first(), Some(&graph.start));
//! ```

pub mod bench;
pub mod codec;
pub mod config;
pub mod cost;
pub mod error;
pub mod ga;
pub mod graph;
pub mod oracle;
pub mod pso;
pub mod solve;

pub use bench::{monte_carlo, run_once, AlgoConfig, Algorithm, CampaignConfig, CampaignReport,
                RunRecord};
pub use codec::{decode, repair, route_metrics, validate, PriorityVector, Route, RouteMetrics,
                RouteViolation, ValidationReport};
pub use config::RunConfig;
pub use cost::{cost_route, cost_task, cost_total, evaluate, selection_cost, violation,
               CostBreakdown, CostParams, Evaluation};
pub use error::{Error, Result};
pub use ga::{evolve, GaConfig};
pub use graph::{generate_scenario, load_graph, save_graph, Edge, MissionGraph, ScenarioConfig,
                Task, Waypoint};
pub use oracle::{enumerate_simple_paths, optimal_route_bruteforce, OracleResult};
pub use pso::{run_pso, SwarmConfig};
pub use solve::{HistoryPoint, SolveResult};
