//! Result types shared by the two optimization engines.

use serde::{Deserialize, Serialize};

use crate::codec::{Route, RouteMetrics, ValidationReport};
use crate::cost::CostBreakdown;

/// One point of a convergence history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryPoint {
    /// Generation (GA) or iteration (PSO); 0 is the initial population/swarm.
    pub iteration: usize,
    /// Best selection cost seen so far; monotone non-increasing.
    pub best_cost: f64,
    /// Mean selection cost of the current population/swarm.
    pub mean_cost: f64,
}

/// Best candidate found by an engine plus its convergence history.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best_route: Route,
    /// Metrics of the best route; absent when even the best candidate has a
    /// nonexistent hop.
    pub metrics: Option<RouteMetrics>,
    pub report: ValidationReport,
    pub cost: CostBreakdown,
    pub history: Vec<HistoryPoint>,
}

impl SolveResult {
    pub fn feasible(&self) -> bool {
        self.report.feasible
    }
}
