//! Priority-vector route encoding: decoding, endpoint repair, feasibility
//! checks and route metrics.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{euclidean_distance, traversal_time, MissionGraph};

/// Priority values are drawn from this range at initialization.
pub const PRIORITY_MIN: f64 = -100.0;
pub const PRIORITY_MAX: f64 = 100.0;

/// One real value per node. The genotype shared by the decoder and PSO.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorityVector {
    pub values: Vec<f64>,
}

impl PriorityVector {
    pub fn new(values: Vec<f64>) -> Self {
        PriorityVector { values }
    }

    /// Random vector with pairwise distinct values in [lo, hi].
    pub fn random<R: Rng>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let mut values: Vec<f64> = Vec::with_capacity(n);
        while values.len() < n {
            let v = rng.gen_range(lo..=hi);
            if !values.contains(&v) {
                values.push(v);
            }
        }
        PriorityVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// An ordered node sequence starting at the mission's start node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Route {
    pub nodes: Vec<u32>,
}

impl Route {
    pub fn new(nodes: Vec<u32>) -> Self {
        Route { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// Aggregate quantities of a route whose hops all exist in the graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouteMetrics {
    /// Total travel + task time in seconds.
    pub t_route: f64,
    /// Sum of priority/risk over route edges; the prize to maximize.
    pub total_weight: f64,
    pub total_distance: f64,
    pub n_tasks: usize,
    pub sum_priority: f64,
    pub sum_risk: f64,
}

/// The five feasibility criteria a valid route must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RouteViolation {
    #[serde(rename = "bad-endpoints")]
    BadEndpoints,
    #[serde(rename = "nonexistent-edge")]
    NonexistentEdge,
    #[serde(rename = "repeated-node")]
    RepeatedNode,
    #[serde(rename = "repeated-edge")]
    RepeatedEdge,
    #[serde(rename = "time-budget-exceeded")]
    TimeBudgetExceeded,
}

impl fmt::Display for RouteViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RouteViolation::BadEndpoints => "bad-endpoints",
            RouteViolation::NonexistentEdge => "nonexistent-edge",
            RouteViolation::RepeatedNode => "repeated-node",
            RouteViolation::RepeatedEdge => "repeated-edge",
            RouteViolation::TimeBudgetExceeded => "time-budget-exceeded",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub feasible: bool,
    pub violations: Vec<RouteViolation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<RouteViolation>) -> Self {
        ValidationReport { feasible: violations.is_empty(), violations }
    }

    pub fn has(&self, v: RouteViolation) -> bool {
        self.violations.contains(&v)
    }

    /// True when some criterion other than the time budget failed. Such routes
    /// have no meaningful metrics and get the flat penalty cost.
    pub fn structurally_infeasible(&self) -> bool {
        self.violations.iter().any(|v| *v != RouteViolation::TimeBudgetExceeded)
    }
}

/// Greedy decode: starting from the graph's start node, repeatedly move to the
/// unvisited neighbor with the highest priority until the destination is
/// appended or no move remains, then apply [`repair`]. Visited nodes are masked
/// with -inf on a working copy; the input vector is never modified. Ties break
/// toward the lowest node id.
pub fn decode(u: &PriorityVector, g: &MissionGraph) -> Route {
    let n = g.n_nodes();
    debug_assert_eq!(u.len(), n, "priority vector length must match node count");

    let mut working = u.values.clone();
    let mut nodes = Vec::with_capacity(n);
    let mut current = g.start;
    nodes.push(current);
    working[current as usize - 1] = f64::NEG_INFINITY;

    while *nodes.last().unwrap() != g.destination && nodes.len() < n {
        let mut best: Option<u32> = None;
        for &nb in g.neighbors(current).expect("current node is always valid") {
            let p = working[nb as usize - 1];
            if p == f64::NEG_INFINITY {
                continue;
            }
            // Ascending neighbor order makes "strictly greater" a lowest-id tie-break.
            if best.map_or(true, |b| p > working[b as usize - 1]) {
                best = Some(nb);
            }
        }
        match best {
            Some(next) => {
                nodes.push(next);
                working[next as usize - 1] = f64::NEG_INFINITY;
                current = next;
            }
            None => break,
        }
    }

    repair(Route::new(nodes), g)
}

/// Destination repair: a partial route that does not end at the destination has
/// its final node replaced by the destination id (appended when the route is a
/// bare start node). Routes already ending at the destination pass through
/// unchanged. The repaired hop may not exist; `validate` reports that.
pub fn repair(partial: Route, g: &MissionGraph) -> Route {
    let mut nodes = partial.nodes;
    match nodes.last() {
        Some(&last) if last == g.destination => {}
        Some(_) if nodes.len() == 1 => nodes.push(g.destination),
        Some(_) => *nodes.last_mut().unwrap() = g.destination,
        None => nodes = vec![g.start, g.destination],
    }
    Route::new(nodes)
}

/// Endpoint, edge-existence and repetition checks (everything except the time
/// budget, which needs metrics).
pub fn structural_violations(r: &Route, g: &MissionGraph) -> Vec<RouteViolation> {
    let mut violations = Vec::new();

    let endpoints_ok = r.nodes.first() == Some(&g.start) && r.nodes.last() == Some(&g.destination);
    if !endpoints_ok {
        violations.push(RouteViolation::BadEndpoints);
    }

    if r.nodes.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        violations.push(RouteViolation::NonexistentEdge);
    }

    let mut seen_nodes = std::collections::HashSet::new();
    if r.nodes.iter().any(|&n| !seen_nodes.insert(n)) {
        violations.push(RouteViolation::RepeatedNode);
    }

    let mut seen_edges = std::collections::HashSet::new();
    if r.nodes
        .windows(2)
        .any(|w| !seen_edges.insert((w[0].min(w[1]), w[0].max(w[1]))))
    {
        violations.push(RouteViolation::RepeatedEdge);
    }

    violations
}

/// Full feasibility report over the five criteria. `metrics` must belong to `r`.
pub fn validate(r: &Route, g: &MissionGraph, metrics: &RouteMetrics, t_available: f64) -> ValidationReport {
    let mut violations = structural_violations(r, g);
    if metrics.t_route > t_available {
        violations.push(RouteViolation::TimeBudgetExceeded);
    }
    ValidationReport::from_violations(violations)
}

/// Edge-wise sums over the route: time, distance, weight, priority and risk.
/// Every consecutive pair must be a graph edge.
pub fn route_metrics(r: &Route, g: &MissionGraph, v_auv: f64) -> Result<RouteMetrics> {
    let mut m = RouteMetrics {
        t_route: 0.0,
        total_weight: 0.0,
        total_distance: 0.0,
        n_tasks: 0,
        sum_priority: 0.0,
        sum_risk: 0.0,
    };
    for w in r.nodes.windows(2) {
        let edge = g.edge(w[0], w[1]).ok_or(Error::MissingEdge(w[0], w[1]))?;
        let d = euclidean_distance(g.waypoint(w[0])?, g.waypoint(w[1])?);
        m.t_route += traversal_time(d, v_auv, &edge.task)?;
        m.total_distance += d;
        m.total_weight += edge.task.priority / edge.task.risk_pct;
        m.sum_priority += edge.task.priority;
        m.sum_risk += edge.task.risk_pct;
        m.n_tasks += 1;
    }
    Ok(m)
}
