//! Exhaustive ground truth for small graphs: enumerate every simple
//! start-to-destination path and take the cheapest feasible one under the
//! exact same cost function the optimizers use.

use crate::codec::{route_metrics, validate, Route};
use crate::cost::{cost_total, CostBreakdown, CostParams};
use crate::error::{Error, Result};
use crate::graph::MissionGraph;

/// Node count above which [`optimal_route_bruteforce`] refuses to run.
pub const DEFAULT_ENUMERATION_GUARD: usize = 12;

/// Depth-first enumeration of simple start->destination paths, neighbors in
/// ascending id order. Paths longer than `max_nodes` nodes are not expanded.
pub struct SimplePaths<'a> {
    g: &'a MissionGraph,
    max_nodes: usize,
    /// One cursor per path node: next neighbor index to try.
    cursors: Vec<usize>,
    path: Vec<u32>,
    visited: Vec<bool>,
    done: bool,
}

impl<'a> SimplePaths<'a> {
    fn new(g: &'a MissionGraph, max_nodes: usize) -> Self {
        let mut visited = vec![false; g.n_nodes() + 1];
        visited[g.start as usize] = true;
        SimplePaths {
            g,
            max_nodes,
            cursors: vec![0],
            path: vec![g.start],
            visited,
            done: max_nodes < 2,
        }
    }

    fn backtrack(&mut self) {
        let node = self.path.pop().expect("backtrack keeps the start node");
        self.visited[node as usize] = false;
        self.cursors.pop();
    }
}

impl Iterator for SimplePaths<'_> {
    type Item = Route;

    fn next(&mut self) -> Option<Route> {
        if self.done {
            return None;
        }
        loop {
            let current = *self.path.last().unwrap();
            let neighbors = self.g.neighbors(current).expect("path nodes are valid");
            let cursor = self.cursors.last_mut().unwrap();
            let Some(&next) = neighbors.get(*cursor) else {
                if self.path.len() == 1 {
                    self.done = true;
                    return None;
                }
                self.backtrack();
                continue;
            };
            *cursor += 1;
            if self.visited[next as usize] {
                continue;
            }
            if next == self.g.destination {
                let mut nodes = self.path.clone();
                nodes.push(next);
                return Some(Route::new(nodes));
            }
            if self.path.len() + 1 >= self.max_nodes {
                continue;
            }
            self.path.push(next);
            self.visited[next as usize] = true;
            self.cursors.push(0);
        }
    }
}

/// All simple start->destination paths with at most `max_nodes` nodes.
pub fn enumerate_simple_paths(g: &MissionGraph, max_nodes: usize) -> SimplePaths<'_> {
    SimplePaths::new(g, max_nodes.min(g.n_nodes()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_route: Route,
    pub best_cost: CostBreakdown,
    pub n_paths_enumerated: usize,
}

/// Exact optimum over every feasible simple path, with the default node-count
/// guard. Ties break toward the lexicographically smallest node sequence.
pub fn optimal_route_bruteforce(g: &MissionGraph, p: &CostParams) -> Result<OracleResult> {
    optimal_route_bruteforce_guarded(g, p, DEFAULT_ENUMERATION_GUARD)
}

/// Same as [`optimal_route_bruteforce`] with an explicit guard.
pub fn optimal_route_bruteforce_guarded(
    g: &MissionGraph,
    p: &CostParams,
    guard: usize,
) -> Result<OracleResult> {
    if g.n_nodes() > guard {
        return Err(Error::GraphTooLarge { nodes: g.n_nodes(), guard });
    }
    p.check()?;

    let mut n_paths = 0usize;
    let mut best: Option<(Route, CostBreakdown)> = None;
    for route in enumerate_simple_paths(g, g.n_nodes()) {
        n_paths += 1;
        let metrics = route_metrics(&route, g, p.v_auv).expect("enumerated hops exist");
        let report = validate(&route, g, &metrics, p.t_available);
        if !report.feasible {
            continue;
        }
        let cost = cost_total(&metrics, &report, p);
        let better = match &best {
            None => true,
            Some((incumbent, c)) => {
                cost.cost_total < c.cost_total
                    || (cost.cost_total == c.cost_total && route.nodes < incumbent.nodes)
            }
        };
        if better {
            best = Some((route, cost));
        }
    }

    match best {
        Some((best_route, best_cost)) => Ok(OracleResult { best_route, best_cost, n_paths_enumerated: n_paths }),
        None => Err(Error::NoFeasibleRoute),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Task, Waypoint};

    fn unit_task() -> Task {
        Task { priority: 1.0, risk_pct: 1.0, completion_time: 0.0 }
    }

    fn complete_graph(n: u32) -> MissionGraph {
        let waypoints = (1..=n)
            .map(|i| Waypoint { id: i, x: i as f64, y: 0.0, z: 0.0 })
            .collect();
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                edges.push(Edge { a, b, task: unit_task() });
            }
        }
        MissionGraph::new(waypoints, edges, 1, n).unwrap()
    }

    fn triangle() -> MissionGraph {
        let waypoints = vec![
            Waypoint { id: 1, x: 0.0, y: 0.0, z: 0.0 },
            Waypoint { id: 2, x: 300.0, y: 400.0, z: 0.0 },
            Waypoint { id: 3, x: 600.0, y: 800.0, z: 0.0 },
        ];
        let edges = vec![
            Edge { a: 1, b: 2, task: Task { priority: 10.0, risk_pct: 2.0, completion_time: 50.0 } },
            Edge { a: 2, b: 3, task: Task { priority: 8.0, risk_pct: 1.0, completion_time: 50.0 } },
            Edge { a: 1, b: 3, task: Task { priority: 5.0, risk_pct: 5.0, completion_time: 100.0 } },
        ];
        MissionGraph::new(waypoints, edges, 1, 3).unwrap()
    }

    #[test]
    fn two_node_graph_single_path() {
        let g = complete_graph(2);
        let paths: Vec<Route> = enumerate_simple_paths(&g, 2).collect();
        assert_eq!(paths, vec![Route::new(vec![1, 2])]);
    }

    #[test]
    fn triangle_enumerates_both_paths() {
        let g = triangle();
        let paths: Vec<Vec<u32>> = enumerate_simple_paths(&g, 3).map(|r| r.nodes).collect();
        assert_eq!(paths, vec![vec![1, 2, 3], vec![1, 3]]);
    }

    #[test]
    fn complete_graph_path_counts() {
        // K_n start->dest simple paths: sum over k of P(n-2, k).
        assert_eq!(enumerate_simple_paths(&complete_graph(5), 5).count(), 16);
        assert_eq!(enumerate_simple_paths(&complete_graph(6), 6).count(), 65);
    }

    #[test]
    fn max_nodes_caps_path_length() {
        let g = complete_graph(5);
        let paths: Vec<Route> = enumerate_simple_paths(&g, 3).collect();
        assert!(paths.iter().all(|r| r.len() <= 3));
        // direct hop plus the three 2-hop paths
        assert_eq!(paths.len(), 4);
    }

    #[test]
    fn oracle_picks_triangle_argmin() {
        let g = triangle();
        let p = CostParams { t_available: 600.0, ..CostParams::default() };
        let result = optimal_route_bruteforce(&g, &p).unwrap();
        assert_eq!(result.best_route.nodes, vec![1, 2, 3]);
        assert!((result.best_cost.cost_total - 1.0 / 12.0).abs() < 1e-12);
        assert_eq!(result.n_paths_enumerated, 2);
    }

    #[test]
    fn oracle_no_solution_when_budget_too_small() {
        let g = triangle();
        let p = CostParams { t_available: 10.0, ..CostParams::default() };
        assert!(matches!(optimal_route_bruteforce(&g, &p), Err(Error::NoFeasibleRoute)));
    }

    #[test]
    fn oracle_refuses_oversized_graph() {
        let g = complete_graph(13);
        let p = CostParams::default();
        assert!(matches!(
            optimal_route_bruteforce(&g, &p),
            Err(Error::GraphTooLarge { nodes: 13, guard: 12 })
        ));
    }
}
