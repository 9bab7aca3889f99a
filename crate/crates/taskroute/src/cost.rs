//! Hybrid route cost: a task term (risk over priority) and a route term
//! (normalized gap between route time and the available mission time), blended
//! by two participation weights. Lower is better.

use serde::{Deserialize, Serialize};

use crate::codec::{self, Route, RouteMetrics, ValidationReport};
use crate::error::{Error, Result};
use crate::graph::MissionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostParams {
    /// Participation weight of the task term.
    pub phi1: f64,
    /// Participation weight of the route term.
    pub phi2: f64,
    /// Gain of the budget-violation scaling inside the route term.
    pub gamma: f64,
    /// Risk coefficient in the task term.
    pub eta: f64,
    /// Priority coefficient in the task term.
    pub beta: f64,
    /// Cruise speed in meters per second.
    pub v_auv: f64,
    /// Mission time budget in seconds.
    pub t_available: f64,
    /// Flat cost assigned to structurally infeasible candidates.
    pub penalty: f64,
    /// Use the signed time gap instead of the absolute one. The signed form
    /// rewards short routes; it is kept for comparison only.
    pub signed_gap: bool,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            phi1: 0.5,
            phi2: 0.5,
            gamma: 100.0,
            eta: 1.0,
            beta: 1.0,
            v_auv: 2.0,
            t_available: 25_200.0,
            penalty: 1e6,
            signed_gap: false,
        }
    }
}

impl CostParams {
    pub fn check(&self) -> Result<()> {
        if self.phi1 < 0.0 || self.phi2 < 0.0 || self.phi1 + self.phi2 <= 0.0 {
            return Err(Error::InvalidParameter("phi1/phi2 must be non-negative with a positive sum".into()));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParameter("gamma must be non-negative".into()));
        }
        if self.eta <= 0.0 || self.beta <= 0.0 {
            return Err(Error::InvalidParameter("eta and beta must be positive".into()));
        }
        if self.v_auv <= 0.0 {
            return Err(Error::InvalidParameter("v_auv must be positive".into()));
        }
        if self.t_available <= 0.0 {
            return Err(Error::InvalidParameter("t_available must be positive".into()));
        }
        Ok(())
    }
}

/// Evaluated cost terms of one candidate route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub cost_task: f64,
    pub cost_route: f64,
    /// Relative budget overshoot in [0,1); zero when within budget.
    pub viol: f64,
    pub cost_total: f64,
    pub t_travel: f64,
}

/// Relative overshoot of the time budget: max(1 - t_available/t_travel, 0).
pub fn violation(t_travel: f64, t_available: f64) -> Result<f64> {
    if t_travel <= 0.0 || t_available <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "violation needs positive times, got t_travel={t_travel} t_available={t_available}"
        )));
    }
    Ok((1.0 - t_available / t_travel).max(0.0))
}

fn viol_of(t_route: f64, t_available: f64) -> f64 {
    if t_route > 0.0 {
        (1.0 - t_available / t_route).max(0.0)
    } else {
        0.0
    }
}

/// Route term: normalized time gap scaled by (1 + gamma * viol). Zero exactly
/// when the route uses the full budget.
pub fn cost_route(m: &RouteMetrics, p: &CostParams) -> f64 {
    let gap = if p.signed_gap {
        (m.t_route - p.t_available) / p.t_available
    } else {
        (m.t_route - p.t_available).abs() / p.t_available
    };
    gap * (1.0 + p.gamma * viol_of(m.t_route, p.t_available))
}

/// Task term: total risk over total priority, scaled by eta/beta. A route with
/// no task edges is degenerate and priced at the penalty.
pub fn cost_task(m: &RouteMetrics, p: &CostParams) -> f64 {
    if m.n_tasks == 0 || m.sum_priority <= 0.0 {
        return p.penalty;
    }
    (p.eta * m.sum_risk) / (p.beta * m.sum_priority)
}

/// Blends the two terms. Structurally infeasible candidates (any failed
/// criterion other than the time budget) get the flat penalty instead.
pub fn cost_total(m: &RouteMetrics, report: &ValidationReport, p: &CostParams) -> CostBreakdown {
    if report.structurally_infeasible() {
        return penalty_breakdown(m.t_route, p);
    }
    let ct = cost_task(m, p);
    let cr = cost_route(m, p);
    CostBreakdown {
        cost_task: ct,
        cost_route: cr,
        viol: viol_of(m.t_route, p.t_available),
        cost_total: p.phi1 * ct + p.phi2 * cr,
        t_travel: m.t_route,
    }
}

fn penalty_breakdown(t_travel: f64, p: &CostParams) -> CostBreakdown {
    CostBreakdown {
        cost_task: 0.0,
        cost_route: 0.0,
        viol: 0.0,
        cost_total: p.penalty,
        t_travel,
    }
}

/// Full appraisal of one candidate: feasibility report, metrics where defined,
/// and the cost breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub metrics: Option<RouteMetrics>,
    pub report: ValidationReport,
    pub cost: CostBreakdown,
}

/// Evaluates a route end to end: structural checks first, then metrics, budget
/// check and cost. Routes with nonexistent hops never reach `route_metrics`.
pub fn evaluate(r: &Route, g: &MissionGraph, p: &CostParams) -> Evaluation {
    let structural = codec::structural_violations(r, g);
    if structural.contains(&codec::RouteViolation::NonexistentEdge) {
        let report = ValidationReport { feasible: false, violations: structural };
        return Evaluation { metrics: None, report, cost: penalty_breakdown(0.0, p) };
    }
    let metrics = codec::route_metrics(r, g, p.v_auv).expect("all hops verified present");
    let report = codec::validate(r, g, &metrics, p.t_available);
    let cost = cost_total(&metrics, &report, p);
    Evaluation { metrics: Some(metrics), report, cost }
}

/// The cost the optimizers rank candidates by: any failed feasibility criterion
/// prices the candidate at the flat penalty, otherwise the evaluated total.
pub fn selection_cost(ev: &Evaluation, p: &CostParams) -> f64 {
    if ev.report.feasible {
        ev.cost.cost_total
    } else {
        p.penalty
    }
}
