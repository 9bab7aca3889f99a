//! Decode a priority vector into a route on a hand-built graph.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example decode_priority_vector
//! ```
//!
//! The genotype is one real value per waypoint. Decoding walks from the start
//! node to the unvisited neighbor with the highest priority until the
//! destination is reached, then a repair step forces the endpoint if the walk
//! got stuck. Same vector in, same route out, deterministically.

use taskroute::{decode, evaluate, CostParams, Edge, MissionGraph, PriorityVector, Task, Waypoint};

fn main() -> taskroute::Result<()> {
    // A small two-corridor mission: 1 -> {2,3} -> 4 -> 5.
    let waypoints = vec![
        Waypoint { id: 1, x: 0.0, y: 0.0, z: 0.0 },
        Waypoint { id: 2, x: 800.0, y: 600.0, z: 0.0 },
        Waypoint { id: 3, x: 800.0, y: -600.0, z: 0.0 },
        Waypoint { id: 4, x: 1600.0, y: 0.0, z: 0.0 },
        Waypoint { id: 5, x: 2400.0, y: 0.0, z: 0.0 },
    ];
    let task = |p: f64, r: f64, t: f64| Task { priority: p, risk_pct: r, completion_time: t };
    let edges = vec![
        Edge { a: 1, b: 2, task: task(8.0, 5.0, 120.0) },
        Edge { a: 1, b: 3, task: task(4.0, 10.0, 90.0) },
        Edge { a: 2, b: 4, task: task(6.0, 8.0, 200.0) },
        Edge { a: 3, b: 4, task: task(9.0, 2.0, 150.0) },
        Edge { a: 4, b: 5, task: task(5.0, 6.0, 60.0) },
    ];
    let graph = MissionGraph::new(waypoints, edges, 1, 5)?;

    let u = PriorityVector::new(vec![40.0, -20.0, 75.0, 10.0, 55.0]);
    let route = decode(&u, &graph);
    println!("U     = {:?}", u.values);
    println!("route = {route}");

    let params = CostParams { t_available: 2_500.0, ..CostParams::default() };
    let ev = evaluate(&route, &graph, &params);
    let m = ev.metrics.expect("route visits only existing edges");
    println!("t_route        = {:.1} s of {:.1} s available", m.t_route, params.t_available);
    println!("total weight   = {:.3}", m.total_weight);
    println!("total distance = {:.1} m", m.total_distance);
    println!("feasible       = {}", ev.report.feasible);
    println!("cost_total     = {:.6}", ev.cost.cost_total);
    Ok(())
}
