//! Solve a generated scenario with particle swarm optimization.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example solve_pso
//! ```
//!
//! The swarm flies through priority-vector space; each position decodes to a
//! route, so the continuous PSO update rule searches a discrete route space.

use taskroute::{generate_scenario, CostParams, ScenarioConfig, SwarmConfig};

fn main() -> taskroute::Result<()> {
    let scenario = ScenarioConfig { n_nodes: 30, seed: 7, ..ScenarioConfig::default() };
    let graph = generate_scenario(&scenario)?;

    let params = CostParams { t_available: 18_000.0, ..CostParams::default() };
    let cfg = SwarmConfig { seed: 7, ..SwarmConfig::default() };

    let result = taskroute::pso::run_pso(&graph, &cfg, &params)?;

    println!("best route : {}", result.best_route);
    println!("cost_total : {:.6}", result.cost.cost_total);
    println!("feasible   : {}", result.feasible());
    if let Some(m) = &result.metrics {
        println!("t_route    : {:.1} s / {:.1} s budget", m.t_route, params.t_available);
        println!("weight     : {:.3}", m.total_weight);
        println!("tasks      : {}", m.n_tasks);
    }

    println!("\niteration  best_cost     mean_cost");
    for point in result.history.iter().step_by(100) {
        println!("{:>9}  {:>12.6}  {:>12.6}", point.iteration, point.best_cost, point.mean_cost);
    }
    if let Some(last) = result.history.last() {
        println!("{:>9}  {:>12.6}  {:>12.6}", last.iteration, last.best_cost, last.mean_cost);
    }
    Ok(())
}
