//! Solve a generated scenario with the genetic algorithm.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example solve_ga
//! ```

use taskroute::{generate_scenario, CostParams, GaConfig, ScenarioConfig};

fn main() -> taskroute::Result<()> {
    let scenario = ScenarioConfig { n_nodes: 30, seed: 7, ..ScenarioConfig::default() };
    let graph = generate_scenario(&scenario)?;

    let params = CostParams { t_available: 18_000.0, ..CostParams::default() };
    let cfg = GaConfig { seed: 7, ..GaConfig::default() };

    let result = taskroute::ga::evolve(&graph, &cfg, &params)?;

    println!("best route : {}", result.best_route);
    println!("cost_total : {:.6}", result.cost.cost_total);
    println!("feasible   : {}", result.feasible());
    if let Some(m) = &result.metrics {
        println!("t_route    : {:.1} s / {:.1} s budget", m.t_route, params.t_available);
        println!("weight     : {:.3}", m.total_weight);
        println!("tasks      : {}", m.n_tasks);
    }

    // Convergence history, one point per generation.
    println!("\ngeneration  best_cost     mean_cost");
    for point in result.history.iter().step_by(50) {
        println!("{:>10}  {:>12.6}  {:>12.6}", point.iteration, point.best_cost, point.mean_cost);
    }
    if let Some(last) = result.history.last() {
        println!("{:>10}  {:>12.6}  {:>12.6}", last.iteration, last.best_cost, last.mean_cost);
    }
    Ok(())
}
