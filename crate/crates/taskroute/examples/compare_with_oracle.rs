//! Check both engines against the brute-force oracle on a small graph.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example compare_with_oracle
//! ```
//!
//! The oracle enumerates every simple start-to-destination path, so it is
//! exact but only viable on small instances (12 nodes by default).

use taskroute::{
    generate_scenario, optimal_route_bruteforce, CostParams, GaConfig, ScenarioConfig, SwarmConfig,
};

fn main() -> taskroute::Result<()> {
    let scenario = ScenarioConfig {
        n_nodes: 9,
        area_x: 3_000.0,
        area_y: 3_000.0,
        seed: 11,
        ..ScenarioConfig::default()
    };
    let graph = generate_scenario(&scenario)?;
    let params = CostParams { t_available: 6_000.0, ..CostParams::default() };

    let oracle = optimal_route_bruteforce(&graph, &params)?;
    let optimum = oracle.best_cost.cost_total;
    println!("oracle route : {}  (cost {:.6}, {} paths enumerated)",
             oracle.best_route, optimum, oracle.n_paths_enumerated);

    let ga = taskroute::ga::evolve(&graph, &GaConfig { seed: 1, ..GaConfig::default() }, &params)?;
    let pso =
        taskroute::pso::run_pso(&graph, &SwarmConfig { seed: 1, ..SwarmConfig::default() }, &params)?;

    for (name, route, cost) in [
        ("GA", &ga.best_route, ga.cost.cost_total),
        ("PSO", &pso.best_route, pso.cost.cost_total),
    ] {
        let gap = (cost - optimum) / optimum.abs().max(f64::EPSILON) * 100.0;
        println!("{name:<4} route   : {route}  (cost {cost:.6}, gap {gap:+.3}%)");
    }
    Ok(())
}
