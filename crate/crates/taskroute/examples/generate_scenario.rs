//! Generate a random mission scenario and save it as a graph JSON file.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example generate_scenario
//! ```
//!
//! The same seed always yields the same graph, so the written file is stable
//! across runs and machines.

use taskroute::{generate_scenario, save_graph, ScenarioConfig};

fn main() -> taskroute::Result<()> {
    let scenario = ScenarioConfig {
        n_nodes: 50,
        edge_density: 0.5,
        seed: 42,
        ..ScenarioConfig::default()
    };

    let graph = generate_scenario(&scenario)?;

    println!("nodes:       {}", graph.n_nodes());
    println!("edges:       {}", graph.edges().len());
    println!("start:       {}", graph.start);
    println!("destination: {}", graph.destination);
    println!(
        "start neighbors: {:?}",
        graph.neighbors(graph.start)?
    );

    let out = std::env::temp_dir().join("scenario_50.json");
    std::fs::write(&out, save_graph(&graph)?)?;
    println!("wrote {}", out.display());
    Ok(())
}
