//! Run a seeded Monte Carlo campaign comparing GA and PSO head to head.
//!
//! Run with:
//!
//! ```not_rust
//! cargo run -q --example monte_carlo_campaign
//! ```
//!
//! Every run regenerates a graph from a seed derived from the campaign master
//! seed and hands both engines the same engine seed, so the whole campaign is
//! reproducible bit for bit. Records land in a CSV in your temp dir.

use taskroute::bench::emit_records_csv;
use taskroute::{monte_carlo, CampaignConfig, GaConfig, ScenarioConfig, SwarmConfig};

fn main() -> taskroute::Result<()> {
    let cfg = CampaignConfig {
        n_runs: 20,
        scenario: ScenarioConfig { n_nodes: 15, seed: 99, ..ScenarioConfig::default() },
        ga: GaConfig { max_generations: 80, ..GaConfig::default() },
        pso: SwarmConfig { max_iterations: 150, ..SwarmConfig::default() },
        ..CampaignConfig::default()
    };

    let report = monte_carlo(&cfg)?;

    for (name, s) in [("GA", &report.ga), ("PSO", &report.pso)] {
        println!("{name}:");
        println!("  feasibility rate : {:.1}%", s.feasibility_rate * 100.0);
        println!("  mean weight      : {:.3} (min {:.3}, max {:.3})",
                 s.total_weight.mean, s.total_weight.min, s.total_weight.max);
        println!("  mean t_route     : {:.1} s", s.t_route.mean);
    }
    let cpu: f64 = report.records.iter().map(|r| r.cpu_time_s).sum();
    println!("total engine time: {cpu:.2} s over {} records", report.records.len());

    let out = std::env::temp_dir().join("campaign_records.csv");
    std::fs::write(&out, emit_records_csv(&report.records)?)?;
    println!("wrote {}", out.display());
    Ok(())
}
