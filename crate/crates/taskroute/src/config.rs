//! Run configuration file: one JSON document holding the scenario, both engine
//! configurations, the cost parameters and the campaign settings. Unknown keys
//! are rejected; omitted keys take the documented defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::CampaignConfig;
use crate::cost::CostParams;
use crate::error::{Error, Result};
use crate::ga::GaConfig;
use crate::graph::ScenarioConfig;
use crate::pso::SwarmConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub ga: GaConfig,
    pub pso: SwarmConfig,
    pub cost: CostParams,
    /// Campaign length for the bench command.
    pub n_runs: usize,
    pub regenerate_graph_per_run: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: ScenarioConfig::default(),
            ga: GaConfig::default(),
            pso: SwarmConfig::default(),
            cost: CostParams::default(),
            n_runs: 100,
            regenerate_graph_per_run: true,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn check(&self) -> Result<()> {
        self.ga.check()?;
        self.pso.check()?;
        self.cost.check()?;
        if self.n_runs == 0 {
            return Err(Error::Config("n_runs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn campaign(&self) -> CampaignConfig {
        CampaignConfig {
            n_runs: self.n_runs,
            scenario: self.scenario.clone(),
            ga: self.ga,
            pso: self.pso,
            cost: self.cost,
            regenerate_graph_per_run: self.regenerate_graph_per_run,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_all_defaults() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn partial_override_keeps_other_defaults() {
        let cfg = RunConfig::from_json(r#"{"cost": {"t_available": 30600.0}, "n_runs": 5}"#).unwrap();
        assert_eq!(cfg.cost.t_available, 30_600.0);
        assert_eq!(cfg.cost.v_auv, CostParams::default().v_auv);
        assert_eq!(cfg.n_runs, 5);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_json(r#"{"typo_key": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"ga": {"population": 10}}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cfg = RunConfig::default();
        assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn invalid_nested_values_rejected() {
        assert!(RunConfig::from_json(r#"{"ga": {"population_size": 1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"cost": {"v_auv": 0.0}}"#).is_err());
    }
}
