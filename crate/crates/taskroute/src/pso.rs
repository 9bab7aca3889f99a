//! Particle swarm optimization over priority vectors. Particles move in the
//! continuous genotype space; every position decodes to a route for costing.
//! Updates are synchronous: an iteration's moves all read the previous
//! iteration's global best.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codec::{decode, PriorityVector, Route};
use crate::cost::{evaluate, selection_cost, CostParams, Evaluation};
use crate::error::{Error, Result};
use crate::graph::MissionGraph;
use crate::solve::{HistoryPoint, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwarmConfig {
    pub swarm_size: usize,
    pub max_iterations: usize,
    /// Inertia weight.
    pub omega: f64,
    /// Cognitive acceleration coefficient.
    pub c1: f64,
    /// Social acceleration coefficient.
    pub c2: f64,
    /// Velocities are clamped to [-v_max, v_max] and initialized uniformly
    /// inside that range.
    pub v_max: f64,
    /// Positions are clamped to this closed interval.
    pub position_bounds: (f64, f64),
    /// Draw r1/r2 per component instead of once per particle update.
    pub per_component_r: bool,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        SwarmConfig {
            swarm_size: 30,
            max_iterations: 500,
            omega: 0.729,
            c1: 1.494,
            c2: 1.494,
            v_max: 20.0,
            position_bounds: (-100.0, 100.0),
            per_component_r: false,
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn check(&self) -> Result<()> {
        if self.swarm_size == 0 {
            return Err(Error::Config("swarm_size must be at least 1".into()));
        }
        if self.omega < 0.0 || self.c1 < 0.0 || self.c2 < 0.0 {
            return Err(Error::Config("omega, c1 and c2 must be non-negative".into()));
        }
        if self.v_max <= 0.0 {
            return Err(Error::Config("v_max must be positive".into()));
        }
        if !(self.position_bounds.0 < self.position_bounds.1) {
            return Err(Error::Config("position_bounds must be a non-empty interval".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: PriorityVector,
    pub velocity: Vec<f64>,
    pub pbest_position: PriorityVector,
    pub pbest_eval: Evaluation,
    /// Selection cost of the personal best; what pbest updates compare by.
    pub pbest_selection: f64,
    pub current_eval: Evaluation,
    pub current_selection: f64,
}

/// One velocity component: inertia plus cognitive and social attraction.
fn velocity_step(v: f64, x: f64, pbest: f64, gbest: f64, cfg: &SwarmConfig, r1: f64, r2: f64) -> f64 {
    let v = cfg.omega * v + cfg.c1 * r1 * (pbest - x) + cfg.c2 * r2 * (gbest - x);
    v.clamp(-cfg.v_max, cfg.v_max)
}

/// New clamped velocity for one particle. r1 and r2 are fresh uniform [0,1]
/// draws, scalar per particle update unless `per_component_r` is set.
pub fn update_velocity<R: Rng>(
    p: &Particle,
    gbest: &PriorityVector,
    cfg: &SwarmConfig,
    rng: &mut R,
) -> Vec<f64> {
    let (mut r1, mut r2) = (rng.gen::<f64>(), rng.gen::<f64>());
    p.velocity
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if cfg.per_component_r && i > 0 {
                r1 = rng.gen();
                r2 = rng.gen();
            }
            velocity_step(v, p.position.values[i], p.pbest_position.values[i], gbest.values[i], cfg, r1, r2)
        })
        .collect()
}

/// New position from the already-updated velocity, clamped to the bounds.
pub fn update_position(p: &Particle, cfg: &SwarmConfig) -> PriorityVector {
    let values = p
        .position
        .values
        .iter()
        .zip(&p.velocity)
        .map(|(&x, &v)| (x + v).clamp(cfg.position_bounds.0, cfg.position_bounds.1))
        .collect();
    PriorityVector::new(values)
}

/// Swarm state across iterations. Exposed so invariants (pbest vs gbest,
/// clamping) can be observed step by step.
#[derive(Debug, Clone)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub gbest_position: PriorityVector,
    pub gbest_route: Route,
    pub gbest_eval: Evaluation,
    pub gbest_selection: f64,
    pub iteration: usize,
    rng: ChaCha8Rng,
}

impl Swarm {
    /// Random positions with distinct values inside the position bounds,
    /// random velocities inside the clamp range, pbest = initial state.
    pub fn init(g: &MissionGraph, cfg: &SwarmConfig, p: &CostParams) -> Result<Swarm> {
        cfg.check()?;
        p.check()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let n = g.n_nodes();

        let mut particles = Vec::with_capacity(cfg.swarm_size);
        for _ in 0..cfg.swarm_size {
            let position =
                PriorityVector::random(n, cfg.position_bounds.0, cfg.position_bounds.1, &mut rng);
            let velocity: Vec<f64> = (0..n).map(|_| rng.gen_range(-cfg.v_max..=cfg.v_max)).collect();
            let eval = evaluate(&decode(&position, g), g, p);
            let sel = selection_cost(&eval, p);
            particles.push(Particle {
                pbest_position: position.clone(),
                pbest_eval: eval.clone(),
                pbest_selection: sel,
                current_eval: eval,
                current_selection: sel,
                position,
                velocity,
            });
        }

        let best = particles
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.pbest_selection.total_cmp(&b.pbest_selection))
            .map(|(i, _)| i)
            .expect("swarm_size >= 1");
        let gbest_position = particles[best].pbest_position.clone();
        let gbest_route = decode(&gbest_position, g);
        Ok(Swarm {
            gbest_eval: particles[best].pbest_eval.clone(),
            gbest_selection: particles[best].pbest_selection,
            gbest_position,
            gbest_route,
            particles,
            iteration: 0,
            rng,
        })
    }

    /// One synchronous iteration: every particle moves against the previous
    /// iteration's gbest, then pbest/gbest are refreshed on strict improvement.
    pub fn step(&mut self, g: &MissionGraph, cfg: &SwarmConfig, p: &CostParams) {
        let gbest_snapshot = self.gbest_position.clone();
        for particle in &mut self.particles {
            particle.velocity = update_velocity(particle, &gbest_snapshot, cfg, &mut self.rng);
            particle.position = update_position(particle, cfg);
            particle.current_eval = evaluate(&decode(&particle.position, g), g, p);
            particle.current_selection = selection_cost(&particle.current_eval, p);
            if particle.current_selection < particle.pbest_selection {
                particle.pbest_position = particle.position.clone();
                particle.pbest_eval = particle.current_eval.clone();
                particle.pbest_selection = particle.current_selection;
            }
        }
        for particle in &self.particles {
            if particle.pbest_selection < self.gbest_selection {
                self.gbest_selection = particle.pbest_selection;
                self.gbest_position = particle.pbest_position.clone();
                self.gbest_eval = particle.pbest_eval.clone();
                self.gbest_route = decode(&self.gbest_position, g);
            }
        }
        self.iteration += 1;
    }

    pub fn mean_selection(&self) -> f64 {
        self.particles.iter().map(|p| p.current_selection).sum::<f64>() / self.particles.len() as f64
    }

    fn history_point(&self) -> HistoryPoint {
        HistoryPoint {
            iteration: self.iteration,
            best_cost: self.gbest_selection,
            mean_cost: self.mean_selection(),
        }
    }
}

/// Full PSO run; returns the route decoded from the global best position.
pub fn run_pso(g: &MissionGraph, cfg: &SwarmConfig, p: &CostParams) -> Result<SolveResult> {
    let mut swarm = Swarm::init(g, cfg, p)?;
    let mut history = vec![swarm.history_point()];
    for _ in 0..cfg.max_iterations {
        swarm.step(g, cfg, p);
        history.push(swarm.history_point());
    }
    Ok(SolveResult {
        best_route: swarm.gbest_route,
        metrics: swarm.gbest_eval.metrics,
        report: swarm.gbest_eval.report,
        cost: swarm.gbest_eval.cost,
        history,
    })
}
