//! Genetic algorithm over node-sequence chromosomes: roulette wheel selection,
//! uniform crossover on aligned interiors, a three-way mutation operator and
//! elitist generational replacement.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codec::{decode, PriorityVector, Route, PRIORITY_MAX, PRIORITY_MIN};
use crate::cost::{evaluate, selection_cost, CostParams, Evaluation};
use crate::error::{Error, Result};
use crate::graph::MissionGraph;
use crate::solve::{HistoryPoint, SolveResult};

/// Draws per slot before an infeasible decode is admitted with penalty cost.
const INIT_RETRIES: usize = 30;
/// Fitness transform offset; keeps the wheel finite at zero cost.
const FITNESS_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    /// Generations without best-cost improvement before early termination;
    /// 0 disables the stall check.
    pub stall_generations: usize,
    /// Fraction of the non-elite slots produced by crossover.
    pub crossover_fraction: f64,
    /// Fraction of the non-elite slots produced by mutation.
    pub mutation_fraction: f64,
    /// Per-gene swap probability of the uniform crossover.
    pub mix_probability: f64,
    pub elite_count: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            max_generations: 250,
            stall_generations: 50,
            crossover_fraction: 0.8,
            mutation_fraction: 0.3,
            mix_probability: 0.5,
            elite_count: 2,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn check(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config("population_size must be at least 2".into()));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::Config("elite_count must be below population_size".into()));
        }
        for (name, f) in [
            ("crossover_fraction", self.crossover_fraction),
            ("mutation_fraction", self.mutation_fraction),
            ("mix_probability", self.mix_probability),
        ] {
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::Config(format!("{name} {f} outside [0,1]")));
            }
        }
        Ok(())
    }
}

/// A candidate route with its cached evaluation and selection cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub route: Route,
    pub evaluation: Evaluation,
    /// What the wheel and elitism rank by; penalty for any failed criterion.
    pub selection: f64,
}

impl Chromosome {
    pub fn from_route(route: Route, g: &MissionGraph, p: &CostParams) -> Self {
        let evaluation = evaluate(&route, g, p);
        let selection = selection_cost(&evaluation, p);
        Chromosome { route, evaluation, selection }
    }
}

fn fresh_chromosome<R: Rng>(g: &MissionGraph, p: &CostParams, rng: &mut R) -> Chromosome {
    let u = PriorityVector::random(g.n_nodes(), PRIORITY_MIN, PRIORITY_MAX, rng);
    Chromosome::from_route(decode(&u, g), g, p)
}

/// Decodes `population_size` fresh random priority vectors. Structurally
/// infeasible decodes are re-drawn a bounded number of times, then admitted
/// with the penalty cost. Errors when not a single chromosome is feasible.
pub fn init_population(g: &MissionGraph, cfg: &GaConfig, p: &CostParams) -> Result<Vec<Chromosome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    init_population_rng(g, cfg, p, &mut rng)
}

fn init_population_rng<R: Rng>(
    g: &MissionGraph,
    cfg: &GaConfig,
    p: &CostParams,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    let mut population = Vec::with_capacity(cfg.population_size);
    for _ in 0..cfg.population_size {
        let mut candidate = fresh_chromosome(g, p, rng);
        for _ in 0..INIT_RETRIES {
            if !candidate.evaluation.report.structurally_infeasible() {
                break;
            }
            candidate = fresh_chromosome(g, p, rng);
        }
        population.push(candidate);
    }
    if population.iter().all(|c| !c.evaluation.report.feasible) {
        return Err(Error::InitializationFailure);
    }
    Ok(population)
}

/// Samples `k` population indices with replacement, with probability
/// proportional to 1/(selection cost + eps).
pub fn roulette_select<R: Rng>(population: &[Chromosome], k: usize, rng: &mut R) -> Vec<usize> {
    let weights: Vec<f64> = population.iter().map(|c| 1.0 / (c.selection + FITNESS_EPS)).collect();
    let wheel = WeightedIndex::new(&weights).expect("selection costs are non-negative");
    (0..k).map(|_| wheel.sample(rng)).collect()
}

/// Swaps aligned interior genes according to `mask` (true = swap). The mask
/// covers the shorter interior; endpoints and tail genes stay in place.
fn crossover_with_mask(a: &Route, b: &Route, mask: &[bool]) -> (Route, Route) {
    let mut left = a.nodes.clone();
    let mut right = b.nodes.clone();
    for (i, &swap) in mask.iter().enumerate() {
        if swap {
            std::mem::swap(&mut left[i + 1], &mut right[i + 1]);
        }
    }
    (Route::new(left), Route::new(right))
}

/// Uniform crossover on the aligned interiors of two parents. Offspring that
/// fail any feasibility criterion are dropped, so zero, one or two children
/// may come back.
pub fn uniform_crossover<R: Rng>(
    a: &Chromosome,
    b: &Chromosome,
    mix_probability: f64,
    rng: &mut R,
    g: &MissionGraph,
    p: &CostParams,
) -> Vec<Chromosome> {
    let interior = a.route.len().min(b.route.len()).saturating_sub(2);
    let mask: Vec<bool> = (0..interior).map(|_| rng.gen_bool(mix_probability)).collect();
    let (left, right) = crossover_with_mask(&a.route, &b.route, &mask);
    [left, right]
        .into_iter()
        .map(|r| Chromosome::from_route(r, g, p))
        .filter(|c| c.evaluation.report.feasible)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MutationOp {
    Inversion,
    Insertion,
    Swap,
}

/// Applies `op` to the interior genes; endpoints never move. Routes with
/// fewer than two interior genes come back unchanged.
fn apply_mutation(route: &Route, op: MutationOp, i: usize, j: usize) -> Route {
    let interior_len = route.len().saturating_sub(2);
    if interior_len < 2 {
        return route.clone();
    }
    let mut nodes = route.nodes.clone();
    let (lo, hi) = (i.min(j) + 1, i.max(j) + 1);
    match op {
        MutationOp::Inversion => nodes[lo..=hi].reverse(),
        MutationOp::Insertion => {
            let gene = nodes.remove(i + 1);
            nodes.insert(j + 1, gene);
        }
        MutationOp::Swap => nodes.swap(lo, hi),
    }
    Route::new(nodes)
}

/// One of inversion, insertion or swap, chosen uniformly, applied to the
/// interior genes. A mutant failing any feasibility criterion is discarded
/// and the parent kept.
pub fn mutate<R: Rng>(c: &Chromosome, rng: &mut R, g: &MissionGraph, p: &CostParams) -> Chromosome {
    let interior_len = c.route.len().saturating_sub(2);
    if interior_len < 2 {
        return c.clone();
    }
    let op = match rng.gen_range(0..3) {
        0 => MutationOp::Inversion,
        1 => MutationOp::Insertion,
        _ => MutationOp::Swap,
    };
    let i = rng.gen_range(0..interior_len);
    let j = {
        // Distinct second index so the operator is never a no-op.
        let r = rng.gen_range(0..interior_len - 1);
        if r >= i {
            r + 1
        } else {
            r
        }
    };
    let mutant = Chromosome::from_route(apply_mutation(&c.route, op, i, j), g, p);
    if mutant.evaluation.report.feasible {
        mutant
    } else {
        c.clone()
    }
}

fn sort_population(population: &mut [Chromosome]) {
    population.sort_by(|a, b| a.selection.total_cmp(&b.selection));
}

fn history_point(iteration: usize, population: &[Chromosome]) -> HistoryPoint {
    let mean = population.iter().map(|c| c.selection).sum::<f64>() / population.len() as f64;
    HistoryPoint { iteration, best_cost: population[0].selection, mean_cost: mean }
}

/// Full generational loop: elites survive unchanged, crossover and mutation
/// fill their configured shares of the remaining slots, fresh random decodes
/// cover any shortfall, and the run stops at `max_generations` or after
/// `stall_generations` without improvement.
pub fn evolve(g: &MissionGraph, cfg: &GaConfig, p: &CostParams) -> Result<SolveResult> {
    cfg.check()?;
    p.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut population = init_population_rng(g, cfg, p, &mut rng)?;
    sort_population(&mut population);

    let mut history = vec![history_point(0, &population)];
    let mut best = population[0].clone();
    let mut stall = 0usize;

    for generation in 1..=cfg.max_generations {
        let non_elite = cfg.population_size - cfg.elite_count;
        let cross_target =
            ((cfg.crossover_fraction * non_elite as f64).round() as usize).min(non_elite);
        let mut_target =
            ((cfg.mutation_fraction * non_elite as f64).round() as usize).min(non_elite - cross_target);

        let mut next: Vec<Chromosome> = population[..cfg.elite_count].to_vec();

        let mut produced = 0usize;
        let mut attempts = 0usize;
        let attempt_budget = 10 * cross_target + 10;
        while produced < cross_target && attempts < attempt_budget {
            attempts += 1;
            let parents = roulette_select(&population, 2, &mut rng);
            let offspring = uniform_crossover(
                &population[parents[0]],
                &population[parents[1]],
                cfg.mix_probability,
                &mut rng,
                g,
                p,
            );
            for child in offspring {
                if produced < cross_target {
                    next.push(child);
                    produced += 1;
                }
            }
        }

        for idx in roulette_select(&population, mut_target, &mut rng) {
            next.push(mutate(&population[idx], &mut rng, g, p));
        }

        while next.len() < cfg.population_size {
            next.push(fresh_chromosome(g, p, &mut rng));
        }

        sort_population(&mut next);
        population = next;

        if population[0].selection < best.selection {
            best = population[0].clone();
            stall = 0;
        } else {
            stall += 1;
        }
        history.push(history_point(generation, &population));

        if cfg.stall_generations > 0 && stall >= cfg.stall_generations {
            break;
        }
    }

    Ok(SolveResult {
        best_route: best.route,
        metrics: best.evaluation.metrics,
        report: best.evaluation.report,
        cost: best.evaluation.cost,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Task, Waypoint};

    fn unit_task() -> Task {
        Task { priority: 1.0, risk_pct: 1.0, completion_time: 0.0 }
    }

    fn graph_from_pairs(n: u32, pairs: &[(u32, u32)]) -> MissionGraph {
        let waypoints = (1..=n)
            .map(|i| Waypoint { id: i, x: i as f64 * 100.0, y: 0.0, z: 0.0 })
            .collect();
        let edges = pairs.iter().map(|&(a, b)| Edge { a, b, task: unit_task() }).collect();
        MissionGraph::new(waypoints, edges, 1, n).unwrap()
    }

    fn fixture_18() -> MissionGraph {
        graph_from_pairs(
            18,
            &[(1, 2), (1, 3), (1, 4), (1, 5), (3, 8), (5, 8), (8, 13), (8, 14), (13, 18), (14, 18)],
        )
    }

    fn loose_params() -> CostParams {
        CostParams { t_available: 1e6, ..CostParams::default() }
    }

    #[test]
    fn init_two_node_graph_is_forced() {
        let g = graph_from_pairs(2, &[(1, 2)]);
        let cfg = GaConfig { population_size: 10, ..GaConfig::default() };
        let pop = init_population(&g, &cfg, &loose_params()).unwrap();
        assert!(pop.iter().all(|c| c.route.nodes == vec![1, 2]));
    }

    #[test]
    fn init_same_seed_identical() {
        let g = fixture_18();
        let cfg = GaConfig { population_size: 20, seed: 5, ..GaConfig::default() };
        let a = init_population(&g, &cfg, &loose_params()).unwrap();
        let b = init_population(&g, &cfg, &loose_params()).unwrap();
        assert_eq!(
            a.iter().map(|c| &c.route).collect::<Vec<_>>(),
            b.iter().map(|c| &c.route).collect::<Vec<_>>()
        );
    }

    #[test]
    fn init_population_prices_every_chromosome() {
        let g = fixture_18();
        let cfg = GaConfig { population_size: 50, seed: 1, ..GaConfig::default() };
        let p = loose_params();
        for c in init_population(&g, &cfg, &p).unwrap() {
            if c.evaluation.report.feasible {
                assert_eq!(c.selection, c.evaluation.cost.cost_total);
            } else {
                assert_eq!(c.selection, p.penalty);
            }
        }
    }

    #[test]
    fn roulette_uniform_costs_select_uniformly() {
        let g = graph_from_pairs(2, &[(1, 2)]);
        let p = loose_params();
        let c = Chromosome::from_route(Route::new(vec![1, 2]), &g, &p);
        let population = vec![c.clone(), c.clone(), c.clone(), c.clone()];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0usize; 4];
        for idx in roulette_select(&population, 40_000, &mut rng) {
            counts[idx] += 1;
        }
        for count in counts {
            let freq = count as f64 / 40_000.0;
            assert!((freq - 0.25).abs() < 0.02, "frequency {freq} far from uniform");
        }
    }

    #[test]
    fn roulette_rarely_selects_penalized_chromosome() {
        let g = fixture_18();
        let p = loose_params();
        let good = Chromosome::from_route(Route::new(vec![1, 3, 8, 13, 18]), &g, &p);
        let bad = Chromosome::from_route(Route::new(vec![1, 2, 18]), &g, &p);
        assert_eq!(bad.selection, p.penalty);
        let population = vec![good.clone(), good.clone(), good, bad];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let picks = roulette_select(&population, 10_000, &mut rng);
        let bad_picks = picks.iter().filter(|&&i| i == 3).count();
        assert!(bad_picks < 100, "penalized chromosome picked {bad_picks} times");
    }

    #[test]
    fn roulette_single_chromosome_always_selected() {
        let g = graph_from_pairs(2, &[(1, 2)]);
        let c = Chromosome::from_route(Route::new(vec![1, 2]), &g, &loose_params());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(roulette_select(&[c], 100, &mut rng).iter().all(|&i| i == 0));
    }

    #[test]
    fn crossover_identical_parents_is_fixed_point() {
        let g = fixture_18();
        let p = loose_params();
        let c = Chromosome::from_route(Route::new(vec![1, 3, 8, 13, 18]), &g, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let kids = uniform_crossover(&c, &c, 0.5, &mut rng, &g, &p);
        assert_eq!(kids.len(), 2);
        assert!(kids.iter().all(|k| k.route == c.route));
    }

    #[test]
    fn crossover_zero_mix_copies_parents() {
        let g = fixture_18();
        let p = loose_params();
        let a = Chromosome::from_route(Route::new(vec![1, 3, 8, 13, 18]), &g, &p);
        let b = Chromosome::from_route(Route::new(vec![1, 5, 8, 14, 18]), &g, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let kids = uniform_crossover(&a, &b, 0.0, &mut rng, &g, &p);
        assert_eq!(kids.len(), 2);
        assert_eq!(kids[0].route, a.route);
        assert_eq!(kids[1].route, b.route);
    }

    #[test]
    fn crossover_forced_swap_keeps_valid_child() {
        let g = fixture_18();
        let a = Route::new(vec![1, 3, 8, 13, 18]);
        let b = Route::new(vec![1, 5, 8, 14, 18]);
        let (left, right) = crossover_with_mask(&a, &b, &[true, false, false]);
        assert_eq!(left.nodes, vec![1, 5, 8, 13, 18]);
        assert_eq!(right.nodes, vec![1, 3, 8, 14, 18]);
        let p = loose_params();
        assert!(Chromosome::from_route(left, &g, &p).evaluation.report.feasible);
        assert!(Chromosome::from_route(right, &g, &p).evaluation.report.feasible);
    }

    #[test]
    fn mutation_single_interior_gene_unchanged() {
        let g = graph_from_pairs(3, &[(1, 2), (2, 3)]);
        let p = loose_params();
        let c = Chromosome::from_route(Route::new(vec![1, 2, 3]), &g, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            assert_eq!(mutate(&c, &mut rng, &g, &p).route, c.route);
        }
    }

    #[test]
    fn mutation_inversion_of_invalid_candidate_keeps_parent() {
        let g = fixture_18();
        let route = Route::new(vec![1, 3, 8, 13, 18]);
        let inverted = apply_mutation(&route, MutationOp::Inversion, 0, 2);
        assert_eq!(inverted.nodes, vec![1, 13, 8, 3, 18]);
        let p = loose_params();
        // hop 1-13 does not exist, so the mutant is dropped
        assert!(!Chromosome::from_route(inverted, &g, &p).evaluation.report.feasible);
        let parent = Chromosome::from_route(route, &g, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let m = mutate(&parent, &mut rng, &g, &p);
            assert!(m.evaluation.report.feasible);
        }
    }

    #[test]
    fn mutation_never_touches_endpoints() {
        let g = fixture_18();
        let p = loose_params();
        let c = Chromosome::from_route(Route::new(vec![1, 3, 8, 13, 18]), &g, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10_000 {
            let m = mutate(&c, &mut rng, &g, &p);
            assert_eq!(m.route.nodes.first(), Some(&1));
            assert_eq!(m.route.nodes.last(), Some(&18));
        }
    }

    #[test]
    fn evolve_zero_generations_returns_initial_best() {
        let g = fixture_18();
        let cfg = GaConfig { population_size: 30, max_generations: 0, seed: 9, ..GaConfig::default() };
        let p = loose_params();
        let result = evolve(&g, &cfg, &p).unwrap();
        assert_eq!(result.history.len(), 1);
        let mut pop = init_population(&g, &cfg, &p).unwrap();
        sort_population(&mut pop);
        assert_eq!(result.best_route, pop[0].route);
    }

    #[test]
    fn evolve_same_seed_reproducible() {
        let g = fixture_18();
        let cfg = GaConfig {
            population_size: 30,
            max_generations: 40,
            seed: 21,
            ..GaConfig::default()
        };
        let p = loose_params();
        let a = evolve(&g, &cfg, &p).unwrap();
        let b = evolve(&g, &cfg, &p).unwrap();
        assert_eq!(a.best_route, b.best_route);
        assert_eq!(a.history, b.history);
    }

    #[test]
    fn evolve_history_monotone_and_population_invariants_hold() {
        let g = fixture_18();
        let cfg = GaConfig { population_size: 40, max_generations: 60, seed: 13, ..GaConfig::default() };
        let result = evolve(&g, &cfg, &loose_params()).unwrap();
        for w in result.history.windows(2) {
            assert!(w[1].best_cost <= w[0].best_cost);
        }
    }

    #[test]
    fn evolve_finds_triangle_optimum() {
        // Two candidate paths: {1,3} (cost_task 1) and {1,2,3} (cost_task 1/6).
        // Both consume the full 600 s budget, so {1,2,3} wins at cost 1/12.
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
        let g = MissionGraph::new(waypoints, edges, 1, 3).unwrap();
        let p = CostParams { t_available: 600.0, ..CostParams::default() };
        let cfg = GaConfig { population_size: 20, max_generations: 30, seed: 17, ..GaConfig::default() };
        let result = evolve(&g, &cfg, &p).unwrap();
        assert_eq!(result.best_route.nodes, vec![1, 2, 3]);
        assert!((result.cost.cost_total - 1.0 / 12.0).abs() < 1e-12);
    }
}
