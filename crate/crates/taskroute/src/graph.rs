//! Waypoint graph: 3D nodes, task-labeled undirected edges, scenario generation.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible risk percentage. Keeps priority/risk ratios finite.
pub const MIN_RISK_PCT: f64 = 0.1;

/// A fixed 3D node of the operating area. Ids are 1-based and contiguous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    /// Depth in meters, non-negative.
    pub z: f64,
}

/// Work attached to an edge: priority, risk percentage and on-site completion time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub priority: f64,
    /// Percentage in (0, 100]; values below [`MIN_RISK_PCT`] are clamped at construction.
    pub risk_pct: f64,
    /// Seconds spent on the task when the edge is traversed.
    pub completion_time: f64,
}

/// Undirected task-labeled edge; at most one per unordered node pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub a: u32,
    pub b: u32,
    pub task: Task,
}

/// Immutable mission graph. Construct through [`MissionGraph::new`] so the
/// adjacency index stays consistent with the edge list.
#[derive(Debug, Clone)]
pub struct MissionGraph {
    waypoints: Vec<Waypoint>,
    edges: Vec<Edge>,
    pub start: u32,
    pub destination: u32,
    /// adjacency[i] holds the ascending neighbor ids of node i+1.
    adjacency: Vec<Vec<u32>>,
    /// Unordered pair (min,max) to index into `edges`.
    edge_index: HashMap<(u32, u32), usize>,
}

fn pair_key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

impl MissionGraph {
    pub fn new(waypoints: Vec<Waypoint>, edges: Vec<Edge>, start: u32, destination: u32) -> Result<Self> {
        let n = waypoints.len();
        if n < 2 {
            return Err(Error::InvalidGraph("need at least two waypoints".into()));
        }
        let mut seen = vec![false; n + 1];
        for w in &waypoints {
            if w.id == 0 || w.id as usize > n {
                return Err(Error::InvalidGraph(format!(
                    "waypoint id {} outside 1..={}",
                    w.id, n
                )));
            }
            if seen[w.id as usize] {
                return Err(Error::InvalidGraph(format!("duplicate waypoint id {}", w.id)));
            }
            seen[w.id as usize] = true;
            if !(w.x.is_finite() && w.y.is_finite() && w.z.is_finite()) {
                return Err(Error::InvalidGraph(format!("non-finite coordinate on waypoint {}", w.id)));
            }
        }
        if start == destination {
            return Err(Error::InvalidGraph("start equals destination".into()));
        }
        if start == 0 || start as usize > n || destination == 0 || destination as usize > n {
            return Err(Error::InvalidGraph("start or destination is not a waypoint id".into()));
        }

        let mut sorted = waypoints;
        sorted.sort_by_key(|w| w.id);

        let mut checked = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for e in edges {
            if e.a == e.b {
                return Err(Error::InvalidGraph(format!("self-loop on node {}", e.a)));
            }
            for id in [e.a, e.b] {
                if id == 0 || id as usize > n {
                    return Err(Error::InvalidGraph(format!("edge {}-{} references unknown node {}", e.a, e.b, id)));
                }
            }
            if e.task.priority <= 0.0 || !e.task.priority.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} has non-positive priority",
                    e.a, e.b
                )));
            }
            if e.task.risk_pct <= 0.0 || e.task.risk_pct > 100.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} has risk_pct {} outside (0,100]",
                    e.a, e.b, e.task.risk_pct
                )));
            }
            if e.task.completion_time < 0.0 || !e.task.completion_time.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} has negative completion time",
                    e.a, e.b
                )));
            }
            let key = pair_key(e.a, e.b);
            if edge_index.contains_key(&key) {
                return Err(Error::InvalidGraph(format!("duplicate edge {}-{}", key.0, key.1)));
            }
            let mut e = e;
            e.task.risk_pct = e.task.risk_pct.max(MIN_RISK_PCT);
            edge_index.insert(key, checked.len());
            adjacency[e.a as usize - 1].push(e.b);
            adjacency[e.b as usize - 1].push(e.a);
            checked.push(e);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(MissionGraph {
            waypoints: sorted,
            edges: checked,
            start,
            destination,
            adjacency,
            edge_index,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.waypoints.len()
    }

    pub fn waypoints(&self) -> &[Waypoint] {
        &self.waypoints
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn waypoint(&self, id: u32) -> Result<&Waypoint> {
        if id == 0 || id as usize > self.waypoints.len() {
            return Err(Error::UnknownNode(id));
        }
        Ok(&self.waypoints[id as usize - 1])
    }

    /// Ascending neighbor ids of `node`.
    pub fn neighbors(&self, node: u32) -> Result<&[u32]> {
        if node == 0 || node as usize > self.adjacency.len() {
            return Err(Error::UnknownNode(node));
        }
        Ok(&self.adjacency[node as usize - 1])
    }

    pub fn edge(&self, a: u32, b: u32) -> Option<&Edge> {
        self.edge_index.get(&pair_key(a, b)).map(|&i| &self.edges[i])
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edge_index.contains_key(&pair_key(a, b))
    }

    /// True when `destination` is reachable from `start`.
    pub fn start_connected(&self) -> bool {
        let n = self.waypoints.len();
        let mut seen = vec![false; n + 1];
        let mut queue = std::collections::VecDeque::from([self.start]);
        seen[self.start as usize] = true;
        while let Some(node) = queue.pop_front() {
            if node == self.destination {
                return true;
            }
            for &nb in &self.adjacency[node as usize - 1] {
                if !seen[nb as usize] {
                    seen[nb as usize] = true;
                    queue.push_back(nb);
                }
            }
        }
        false
    }
}

pub fn euclidean_distance(a: &Waypoint, b: &Waypoint) -> f64 {
    ((b.x - a.x).powi(2) + (b.y - a.y).powi(2) + (b.z - a.z).powi(2)).sqrt()
}

/// Time to traverse a distance at cruise speed plus the edge task's completion time.
pub fn traversal_time(d: f64, v_auv: f64, task: &Task) -> Result<f64> {
    if v_auv <= 0.0 {
        return Err(Error::InvalidParameter(format!("v_auv must be positive, got {v_auv}")));
    }
    Ok(d / v_auv + task.completion_time)
}

/// Random scenario parameters. Defaults model a 10 km² area with 100 m depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_nodes: usize,
    pub area_x: f64,
    pub area_y: f64,
    pub depth: f64,
    /// Probability of an edge per unordered node pair, in (0,1].
    pub edge_density: f64,
    pub priority_range: (f64, f64),
    /// Percent, within (0,100].
    pub risk_range: (f64, f64),
    /// Seconds.
    pub task_time_range: (f64, f64),
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            n_nodes: 20,
            area_x: 10_000.0,
            area_y: 1_000.0,
            depth: 100.0,
            edge_density: 0.5,
            priority_range: (1.0, 10.0),
            risk_range: (0.5, 20.0),
            task_time_range: (60.0, 600.0),
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    fn check(&self) -> Result<()> {
        if self.n_nodes < 2 {
            return Err(Error::InvalidParameter("n_nodes must be at least 2".into()));
        }
        if self.area_x <= 0.0 || self.area_y <= 0.0 || self.depth <= 0.0 {
            return Err(Error::InvalidParameter("operating volume must be positive".into()));
        }
        if !(self.edge_density > 0.0 && self.edge_density <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "edge_density {} outside (0,1]",
                self.edge_density
            )));
        }
        let ranges = [
            ("priority_range", self.priority_range, 0.0, f64::INFINITY),
            ("risk_range", self.risk_range, 0.0, 100.0),
            ("task_time_range", self.task_time_range, -f64::EPSILON, f64::INFINITY),
        ];
        for (name, (lo, hi), min, max) in ranges {
            if !(lo < hi) || lo <= min || hi > max {
                return Err(Error::InvalidParameter(format!("{name} ({lo}, {hi}) is degenerate or out of bounds")));
            }
        }
        Ok(())
    }
}

fn sample_task<R: Rng>(cfg: &ScenarioConfig, rng: &mut R) -> Task {
    Task {
        priority: rng.gen_range(cfg.priority_range.0..cfg.priority_range.1),
        risk_pct: rng.gen_range(cfg.risk_range.0..cfg.risk_range.1).max(MIN_RISK_PCT),
        completion_time: rng.gen_range(cfg.task_time_range.0..cfg.task_time_range.1),
    }
}

/// Generates a reproducible random scenario: waypoints are Gaussian perturbations
/// of lattice cells filling the volume, edges are sampled per pair with
/// `edge_density`, and a random spanning path is added so the destination is
/// always reachable from the start. start = 1, destination = n.
pub fn generate_scenario(cfg: &ScenarioConfig) -> Result<MissionGraph> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n_nodes;

    // Lattice axis counts proportional to the volume's aspect ratio; the ceil
    // guarantees nx*ny*nz >= n.
    let scale = (n as f64 / (cfg.area_x * cfg.area_y * cfg.depth)).cbrt();
    let nx = (cfg.area_x * scale).ceil().max(1.0) as usize;
    let ny = (cfg.area_y * scale).ceil().max(1.0) as usize;
    let mut nz = (cfg.depth * scale).ceil().max(1.0) as usize;
    while nx * ny * nz < n {
        nz += 1;
    }
    let (dx, dy, dz) = (cfg.area_x / nx as f64, cfg.area_y / ny as f64, cfg.depth / nz as f64);

    let mut cells: Vec<(usize, usize, usize)> = Vec::with_capacity(nx * ny * nz);
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                cells.push((i, j, k));
            }
        }
    }
    cells.shuffle(&mut rng);

    let jitter = |center: f64, sigma: f64, hi: f64, rng: &mut ChaCha8Rng| -> Result<f64> {
        let normal = Normal::new(center, sigma)
            .map_err(|e| Error::GenerationFailure(format!("bad jitter parameters: {e}")))?;
        Ok(normal.sample(rng).clamp(0.0, hi))
    };

    let mut waypoints = Vec::with_capacity(n);
    for (id, &(i, j, k)) in cells.iter().take(n).enumerate() {
        waypoints.push(Waypoint {
            id: id as u32 + 1,
            x: jitter((i as f64 + 0.5) * dx, dx / 4.0, cfg.area_x, &mut rng)?,
            y: jitter((j as f64 + 0.5) * dy, dy / 4.0, cfg.area_y, &mut rng)?,
            z: jitter((k as f64 + 0.5) * dz, dz / 4.0, cfg.depth, &mut rng)?,
        });
    }

    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for a in 1..=n as u32 {
        for b in (a + 1)..=n as u32 {
            if rng.gen_bool(cfg.edge_density) {
                present.insert((a, b));
                edges.push(Edge { a, b, task: sample_task(cfg, &mut rng) });
            }
        }
    }

    // Spanning path over a random node order: connects the whole graph, so
    // start -> destination is always reachable.
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(&mut rng);
    for pair in order.windows(2) {
        let key = pair_key(pair[0], pair[1]);
        if present.insert(key) {
            edges.push(Edge { a: key.0, b: key.1, task: sample_task(cfg, &mut rng) });
        }
    }

    let graph = MissionGraph::new(waypoints, edges, 1, n as u32)?;
    if !graph.start_connected() {
        return Err(Error::GenerationFailure("generated graph is not start-connected".into()));
    }
    Ok(graph)
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    nodes: Vec<Waypoint>,
    edges: Vec<EdgeRecord>,
    start: u32,
    destination: u32,
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    a: u32,
    b: u32,
    priority: f64,
    risk_pct: f64,
    completion_time: f64,
}

pub fn save_graph(g: &MissionGraph) -> Result<Vec<u8>> {
    let file = GraphFile {
        nodes: g.waypoints.clone(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeRecord {
                a: e.a,
                b: e.b,
                priority: e.task.priority,
                risk_pct: e.task.risk_pct,
                completion_time: e.task.completion_time,
            })
            .collect(),
        start: g.start,
        destination: g.destination,
    };
    Ok(serde_json::to_vec_pretty(&file)?)
}

pub fn load_graph(bytes: &[u8]) -> Result<MissionGraph> {
    let file: GraphFile = serde_json::from_slice(bytes)?;
    let edges = file
        .edges
        .into_iter()
        .map(|r| Edge {
            a: r.a,
            b: r.b,
            task: Task {
                priority: r.priority,
                risk_pct: r.risk_pct,
                completion_time: r.completion_time,
            },
        })
        .collect();
    MissionGraph::new(file.nodes, edges, file.start, file.destination)
}
