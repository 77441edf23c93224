//! Seeded Watts–Strogatz location networks with power-law asset values, and
//! the small-worldness measure used to characterise them.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedLocationNetwork};

/// Asset-law exponent produced by [`calibrate_asset_exponent`] for 50-node
/// networks against the mean published network total (14.815). Regenerate with
/// `cargo run --example calibrate_assets`.
pub const DEFAULT_ASSET_EXPONENT: f64 = 1.63;

/// Random reference graphs drawn when estimating the random path length.
pub const DEFAULT_OMEGA_SAMPLES: usize = 10;

/// Connectivity retries before generation gives up.
pub const MAX_CONNECT_ATTEMPTS: u64 = 100;

const ASSET_X_MAX: f64 = 10.0;

const LENGTH_STREAM: u64 = 1_000;
const ASSET_STREAM: u64 = 1_001;
const REFERENCE_STREAM: u64 = 2_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationConfig {
    pub nodes: usize,
    /// Ring-lattice degree before rewiring; even.
    pub k: usize,
    /// Per-edge rewiring probability.
    pub beta: f64,
    /// Base edge length; every edge is an integer multiple of it.
    pub unit_km: f64,
    /// Largest multiple of `unit_km` an edge may have.
    pub mult_max: u32,
    pub asset_exponent: f64,
    pub seed: u64,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        Self {
            nodes: 50,
            k: 4,
            beta: 0.5,
            unit_km: 20.0,
            mult_max: 9,
            asset_exponent: DEFAULT_ASSET_EXPONENT,
            seed: 0,
        }
    }
}

impl GenerationConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.k < 2 || !self.k.is_multiple_of(2) {
            return fail(format!("k must be even and at least 2, got {}", self.k));
        }
        if self.k >= self.nodes {
            return fail(format!(
                "k = {} must be below node count {}",
                self.k, self.nodes
            ));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return fail(format!("beta {} outside [0, 1]", self.beta));
        }
        if !(self.unit_km.is_finite() && self.unit_km > 0.0) {
            return fail(format!("unit_km must be positive, got {}", self.unit_km));
        }
        if self.mult_max < 1 {
            return fail("mult_max must be at least 1".into());
        }
        if !(self.asset_exponent.is_finite() && self.asset_exponent > 0.0) {
            return fail(format!(
                "asset exponent must be positive, got {}",
                self.asset_exponent
            ));
        }
        Ok(())
    }
}

/// Generation parameters carried alongside a serialised network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkMeta {
    pub seed: u64,
    pub k: usize,
    pub beta: f64,
    pub unit_km: f64,
    pub mult_max: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asset_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

impl NetworkMeta {
    pub fn from_config(config: &GenerationConfig, omega: Option<f64>) -> Self {
        Self {
            seed: config.seed,
            k: config.k,
            beta: config.beta,
            unit_km: config.unit_km,
            mult_max: config.mult_max,
            asset_exponent: Some(config.asset_exponent),
            omega,
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generates a connected Watts–Strogatz network with integer-multiple edge
/// lengths and power-law asset values. A pure function of `config`.
pub fn generate(config: &GenerationConfig) -> Result<WeightedLocationNetwork> {
    config.validate()?;
    let n = config.nodes;

    let topology = (0..MAX_CONNECT_ATTEMPTS)
        .map(|attempt| {
            let mut rng = stream_rng(config.seed, attempt);
            watts_strogatz(n, config.k, config.beta, &mut rng)
        })
        .find(|adj| is_connected(adj))
        .ok_or_else(|| {
            Error::Generation(format!(
                "no connected topology in {MAX_CONNECT_ATTEMPTS} attempts \
                 (n = {n}, k = {}, beta = {})",
                config.k, config.beta
            ))
        })?;

    let mut length_rng = stream_rng(config.seed, LENGTH_STREAM);
    let mut edges = Vec::with_capacity(n * config.k / 2);
    for (u, nbrs) in topology.iter().enumerate() {
        for &v in nbrs.range(u + 1..) {
            let mult = length_rng.random_range(1..=config.mult_max);
            edges.push(Edge {
                u,
                v,
                km: config.unit_km * f64::from(mult),
            });
        }
    }

    let mut asset_rng = stream_rng(config.seed, ASSET_STREAM);
    let assets = sample_assets(n, config.asset_exponent, &mut asset_rng);

    WeightedLocationNetwork::new(assets, edges)
}

/// Ring lattice on `n` nodes with each node joined to its `k` nearest ring
/// neighbours, then each lattice edge `(u, u + j)` rewired to `(u, w)` with
/// probability `beta`, avoiding self-loops and duplicate edges.
fn watts_strogatz(n: usize, k: usize, beta: f64, rng: &mut impl Rng) -> Vec<BTreeSet<usize>> {
    let mut adj = ring_lattice(n, k);
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.random::<f64>() >= beta {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let mut w = rng.random_range(0..n);
            while w == u || adj[u].contains(&w) {
                w = rng.random_range(0..n);
            }
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    adj
}

fn ring_lattice(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

fn is_connected(adj: &[BTreeSet<usize>]) -> bool {
    bfs_distances(adj, 0).iter().all(Option::is_some)
}

fn bfs_distances(adj: &[BTreeSet<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or_default();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Inverse CDF of the density proportional to `x^-alpha` on `[1, 10]`.
pub fn power_law_quantile(r: f64, alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        ASSET_X_MAX.powf(r)
    } else {
        let e = 1.0 - alpha;
        (1.0 + r * (ASSET_X_MAX.powf(e) - 1.0)).powf(1.0 / e)
    }
}

fn power_law_cdf(x: f64, alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        x.ln() / ASSET_X_MAX.ln()
    } else {
        let e = 1.0 - alpha;
        (x.powf(e) - 1.0) / (ASSET_X_MAX.powf(e) - 1.0)
    }
}

/// Maps a power-law draw on `[1, 10]` to an asset value in tenths.
pub fn discretize_asset(x: f64) -> f64 {
    (x.round() / 10.0).clamp(0.1, 1.0)
}

/// Asset values for `n` nodes. Uniform variates are stratified (one per
/// `[i/n, (i+1)/n)` bucket) and the results shuffled across nodes, so each
/// node's value still follows the discretised power law while the network
/// total stays close to its expectation.
pub fn sample_assets(n: usize, alpha: f64, rng: &mut impl Rng) -> Vec<f64> {
    let mut assets: Vec<f64> = (0..n)
        .map(|i| {
            let r = (i as f64 + rng.random::<f64>()) / n as f64;
            discretize_asset(power_law_quantile(r, alpha))
        })
        .collect();
    assets.shuffle(rng);
    assets
}

/// Probability that a node receives asset value `tenths / 10`, for `tenths`
/// in `1..=10`.
pub fn asset_value_probability(tenths: u32, alpha: f64) -> f64 {
    let k = f64::from(tenths);
    let lo = (k - 0.5).max(1.0);
    let hi = (k + 0.5).min(ASSET_X_MAX);
    if hi <= lo {
        return 0.0;
    }
    power_law_cdf(hi, alpha) - power_law_cdf(lo, alpha)
}

/// Expected asset value of one node under the discretised power law.
pub fn expected_asset_value(alpha: f64) -> f64 {
    (1..=10)
        .map(|t| f64::from(t) / 10.0 * asset_value_probability(t, alpha))
        .sum()
}

/// Finds the exponent whose expected network total over `nodes` nodes equals
/// `target_total`, by bisection (the expectation decreases in the exponent).
pub fn calibrate_asset_exponent(nodes: usize, target_total: f64) -> Result<f64> {
    let total = |a: f64| nodes as f64 * expected_asset_value(a);
    let (mut lo, mut hi) = (0.05, 10.0);
    if !(total(hi)..=total(lo)).contains(&target_total) {
        return Err(Error::Config(format!(
            "target total {target_total} unreachable for {nodes} nodes"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) > target_total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldness {
    pub omega: f64,
    pub c_observed: f64,
    pub c_lattice: f64,
    pub l_observed: f64,
    pub l_random: f64,
    pub lattice_degree: usize,
    pub random_samples: usize,
}

/// `omega = l_random / l_observed - c_observed / c_lattice` on the unweighted
/// topology. The lattice reference has the same node count and the even degree
/// nearest the observed mean degree; the random reference is the mean over
/// `samples` connected G(n, m) graphs with the same edge count.
pub fn small_worldness(
    net: &WeightedLocationNetwork,
    samples: usize,
    seed: u64,
) -> Result<SmallWorldness> {
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    if samples == 0 {
        return Err(Error::Config(
            "small-worldness needs at least one sample".into(),
        ));
    }
    let n = net.node_count();
    let adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| net.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let m = net.edge_count();

    let max_even = if (n - 1).is_multiple_of(2) {
        n - 1
    } else {
        n.saturating_sub(2)
    };
    let mean_degree = 2.0 * m as f64 / n as f64;
    let lattice_degree = ((2.0 * (mean_degree / 2.0).round()) as usize).clamp(2, max_even.max(2));
    if lattice_degree >= n {
        return Err(Error::LatticeClusteringUndefined);
    }
    let c_lattice = mean_clustering(&ring_lattice(n, lattice_degree));
    if c_lattice <= 0.0 {
        return Err(Error::LatticeClusteringUndefined);
    }

    let c_observed = mean_clustering(&adj);
    let l_observed = mean_path_length(&adj).ok_or(Error::Disconnected)?;

    let mut rng = stream_rng(seed, REFERENCE_STREAM);
    let mut lengths = Vec::with_capacity(samples);
    let max_draws = samples * 100;
    let mut draws = 0;
    while lengths.len() < samples && draws < max_draws {
        draws += 1;
        if let Some(l) = mean_path_length(&gnm_random(n, m, &mut rng)) {
            lengths.push(l);
        }
    }
    if lengths.is_empty() {
        return Err(Error::Generation(format!(
            "no connected random reference in {max_draws} draws"
        )));
    }
    let l_random = lengths.iter().sum::<f64>() / lengths.len() as f64;

    Ok(SmallWorldness {
        omega: l_random / l_observed - c_observed / c_lattice,
        c_observed,
        c_lattice,
        l_observed,
        l_random,
        lattice_degree,
        random_samples: lengths.len(),
    })
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute zero.
fn mean_clustering(adj: &[BTreeSet<usize>]) -> f64 {
    let n = adj.len();
    let total: f64 = adj
        .iter()
        .map(|nbrs| {
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let nbr: Vec<usize> = nbrs.iter().copied().collect();
            let mut links = 0usize;
            for (i, &a) in nbr.iter().enumerate() {
                links += nbr[i + 1..]
                    .iter()
                    .filter(|&&b| adj[a].contains(&b))
                    .count();
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        })
        .sum();
    total / n as f64
}

/// Mean hop distance over ordered pairs, or `None` when disconnected.
fn mean_path_length(adj: &[BTreeSet<usize>]) -> Option<f64> {
    let n = adj.len();
    if n < 2 {
        return Some(0.0);
    }
    let mut total = 0usize;
    for s in 0..n {
        for d in bfs_distances(adj, s) {
            total += d?;
        }
    }
    Some(total as f64 / (n * (n - 1)) as f64)
}

fn gnm_random(n: usize, m: usize, rng: &mut impl Rng) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    let mut placed = 0;
    while placed < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && adj[u].insert(v) {
            adj[v].insert(u);
            placed += 1;
        }
    }
    adj
}
