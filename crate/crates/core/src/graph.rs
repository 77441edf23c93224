//! Weighted location networks and shortest-path machinery.
//!
//! Edge lengths are trajectory distances in kilometres. Nothing here assumes a
//! Euclidean embedding: two nodes may be joined by an edge that is longer than
//! some detour through the rest of the network.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgen::NetworkMeta;

pub type NodeId = usize;

/// Absolute tolerance used when comparing path lengths in km.
pub const DIST_EPS: f64 = 1e-9;

/// Tolerance for "these two distances are the same" at magnitude `scale`.
#[inline]
pub(crate) fn dist_tol(scale: f64) -> f64 {
    DIST_EPS * scale.abs().max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub km: f64,
}

/// Undirected network whose nodes carry an asset value in `[0, 1]` and whose
/// edges carry a positive length in km.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLocationNetwork {
    assets: Vec<f64>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedLocationNetwork {
    /// Builds a network, normalising every edge to `u < v` and sorting the
    /// edge list. Connectivity is not required here; algorithms that need it
    /// check for themselves.
    pub fn new(assets: Vec<f64>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let n = assets.len();
        if n == 0 {
            return Err(Error::InvalidNetwork("network has no nodes".into()));
        }
        if let Some((i, a)) = assets
            .iter()
            .enumerate()
            .find(|(_, a)| !a.is_finite() || **a < 0.0 || **a > 1.0)
        {
            return Err(Error::InvalidNetwork(format!(
                "asset value {a} of node {i} outside [0, 1]"
            )));
        }

        let mut normalized = Vec::new();
        for e in edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidNetwork(format!(
                    "edge ({}, {}) references a node outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidNetwork(format!("self-loop at node {}", e.u)));
            }
            if !e.km.is_finite() || e.km <= 0.0 {
                return Err(Error::InvalidNetwork(format!(
                    "edge ({}, {}) has non-positive length {}",
                    e.u, e.v, e.km
                )));
            }
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            normalized.push(Edge { u, v, km: e.km });
        }
        normalized.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = normalized
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::InvalidNetwork(format!(
                "duplicate edge ({}, {})",
                w[0].u, w[0].v
            )));
        }

        let mut adjacency = vec![Vec::new(); n];
        for e in &normalized {
            adjacency[e.u].push((e.v, e.km));
            adjacency[e.v].push((e.u, e.km));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(w, _)| w);
        }

        Ok(Self {
            assets,
            edges: normalized,
            adjacency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.assets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn asset(&self, v: NodeId) -> f64 {
        self.assets[v]
    }

    pub fn assets(&self) -> &[f64] {
        &self.assets
    }

    /// Sum of all asset values, accumulated in node order.
    pub fn total_asset(&self) -> f64 {
        self.assets.iter().sum()
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` with edge lengths, sorted by neighbour id.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_km(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    pub fn min_edge_km(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.km).reduce(f64::min)
    }

    pub fn max_edge_km(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.km).reduce(f64::max)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Same topology and assets with every edge length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.assets.clone(),
            self.edges.iter().map(|e| Edge {
                km: e.km * factor,
                ..*e
            }),
        )
    }

    /// Renames node `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[NodeId]) -> Result<Self> {
        let n = self.node_count();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::Config("relabeling is not a permutation".into()));
        }
        let mut assets = vec![0.0; n];
        for (v, &a) in self.assets.iter().enumerate() {
            assets[perm[v]] = a;
        }
        Self::new(
            assets,
            self.edges.iter().map(|e| Edge {
                u: perm[e.u],
                v: perm[e.v],
                km: e.km,
            }),
        )
    }

    pub fn to_document(&self, meta: Option<NetworkMeta>) -> NetworkDocument {
        NetworkDocument {
            nodes: self
                .assets
                .iter()
                .enumerate()
                .map(|(id, &asset)| NodeRecord { id, asset })
                .collect(),
            edges: self.edges.clone(),
            meta,
        }
    }

    pub fn to_json(&self, meta: Option<NetworkMeta>) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document(meta))?)
    }

    pub fn from_json(text: &str) -> Result<(Self, Option<NetworkMeta>)> {
        let doc: NetworkDocument = serde_json::from_str(text)?;
        doc.into_network()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub asset: f64,
}

/// Interchange form: `{"nodes":[{"id":0,"asset":0.3}],"edges":[{"u":0,"v":5,"km":41.0}]}`
/// with an optional `meta` block describing how the network was generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<NetworkMeta>,
}

impl NetworkDocument {
    pub fn into_network(self) -> Result<(WeightedLocationNetwork, Option<NetworkMeta>)> {
        let n = self.nodes.len();
        let mut assets = vec![f64::NAN; n];
        for rec in &self.nodes {
            if rec.id >= n || !assets[rec.id].is_nan() {
                return Err(Error::InvalidNetwork(format!(
                    "node ids must be contiguous 0..{n}, found {}",
                    rec.id
                )));
            }
            assets[rec.id] = rec.asset;
        }
        let net = WeightedLocationNetwork::new(assets, self.edges)?;
        Ok((net, self.meta))
    }
}

/// All-pairs shortest-path distances in km, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: NodeId, v: NodeId) -> f64 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: NodeId) -> &[f64] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: NodeId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then node id
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest-path distances. Unreachable nodes get `f64::INFINITY`.
pub fn dijkstra(net: &WeightedLocationNetwork, source: NodeId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; net.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapEntry { dist: d, node: v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, km) in net.neighbors(v) {
            let nd = d + km;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(HeapEntry { dist: nd, node: w });
            }
        }
    }
    dist
}

/// Runs Dijkstra from every node.
pub fn all_pairs_shortest_paths(net: &WeightedLocationNetwork) -> Result<DistanceMatrix> {
    let n = net.node_count();
    let mut d = Vec::with_capacity(n * n);
    for s in 0..n {
        let row = dijkstra(net, s);
        if row.iter().any(|x| x.is_infinite()) {
            return Err(Error::Disconnected);
        }
        d.extend(row);
    }
    Ok(DistanceMatrix { n, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diameter {
    pub km: f64,
    pub source: NodeId,
    pub target: NodeId,
}

/// Largest pairwise distance and the lexicographically smallest pair attaining it.
pub fn diameter(dm: &DistanceMatrix) -> Diameter {
    let n = dm.node_count();
    let mut best: Option<Diameter> = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let d = dm.get(u, v);
            if best.is_none_or(|b| d > b.km + dist_tol(b.km)) {
                best = Some(Diameter {
                    km: d,
                    source: u,
                    target: v,
                });
            }
        }
    }
    best.unwrap_or(Diameter {
        km: 0.0,
        source: 0,
        target: 0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub nodes: Vec<NodeId>,
    pub total_km: f64,
}

/// Shortest path from `u` to `v`; among equal-length paths the one that is
/// lexicographically smallest as a node sequence.
///
/// Walking forward and always taking the smallest neighbour that still lies on
/// some shortest path yields exactly that sequence.
pub fn shortest_path(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    u: NodeId,
    v: NodeId,
) -> PathResult {
    let mut nodes = vec![u];
    let mut total_km = 0.0;
    let mut cur = u;
    while cur != v {
        let remaining = dm.get(cur, v);
        let (next, km) = net
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&(w, km)| (km + dm.get(w, v) - remaining).abs() <= dist_tol(remaining))
            .expect("distance matrix inconsistent with network");
        nodes.push(next);
        total_km += km;
        cur = next;
    }
    PathResult { nodes, total_km }
}

/// Shortest path from `v` to the node farthest from it (lowest id on ties).
pub fn farthest_node_path(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    v: NodeId,
) -> PathResult {
    let row = dm.row(v);
    let mut far = v;
    for (u, &d) in row.iter().enumerate() {
        if d > row[far] + dist_tol(row[far]) {
            far = u;
        }
    }
    shortest_path(net, dm, v, far)
}
