//! Six node-importance measures and the rank sequences derived from them.
//!
//! Shortest-path measures (betweenness, closeness, load) read edge length as a
//! cost. The walk and spectral measures (link rank, eigenvector) read the same
//! km value as an affinity, the way a single "weight" attribute is usually
//! interpreted by graph toolkits.

use std::io::Write;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{dist_tol, DistanceMatrix, NodeId, WeightedLocationNetwork};

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const LINK_RANK_TOL: f64 = 1e-9;
pub const LINK_RANK_MAX_ITER: usize = 200;
pub const EIGENVECTOR_TOL: f64 = 1e-10;
pub const EIGENVECTOR_MAX_ITER: usize = 100_000;

/// One score per node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(scores: Vec<f64>) -> Self {
        Self(scores)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Index<NodeId> for ScoreVector {
    type Output = f64;

    fn index(&self, v: NodeId) -> &f64 {
        &self.0[v]
    }
}

/// The six measures, in the order their rank sequences are consulted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Betweenness,
    Closeness,
    LinkRank,
    Eigenvector,
    Load,
    Degree,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Betweenness,
        Measure::Closeness,
        Measure::LinkRank,
        Measure::Eigenvector,
        Measure::Load,
        Measure::Degree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::LinkRank => "link_rank",
            Measure::Eigenvector => "eigenvector",
            Measure::Load => "load",
            Measure::Degree => "degree",
        }
    }
}

/// Shortest-path DAG rooted at `s`: nodes in nondecreasing distance order and
/// each node's predecessors on shortest paths from `s`.
fn shortest_path_dag(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    s: NodeId,
) -> (Vec<NodeId>, Vec<Vec<NodeId>>) {
    let n = net.node_count();
    let row = dm.row(s);
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
    let preds = (0..n)
        .map(|w| {
            net.neighbors(w)
                .iter()
                .filter(|&&(v, km)| {
                    row[v] < row[w] && (row[v] + km - row[w]).abs() <= dist_tol(row[w])
                })
                .map(|&(v, _)| v)
                .collect()
        })
        .collect();
    (order, preds)
}

fn pair_normalizer(n: usize) -> f64 {
    if n > 2 {
        1.0 / ((n - 1) * (n - 2)) as f64
    } else {
        0.0
    }
}

/// Shortest-path betweenness over ordered pairs, normalised by `(n-1)(n-2)`.
pub fn betweenness(net: &WeightedLocationNetwork, dm: &DistanceMatrix) -> ScoreVector {
    let n = net.node_count();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        let (order, preds) = shortest_path_dag(net, dm, s);
        let mut sigma = vec![0.0; n];
        sigma[s] = 1.0;
        for &w in &order {
            for &v in &preds[w] {
                sigma[w] += sigma[v];
            }
        }
        let mut delta = vec![0.0; n];
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    let scale = pair_normalizer(n);
    ScoreVector(bc.into_iter().map(|x| x * scale).collect())
}

/// `(n - 1) / sum of distances` to every other node.
pub fn closeness(dm: &DistanceMatrix) -> ScoreVector {
    let n = dm.node_count();
    ScoreVector(
        (0..n)
            .map(|v| {
                let total: f64 = dm.row(v).iter().sum();
                if total > 0.0 {
                    (n - 1) as f64 / total
                } else {
                    0.0
                }
            })
            .collect(),
    )
}

/// Damped random-walk ranking; the walk leaves `u` along edge `(u, v)` with
/// probability proportional to its weight.
pub fn link_rank(
    net: &WeightedLocationNetwork,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<ScoreVector> {
    let n = net.node_count();
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(ScoreVector(vec![1.0]));
    }
    let strength: Vec<f64> = (0..n)
        .map(|u| net.neighbors(u).iter().map(|&(_, w)| w).sum())
        .collect();
    let teleport = (1.0 - damping) / n as f64;
    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let mut next = vec![teleport; n];
        for u in 0..n {
            let out = damping * x[u] / strength[u];
            for &(v, w) in net.neighbors(u) {
                next[v] += out * w;
            }
        }
        residual = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if residual < tol {
            let total: f64 = x.iter().sum();
            return Ok(ScoreVector(x.into_iter().map(|v| v / total).collect()));
        }
    }
    Err(Error::NoConvergence {
        measure: "link_rank",
        iterations: max_iter,
        residual,
    })
}

fn weighted_product(net: &WeightedLocationNetwork, x: &[f64]) -> Vec<f64> {
    (0..net.node_count())
        .map(|v| net.neighbors(v).iter().map(|&(w, km)| km * x[w]).sum())
        .collect()
}

/// Dominant eigenvector of the weighted adjacency matrix, unit Euclidean norm.
///
/// Iterates with `A + cI`, `c` half the largest weighted degree, so that
/// bipartite graphs (whose spectrum is symmetric) still converge. Stops once
/// `|A x - lambda x| <= tol * lambda` componentwise.
pub fn eigenvector(
    net: &WeightedLocationNetwork,
    tol: f64,
    max_iter: usize,
) -> Result<ScoreVector> {
    let n = net.node_count();
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(ScoreVector(vec![1.0]));
    }
    let shift = 0.5
        * (0..n)
            .map(|v| net.neighbors(v).iter().map(|&(_, w)| w).sum::<f64>())
            .fold(0.0, f64::max);
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let ax = weighted_product(net, &x);
        let lambda: f64 = ax.iter().zip(&x).map(|(a, b)| a * b).sum();
        residual = ax
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0, f64::max);
        if residual <= tol * lambda {
            return Ok(ScoreVector(x));
        }
        let mut next: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        next.iter_mut().for_each(|v| *v /= norm);
        x = next;
    }
    Err(Error::NoConvergence {
        measure: "eigenvector",
        iterations: max_iter,
        residual,
    })
}

/// Newman load: every pair exchanges one unit of flow that splits equally
/// among tied next hops at each branch point; a node's score is the flow
/// passing through it, normalised by `(n-1)(n-2)`.
pub fn load(net: &WeightedLocationNetwork, dm: &DistanceMatrix) -> ScoreVector {
    let n = net.node_count();
    let mut total = vec![0.0; n];
    // Flow from t toward root s, split over t's predecessors in the DAG rooted
    // at s, equals flow from s to t split over next hops; summing over all
    // ordered pairs covers both directions.
    for s in 0..n {
        let (order, preds) = shortest_path_dag(net, dm, s);
        let mut flow = vec![1.0; n];
        for &t in order.iter().rev() {
            if t == s {
                continue;
            }
            let share = flow[t] / preds[t].len() as f64;
            for &p in &preds[t] {
                if p != s {
                    flow[p] += share;
                }
            }
        }
        for v in 0..n {
            if v != s {
                total[v] += flow[v] - 1.0;
            }
        }
    }
    let scale = pair_normalizer(n);
    ScoreVector(total.into_iter().map(|x| x * scale).collect())
}

/// Fraction of the other nodes each node is adjacent to.
pub fn degree(net: &WeightedLocationNetwork) -> ScoreVector {
    let n = net.node_count();
    ScoreVector(
        (0..n)
            .map(|v| {
                if n > 1 {
                    net.degree(v) as f64 / (n - 1) as f64
                } else {
                    0.0
                }
            })
            .collect(),
    )
}

/// Nodes by descending score; ties (equal to ~12 significant digits) go to
/// the lower node id.
pub fn rank_sequence(scores: &ScoreVector) -> Vec<NodeId> {
    let scale = scores.0.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    let key = |s: f64| -> i64 {
        if scale == 0.0 {
            0
        } else {
            (s / scale * 1e12).round() as i64
        }
    };
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(key(scores[v])), v));
    order
}

/// All six score vectors for one network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    pub betweenness: ScoreVector,
    pub closeness: ScoreVector,
    pub link_rank: ScoreVector,
    pub eigenvector: ScoreVector,
    pub load: ScoreVector,
    pub degree: ScoreVector,
}

impl CentralityScores {
    pub fn compute(net: &WeightedLocationNetwork, dm: &DistanceMatrix) -> Result<Self> {
        Ok(Self {
            betweenness: betweenness(net, dm),
            closeness: closeness(dm),
            link_rank: link_rank(net, DEFAULT_DAMPING, LINK_RANK_TOL, LINK_RANK_MAX_ITER)?,
            eigenvector: eigenvector(net, EIGENVECTOR_TOL, EIGENVECTOR_MAX_ITER)?,
            load: load(net, dm),
            degree: degree(net),
        })
    }

    pub fn get(&self, measure: Measure) -> &ScoreVector {
        match measure {
            Measure::Betweenness => &self.betweenness,
            Measure::Closeness => &self.closeness,
            Measure::LinkRank => &self.link_rank,
            Measure::Eigenvector => &self.eigenvector,
            Measure::Load => &self.load,
            Measure::Degree => &self.degree,
        }
    }

    /// Rank sequences in [`Measure::ALL`] order.
    pub fn sequences(&self) -> [Vec<NodeId>; 6] {
        Measure::ALL.map(|m| rank_sequence(self.get(m)))
    }

    /// `node,betweenness,closeness,link_rank,eigenvector,load,degree`
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["node"];
        header.extend(Measure::ALL.map(Measure::name));
        w.write_record(&header)?;
        for v in 0..self.degree.len() {
            let mut rec = vec![v.to_string()];
            rec.extend(Measure::ALL.map(|m| self.get(m)[v].to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}
