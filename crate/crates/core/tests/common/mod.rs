//! Slow, definitional reference implementations and seeded fixtures shared by
//! the integration tests. Nothing here calls into the library's shortest-path
//! or centrality code.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iads::coverage::BatteryInventory;
use iads::graph::{Edge, WeightedLocationNetwork};

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph on 2..=`max_nodes` nodes: a random spanning tree plus a
/// few extra edges. Integer lengths in 1..=5 make shortest-path ties common.
pub fn random_connected(seed: u64, max_nodes: usize) -> WeightedLocationNetwork {
    let mut r = rng(seed);
    let n = r.random_range(2..=max_nodes);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut pairs = std::collections::BTreeSet::new();
    for i in 1..n {
        let parent = order[r.random_range(0..i)];
        let (a, b) = (order[i].min(parent), order[i].max(parent));
        pairs.insert((a, b));
    }
    let extra = r.random_range(0..=n);
    for _ in 0..extra {
        let a = r.random_range(0..n);
        let b = r.random_range(0..n);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<Edge> = pairs
        .into_iter()
        .map(|(u, v)| Edge {
            u,
            v,
            km: f64::from(r.random_range(1..=5u32)),
        })
        .collect();
    let assets = (0..n)
        .map(|_| f64::from(r.random_range(1..=10u32)) / 10.0)
        .collect();
    WeightedLocationNetwork::new(assets, edges).unwrap()
}

/// 1..=`max_batteries` ranges in km, largest first.
pub fn random_inventory(seed: u64, max_batteries: usize) -> BatteryInventory {
    let mut r = rng(seed ^ 0x9e37_79b9);
    let b = r.random_range(1..=max_batteries);
    let mut ranges: Vec<f64> = (0..b)
        .map(|_| f64::from(r.random_range(1..=8u32)))
        .collect();
    ranges.sort_by(|a, b| b.total_cmp(a));
    BatteryInventory::new(ranges, 0.98).unwrap()
}

pub fn weight_matrix(net: &WeightedLocationNetwork) -> Vec<Vec<f64>> {
    let n = net.node_count();
    let mut w = vec![vec![0.0; n]; n];
    for e in net.edges() {
        w[e.u][e.v] = e.km;
        w[e.v][e.u] = e.km;
    }
    w
}

pub fn floyd_warshall(net: &WeightedLocationNetwork) -> Vec<Vec<f64>> {
    let n = net.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in net.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.km);
        d[e.v][e.u] = d[e.v][e.u].min(e.km);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every simple path from `s` to `t`, with its length.
pub fn simple_paths(net: &WeightedLocationNetwork, s: usize, t: usize) -> Vec<(Vec<usize>, f64)> {
    fn walk(
        net: &WeightedLocationNetwork,
        t: usize,
        path: &mut Vec<usize>,
        len: f64,
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push((path.clone(), len));
            return;
        }
        for &(w, km) in net.neighbors(v) {
            if !path.contains(&w) {
                path.push(w);
                walk(net, t, path, len + km, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(net, t, &mut vec![s], 0.0, &mut out);
    out
}

/// All shortest `s`-`t` paths, found by listing every simple path.
pub fn shortest_simple_paths(net: &WeightedLocationNetwork, s: usize, t: usize) -> Vec<Vec<usize>> {
    let all = simple_paths(net, s, t);
    let best = all.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    all.into_iter()
        .filter(|p| p.1 <= best + TOL)
        .map(|p| p.0)
        .collect()
}

fn pair_scale(n: usize) -> f64 {
    if n > 2 {
        1.0 / ((n - 1) * (n - 2)) as f64
    } else {
        0.0
    }
}

/// Share of shortest paths through each node, over ordered pairs.
pub fn betweenness_oracle(net: &WeightedLocationNetwork) -> Vec<f64> {
    let n = net.node_count();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = shortest_simple_paths(net, s, t);
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / paths.len() as f64;
                }
            }
        }
    }
    bc.iter().map(|x| x * pair_scale(n)).collect()
}

pub fn closeness_oracle(net: &WeightedLocationNetwork) -> Vec<f64> {
    let n = net.node_count();
    floyd_warshall(net)
        .iter()
        .map(|row| {
            let total: f64 = row.iter().sum();
            if total > 0.0 {
                (n - 1) as f64 / total
            } else {
                0.0
            }
        })
        .collect()
}

/// A unit packet from `s` to `t` is split equally among the next hops that
/// stay on a shortest path, at every node it reaches.
#[allow(clippy::needless_range_loop)]
pub fn load_oracle(net: &WeightedLocationNetwork) -> Vec<f64> {
    let n = net.node_count();
    let d = floyd_warshall(net);
    let mut total = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let mut mass = vec![0.0; n];
            mass[s] = 1.0;
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| d[b][t].total_cmp(&d[a][t]));
            for &x in &order {
                if x == t || mass[x] == 0.0 {
                    continue;
                }
                let hops: Vec<usize> = net
                    .neighbors(x)
                    .iter()
                    .filter(|&&(y, km)| (km + d[y][t] - d[x][t]).abs() <= TOL)
                    .map(|&(y, _)| y)
                    .collect();
                let share = mass[x] / hops.len() as f64;
                for y in hops {
                    mass[y] += share;
                }
            }
            for v in 0..n {
                if v != s && v != t {
                    total[v] += mass[v];
                }
            }
        }
    }
    total.iter().map(|x| x * pair_scale(n)).collect()
}

pub fn degree_oracle(net: &WeightedLocationNetwork) -> Vec<f64> {
    let n = net.node_count();
    weight_matrix(net)
        .iter()
        .map(|row| row.iter().filter(|&&w| w > 0.0).count() as f64 / (n - 1) as f64)
        .collect()
}

/// Stationary vector of the explicit damped transition matrix, by plain
/// repeated multiplication.
pub fn link_rank_oracle(net: &WeightedLocationNetwork, damping: f64) -> Vec<f64> {
    let n = net.node_count();
    let w = weight_matrix(net);
    let strength: Vec<f64> = w.iter().map(|row| row.iter().sum()).collect();
    let g: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|u| damping * w[u][v] / strength[u] + (1.0 - damping) / n as f64)
                .collect()
        })
        .collect();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..5000 {
        x = g
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
    }
    let total: f64 = x.iter().sum();
    x.iter().map(|v| v / total).collect()
}

/// Unit eigenvector of the largest eigenvalue of the weighted adjacency
/// matrix, from a dense symmetric eigendecomposition, signed positive.
pub fn eigenvector_oracle(net: &WeightedLocationNetwork) -> Vec<f64> {
    let n = net.node_count();
    let w = weight_matrix(net);
    let m = DMatrix::from_fn(n, n, |i, j| w[i][j]);
    let eig = SymmetricEigen::new(m);
    let top = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(top);
    let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
    v.iter().map(|x| sign * x).collect()
}

/// Minimum unprotected value over every ordered assignment of the ranges to
/// distinct nodes, with coverage taken from Floyd-Warshall distances.
pub fn brute_force_min_unprotected(net: &WeightedLocationNetwork, inv: &BatteryInventory) -> f64 {
    fn rec(d: &[Vec<f64>], assets: &[f64], ranges: &[f64], used: &mut Vec<usize>, best: &mut f64) {
        if used.len() == ranges.len() {
            let u: f64 = (0..assets.len())
                .filter(|&x| {
                    !used
                        .iter()
                        .zip(ranges)
                        .any(|(&b, &r)| d[b][x] <= r + TOL * r.max(1.0))
                })
                .map(|x| assets[x])
                .sum();
            *best = best.min(u);
            return;
        }
        for v in 0..assets.len() {
            if !used.contains(&v) {
                used.push(v);
                rec(d, assets, ranges, used, best);
                used.pop();
            }
        }
    }
    let d = floyd_warshall(net);
    let k = inv.len().min(net.node_count());
    let mut best = f64::INFINITY;
    rec(
        &d,
        net.assets(),
        &inv.ranges_km()[..k],
        &mut Vec::new(),
        &mut best,
    );
    best
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Compares every centrality measure on one graph with its oracle; returns a
/// description of each measure outside tolerance.
pub fn centrality_mismatches(net: &WeightedLocationNetwork) -> Vec<String> {
    use iads::centrality::*;
    use iads::graph::all_pairs_shortest_paths;

    let dm = all_pairs_shortest_paths(net).unwrap();
    let lr = link_rank(net, DEFAULT_DAMPING, LINK_RANK_TOL, LINK_RANK_MAX_ITER).unwrap();
    let ev = eigenvector(net, EIGENVECTOR_TOL, EIGENVECTOR_MAX_ITER).unwrap();
    let checks = [
        (
            "betweenness",
            betweenness(net, &dm).into_inner(),
            betweenness_oracle(net),
            1e-9,
        ),
        (
            "closeness",
            closeness(&dm).into_inner(),
            closeness_oracle(net),
            1e-9,
        ),
        ("load", load(net, &dm).into_inner(), load_oracle(net), 1e-9),
        ("degree", degree(net).into_inner(), degree_oracle(net), 1e-9),
        (
            "link_rank",
            lr.into_inner(),
            link_rank_oracle(net, DEFAULT_DAMPING),
            1e-8,
        ),
        (
            "eigenvector",
            ev.into_inner(),
            eigenvector_oracle(net),
            1e-6,
        ),
    ];
    checks
        .into_iter()
        .filter_map(|(name, got, want, tol)| {
            let diff = max_abs_diff(&got, &want);
            (diff > tol).then(|| format!("{name}: max diff {diff:e} > {tol:e}"))
        })
        .collect()
}

/// Soundness of all seven strategies on one fixture against the brute-force
/// optimum; returns every violation found.
pub fn soundness_violations(net: &WeightedLocationNetwork, inv: &BatteryInventory) -> Vec<String> {
    use iads::graph::all_pairs_shortest_paths;
    use iads::strategies::{exhaustive_optimal, run_all, PlacementContext};

    let dm = all_pairs_shortest_paths(net).unwrap();
    let best = brute_force_min_unprotected(net, inv);
    let mut bad = Vec::new();
    let oracle = exhaustive_optimal(net, &dm, inv).unwrap();
    if (oracle.unprotected_value() - best).abs() > TOL {
        bad.push(format!(
            "exhaustive_optimal U {} vs brute force {best}",
            oracle.unprotected_value()
        ));
    }
    let ctx = PlacementContext::new(net, &dm, inv).unwrap();
    let first = run_all(&ctx).unwrap();
    let second = run_all(&ctx).unwrap();
    if first != second {
        bad.push("run_all differs between runs".into());
    }
    for r in &first {
        let id = r.strategy_id().unwrap().get();
        if r.unprotected_value() < best - TOL {
            bad.push(format!(
                "S{id} U {} below optimum {best}",
                r.unprotected_value()
            ));
        }
        if let Err(e) = r.placement.validate(inv, net.node_count()) {
            bad.push(format!("S{id} invalid placement: {e}"));
        }
        if r.placement.len() != inv.len().min(net.node_count()) {
            bad.push(format!("S{id} placed {} batteries", r.placement.len()));
        }
        let mut prev = net.total_asset();
        for step in &r.trace {
            if step.unprotected_after > prev + TOL {
                bad.push(format!("S{id} U rose at battery {}", step.battery));
            }
            prev = step.unprotected_after;
        }
        if (prev - r.unprotected_value()).abs() > TOL {
            bad.push(format!(
                "S{id} trace ends at {prev}, report says {}",
                r.unprotected_value()
            ));
        }
    }
    bad
}
