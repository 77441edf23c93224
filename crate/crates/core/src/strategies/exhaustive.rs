//! Enumeration-based placement: the reference solver and the uncovered-node
//! search used when a strategy runs out of candidates.

use super::{
    first_minimum, Builder, Candidate, CandidateSource, Solver, StepRule, StrategyResult,
    TraceStep, VALUE_EPS,
};
use crate::coverage::{
    cover_with, evaluate, unprotected_value, within_range, BatteryInventory, Placement,
};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, NodeId, WeightedLocationNetwork};

/// Largest number of ordered assignments the reference solver will enumerate.
pub const ORACLE_LIMIT: u128 = 10_000_000;

/// Largest number of subsets the uncovered-node search will enumerate before
/// switching to one battery at a time.
pub const EXHAUSTIVE_STEP_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct NodeBits(Vec<u64>);

impl NodeBits {
    fn empty(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    fn from_mask(mask: &[bool]) -> Self {
        let mut bits = Self::empty(mask.len());
        for (u, &c) in mask.iter().enumerate() {
            if c {
                bits.0[u / 64] |= 1 << (u % 64);
            }
        }
        bits
    }

    fn contains(&self, u: NodeId) -> bool {
        self.0[u / 64] & (1 << (u % 64)) != 0
    }

    fn union(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }
}

/// `reach[v]` = nodes within `range_km` of `v`.
fn reach_sets(dm: &DistanceMatrix, range_km: f64) -> Vec<NodeBits> {
    let n = dm.node_count();
    (0..n)
        .map(|v| {
            let mut bits = NodeBits::empty(n);
            for u in 0..n {
                if within_range(dm, v, range_km, u) {
                    bits.0[u / 64] |= 1 << (u % 64);
                }
            }
            bits
        })
        .collect()
}

fn uncovered_value(assets: &[f64], covered: &NodeBits) -> f64 {
    assets
        .iter()
        .enumerate()
        .filter(|&(u, _)| !covered.contains(u))
        .map(|(_, &a)| a)
        .fold(0.0, |acc, a| acc + a)
}

/// `n! / (n - k)!`, saturating once it passes `cap`.
fn ordered_count(n: usize, k: usize, cap: u128) -> u128 {
    let mut count: u128 = 1;
    for i in 0..k {
        count = count.saturating_mul((n - i) as u128);
        if count > cap {
            return count;
        }
    }
    count
}

/// `C(n, k)`, saturating once it passes `cap`.
fn subset_count(n: usize, k: usize, cap: u128) -> u128 {
    let k = k.min(n - k.min(n));
    let mut count: u128 = 1;
    for i in 0..k {
        count = count * (n - i) as u128 / (i + 1) as u128;
        if count > cap {
            return count;
        }
    }
    count
}

struct Search<'s> {
    assets: &'s [f64],
    reach: &'s [Vec<NodeBits>],
    best: Option<(f64, Vec<NodeId>)>,
    visited: u128,
}

impl Search<'_> {
    fn offer(&mut self, covered: &NodeBits, tuple: &[NodeId]) {
        self.visited += 1;
        let u = uncovered_value(self.assets, covered);
        if self.best.as_ref().is_none_or(|(b, _)| u < b - VALUE_EPS) {
            self.best = Some((u, tuple.to_vec()));
        }
    }

    /// Ordered tuples of distinct nodes, lexicographic.
    fn ordered(&mut self, nodes: &[NodeId], covered: &NodeBits, tuple: &mut Vec<NodeId>) {
        let depth = tuple.len();
        if depth == self.reach.len() {
            self.offer(covered, tuple);
            return;
        }
        for &v in nodes {
            if tuple.contains(&v) {
                continue;
            }
            let next = covered.union(&self.reach[depth][v]);
            tuple.push(v);
            self.ordered(nodes, &next, tuple);
            tuple.pop();
        }
    }

    /// Increasing subsets of `nodes`; slot `i` of the subset gets range `i`.
    fn subsets(
        &mut self,
        nodes: &[NodeId],
        start: usize,
        covered: &NodeBits,
        tuple: &mut Vec<NodeId>,
    ) {
        let depth = tuple.len();
        if depth == self.reach.len() {
            self.offer(covered, tuple);
            return;
        }
        let needed = self.reach.len() - depth;
        for i in start..=nodes.len() - needed {
            let v = nodes[i];
            let next = covered.union(&self.reach[depth][v]);
            tuple.push(v);
            self.subsets(nodes, i + 1, &next, tuple);
            tuple.pop();
        }
    }
}

/// Minimum-unprotected placement over every ordered assignment of the
/// inventory's ranges to distinct nodes; ties go to the lexicographically
/// smallest node tuple.
pub fn exhaustive_optimal(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    inventory: &BatteryInventory,
) -> Result<StrategyResult> {
    let n = net.node_count();
    let batteries = inventory.len().min(n);
    let count = ordered_count(n, batteries, ORACLE_LIMIT);
    if count > ORACLE_LIMIT {
        return Err(Error::OracleBoundExceeded(count));
    }
    let ranges = &inventory.ranges_km()[..batteries];
    let reach: Vec<Vec<NodeBits>> = ranges.iter().map(|&r| reach_sets(dm, r)).collect();
    let mut search = Search {
        assets: net.assets(),
        reach: &reach,
        best: None,
        visited: 0,
    };
    let nodes: Vec<NodeId> = (0..n).collect();
    search.ordered(&nodes, &NodeBits::empty(n), &mut Vec::new());
    let (_, tuple) = search.best.expect("at least one assignment");

    let placement = Placement::from_nodes(&tuple, inventory);
    let mut mask = vec![false; n];
    let mut trace = Vec::with_capacity(tuple.len());
    for (i, a) in placement.assignments().iter().enumerate() {
        cover_with(dm, &mut mask, a.node, a.range_km);
        trace.push(TraceStep {
            battery: i,
            range_km: a.range_km,
            rule: StepRule::Oracle,
            candidates: Vec::new(),
            chosen: a.node,
            unprotected_after: unprotected_value(net, &mask),
            note: (i == 0).then(|| format!("{} ordered assignments searched", search.visited)),
        });
    }
    let report = evaluate(net, dm, &placement, inventory.intercept_prob())?;
    Ok(StrategyResult {
        solver: Solver::Exhaustive,
        placement,
        report,
        trace,
    })
}

fn uncovered_nodes(b: &Builder<'_, '_>) -> Vec<NodeId> {
    b.mask
        .iter()
        .enumerate()
        .filter_map(|(u, &c)| (!c).then_some(u))
        .collect()
}

/// Places the next `m` batteries on currently uncovered nodes, minimising the
/// total unprotected value. Subsets are listed in increasing node order and
/// the larger ranges go to the earlier nodes.
pub(super) fn place_on_uncovered(b: &mut Builder<'_, '_>, m: usize, reason: &str) {
    let uncovered = uncovered_nodes(b);
    if uncovered.is_empty() {
        for _ in 0..m {
            b.place_fallback(&format!("{reason}; nothing left uncovered"));
        }
        return;
    }
    if uncovered.len() <= m {
        for &v in &uncovered {
            let cand = b.candidate(v, CandidateSource::Uncovered);
            b.place(
                v,
                StepRule::ExhaustiveUncovered,
                vec![cand],
                Some(format!("{reason}; one battery per uncovered node")),
            );
        }
        for _ in uncovered.len()..m {
            b.place_fallback(&format!("{reason}; nothing left uncovered"));
        }
        return;
    }

    let count = subset_count(uncovered.len(), m, EXHAUSTIVE_STEP_LIMIT);
    if count > EXHAUSTIVE_STEP_LIMIT {
        for _ in 0..m {
            let cands: Vec<Candidate> = uncovered_nodes(b)
                .into_iter()
                .map(|v| b.candidate(v, CandidateSource::Uncovered))
                .collect();
            match first_minimum(&cands) {
                Some(i) => {
                    let v = cands[i].node;
                    b.place(
                        v,
                        StepRule::GreedyUncovered,
                        cands,
                        Some(format!("{reason}; {count} subsets exceed the search limit")),
                    );
                }
                None => b.place_fallback(&format!("{reason}; nothing left uncovered")),
            }
        }
        return;
    }

    let ranges: Vec<f64> = b.ctx.inventory.ranges_km()[b.placed()..b.placed() + m].to_vec();
    let reach: Vec<Vec<NodeBits>> = ranges.iter().map(|&r| reach_sets(b.ctx.dm, r)).collect();
    let mut search = Search {
        assets: b.ctx.net.assets(),
        reach: &reach,
        best: None,
        visited: 0,
    };
    search.subsets(
        &uncovered,
        0,
        &NodeBits::from_mask(&b.mask),
        &mut Vec::new(),
    );
    let (_, subset) = search.best.expect("at least one subset");
    let note = format!(
        "{reason}; searched {} subsets of {} uncovered nodes",
        search.visited,
        uncovered.len()
    );
    for v in subset {
        let cand = b.candidate(v, CandidateSource::Uncovered);
        b.place(
            v,
            StepRule::ExhaustiveUncovered,
            vec![cand],
            Some(note.clone()),
        );
    }
}
