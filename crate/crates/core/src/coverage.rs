//! Battery inventories, placements and the damage accounting for a placement.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{dist_tol, DistanceMatrix, NodeId, WeightedLocationNetwork};

/// Interceptor ranges (km, largest first) and the single-shot intercept
/// probability shared by every battery.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatteryInventory {
    ranges_km: Vec<f64>,
    intercept_prob: f64,
}

impl BatteryInventory {
    pub fn new(ranges_km: Vec<f64>, intercept_prob: f64) -> Result<Self> {
        if ranges_km.is_empty() {
            return Err(Error::Config("battery inventory is empty".into()));
        }
        if ranges_km.iter().any(|r| !r.is_finite() || *r <= 0.0) {
            return Err(Error::Config(format!(
                "ranges must be positive: {ranges_km:?}"
            )));
        }
        if ranges_km.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!(
                "ranges must be listed largest first: {ranges_km:?}"
            )));
        }
        if !(intercept_prob > 0.0 && intercept_prob <= 1.0) {
            return Err(Error::Config(format!(
                "intercept probability {intercept_prob} outside (0, 1]"
            )));
        }
        Ok(Self {
            ranges_km,
            intercept_prob,
        })
    }

    /// Parses a comma-separated range list such as `"80,70"`.
    pub fn parse(ranges: &str, intercept_prob: f64) -> Result<Self> {
        let parsed = ranges
            .split(',')
            .map(|s| s.trim().trim_end_matches("km").trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Config(format!("bad range list {ranges:?}: {e}")))?;
        Self::new(parsed, intercept_prob)
    }

    pub fn ranges_km(&self) -> &[f64] {
        &self.ranges_km
    }

    pub fn intercept_prob(&self) -> f64 {
        self.intercept_prob
    }

    pub fn len(&self) -> usize {
        self.ranges_km.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges_km.is_empty()
    }

    pub fn sum_ranges_km(&self) -> f64 {
        self.ranges_km.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub node: NodeId,
    pub range_km: f64,
}

/// Batteries in placement order; the i-th battery carries the i-th largest range.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Placement {
    assignments: Vec<Assignment>,
}

impl Placement {
    pub fn new(assignments: Vec<Assignment>) -> Self {
        Self { assignments }
    }

    pub fn from_nodes(nodes: &[NodeId], inventory: &BatteryInventory) -> Self {
        Self::new(
            nodes
                .iter()
                .zip(inventory.ranges_km())
                .map(|(&node, &range_km)| Assignment { node, range_km })
                .collect(),
        )
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        self.assignments.iter().map(|a| a.node).collect()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.assignments.iter().any(|a| a.node == node)
    }

    pub fn push(&mut self, node: NodeId, range_km: f64) {
        self.assignments.push(Assignment { node, range_km });
    }

    /// Distinct nodes inside the network, ranges a prefix of the inventory.
    pub fn validate(&self, inventory: &BatteryInventory, node_count: usize) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, a) in self.assignments.iter().enumerate() {
            if a.node >= node_count {
                return Err(Error::Config(format!(
                    "battery {i} on unknown node {}",
                    a.node
                )));
            }
            if !seen.insert(a.node) {
                return Err(Error::Config(format!(
                    "node {} hosts two batteries",
                    a.node
                )));
            }
            match inventory.ranges_km().get(i) {
                Some(&r) if r == a.range_km => {}
                _ => {
                    return Err(Error::Config(format!(
                        "battery {i} range {} does not match inventory",
                        a.range_km
                    )))
                }
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn within_range(dm: &DistanceMatrix, battery: NodeId, range_km: f64, u: NodeId) -> bool {
    dm.get(battery, u) <= range_km + dist_tol(range_km)
}

/// Marks every node within `range_km` of `battery` along shortest paths.
pub fn cover_with(dm: &DistanceMatrix, mask: &mut [bool], battery: NodeId, range_km: f64) {
    for (u, covered) in mask.iter_mut().enumerate() {
        if !*covered && within_range(dm, battery, range_km, u) {
            *covered = true;
        }
    }
}

pub fn coverage_mask(dm: &DistanceMatrix, placement: &Placement) -> Vec<bool> {
    let mut mask = vec![false; dm.node_count()];
    for a in placement.assignments() {
        cover_with(dm, &mut mask, a.node, a.range_km);
    }
    mask
}

/// Nodes within range (inclusive) of at least one battery.
pub fn covered_nodes(dm: &DistanceMatrix, placement: &Placement) -> BTreeSet<NodeId> {
    coverage_mask(dm, placement)
        .into_iter()
        .enumerate()
        .filter_map(|(u, c)| c.then_some(u))
        .collect()
}

/// Asset value of the uncovered nodes, summed in node order. Folds from
/// `+0.0`; float `sum` of nothing is `-0.0`.
pub fn unprotected_value(net: &WeightedLocationNetwork, mask: &[bool]) -> f64 {
    mask.iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(u, _)| net.asset(u))
        .fold(0.0, |acc, a| acc + a)
}

/// Unprotected value after adding one battery to an existing coverage mask.
pub fn unprotected_with(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    mask: &[bool],
    battery: NodeId,
    range_km: f64,
) -> f64 {
    mask.iter()
        .enumerate()
        .filter(|&(u, &c)| !c && !within_range(dm, battery, range_km, u))
        .map(|(u, _)| net.asset(u))
        .fold(0.0, |acc, a| acc + a)
}

/// Expected damaged share of total asset value, in percent, when every node
/// is attacked once: uncovered assets are lost outright and covered assets
/// leak `1 - p`.
pub fn worst_case_pct(unprotected: f64, total: f64, intercept_prob: f64) -> f64 {
    100.0 * (unprotected + (1.0 - intercept_prob) * (total - unprotected)) / total
}

/// Rounds to `digits` significant digits.
pub fn round_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits as i32 - 1 - magnitude);
    (x * factor).round() / factor
}

fn six_significant<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_significant(*x, 6))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub placement: Placement,
    pub covered: Vec<NodeId>,
    pub unprotected_value: f64,
    pub total_value: f64,
    #[serde(serialize_with = "six_significant")]
    pub worst_case_pct: f64,
}

impl CoverageReport {
    pub fn covered_value(&self) -> f64 {
        self.total_value - self.unprotected_value
    }
}

pub fn evaluate(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    placement: &Placement,
    intercept_prob: f64,
) -> Result<CoverageReport> {
    if !(intercept_prob > 0.0 && intercept_prob <= 1.0) {
        return Err(Error::Config(format!(
            "intercept probability {intercept_prob} outside (0, 1]"
        )));
    }
    let total = net.total_asset();
    if total <= 0.0 {
        return Err(Error::NoAssets);
    }
    let mask = coverage_mask(dm, placement);
    let unprotected = unprotected_value(net, &mask);
    Ok(CoverageReport {
        placement: placement.clone(),
        covered: mask
            .iter()
            .enumerate()
            .filter_map(|(u, &c)| c.then_some(u))
            .collect(),
        unprotected_value: unprotected,
        total_value: total,
        worst_case_pct: worst_case_pct(unprotected, total, intercept_prob),
    })
}
