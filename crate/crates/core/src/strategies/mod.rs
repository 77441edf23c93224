//! The seven placement strategies and the exhaustive reference solver.
//!
//! Every strategy places batteries one at a time in inventory order (largest
//! range first) and records each decision in a trace. Candidate comparisons
//! use the unprotected value of the tentative placement; ties go to the
//! earlier candidate (sequence order, pool order, or lower node id).

mod exhaustive;
mod paths;
mod ranked;
mod sequences;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityScores, Measure};
use crate::coverage::{
    cover_with, evaluate, unprotected_value, unprotected_with, BatteryInventory, CoverageReport,
    Placement,
};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, NodeId, WeightedLocationNetwork};

pub use exhaustive::{exhaustive_optimal, EXHAUSTIVE_STEP_LIMIT, ORACLE_LIMIT};

/// Two unprotected values closer than this are treated as equal.
pub const VALUE_EPS: f64 = 1e-12;

/// Identifier of one of the seven strategies, `1..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct StrategyId(u8);

impl StrategyId {
    pub const ALL: [StrategyId; 7] = [
        StrategyId(1),
        StrategyId(2),
        StrategyId(3),
        StrategyId(4),
        StrategyId(5),
        StrategyId(6),
        StrategyId(7),
    ];

    pub fn new(id: u8) -> Result<Self> {
        if (1..=7).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::Config(format!("strategy id {id} outside 1..=7")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn describe(self) -> &'static str {
        match self.0 {
            1 => "betweenness ranking beyond the first battery's range",
            2 => "closeness ranking beyond the first battery's range",
            3 => "best of six sequence positions, exhaustive tail on duplication",
            4 => "best of six filtered positions, second-best on duplication",
            5 => "marginal coverage over six filtered sequences",
            6 => "path pool around the first battery",
            7 => "path pool ranked by betweenness",
            _ => unreachable!(),
        }
    }
}

impl TryFrom<u8> for StrategyId {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        Self::new(id)
    }
}

impl From<StrategyId> for u8 {
    fn from(id: StrategyId) -> u8 {
        id.0
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy_{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Strategy(StrategyId),
    Exhaustive,
}

/// Where a candidate node came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    Sequence { measure: Measure, position: usize },
    Pool { position: usize },
    Uncovered,
    Ranking,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub node: NodeId,
    pub source: CandidateSource,
    pub unprotected: f64,
}

/// Which rule decided a battery's node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// Top of a single rank sequence.
    RankedHead,
    /// Next ranked node outside the first battery's range.
    DistanceFilter,
    /// Best of the candidates offered at this step.
    MinUnprotected,
    /// Lowest candidate was already occupied; took the best free one.
    SecondLowest,
    /// Search over the currently uncovered nodes.
    ExhaustiveUncovered,
    /// Uncovered-node search too large; one battery at a time instead.
    GreedyUncovered,
    /// Nothing left to cover or offer; highest-ranked free node.
    Fallback,
    /// Reference solver.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub battery: usize,
    pub range_km: f64,
    pub rule: StepRule,
    pub candidates: Vec<Candidate>,
    pub chosen: NodeId,
    pub unprotected_after: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyResult {
    pub solver: Solver,
    pub placement: Placement,
    pub report: CoverageReport,
    pub trace: Vec<TraceStep>,
}

impl StrategyResult {
    pub fn unprotected_value(&self) -> f64 {
        self.report.unprotected_value
    }

    pub fn strategy_id(&self) -> Option<StrategyId> {
        match self.solver {
            Solver::Strategy(id) => Some(id),
            Solver::Exhaustive => None,
        }
    }
}

/// Inputs shared by every strategy: the network, its distance matrix, the
/// inventory and the six rank sequences.
#[derive(Clone, Debug)]
pub struct PlacementContext<'a> {
    pub net: &'a WeightedLocationNetwork,
    pub dm: &'a DistanceMatrix,
    pub inventory: &'a BatteryInventory,
    pub scores: CentralityScores,
    pub sequences: [Vec<NodeId>; 6],
}

impl<'a> PlacementContext<'a> {
    pub fn new(
        net: &'a WeightedLocationNetwork,
        dm: &'a DistanceMatrix,
        inventory: &'a BatteryInventory,
    ) -> Result<Self> {
        let scores = CentralityScores::compute(net, dm)?;
        Ok(Self::with_scores(net, dm, inventory, scores))
    }

    pub fn with_scores(
        net: &'a WeightedLocationNetwork,
        dm: &'a DistanceMatrix,
        inventory: &'a BatteryInventory,
        scores: CentralityScores,
    ) -> Self {
        let sequences = scores.sequences();
        Self {
            net,
            dm,
            inventory,
            scores,
            sequences,
        }
    }

    /// Batteries that will actually be placed: one per node at most.
    pub fn battery_count(&self) -> usize {
        self.inventory.len().min(self.net.node_count())
    }

    fn sequence(&self, measure: Measure) -> &[NodeId] {
        let i = Measure::ALL.iter().position(|&m| m == measure).unwrap_or(0);
        &self.sequences[i]
    }
}

pub fn run(ctx: &PlacementContext<'_>, id: StrategyId) -> Result<StrategyResult> {
    match id.get() {
        1 => ranked::strategy_1(ctx),
        2 => ranked::strategy_2(ctx),
        3 => sequences::strategy_3(ctx),
        4 => sequences::strategy_4(ctx),
        5 => sequences::strategy_5(ctx),
        6 => paths::strategy_6(ctx),
        7 => paths::strategy_7(ctx),
        _ => unreachable!(),
    }
}

pub use paths::{path_pool, strategy_6, strategy_7};
pub use ranked::{strategy_1, strategy_2};
pub use sequences::{strategy_3, strategy_4, strategy_5};

/// Strategies 1 to 7 on the same inputs, in order.
pub fn run_all(ctx: &PlacementContext<'_>) -> Result<Vec<StrategyResult>> {
    StrategyId::ALL.iter().map(|&id| run(ctx, id)).collect()
}

/// Incremental placement state shared by the strategies.
struct Builder<'c, 'a> {
    ctx: &'c PlacementContext<'a>,
    mask: Vec<bool>,
    placement: Placement,
    trace: Vec<TraceStep>,
}

impl<'c, 'a> Builder<'c, 'a> {
    fn new(ctx: &'c PlacementContext<'a>) -> Self {
        Self {
            ctx,
            mask: vec![false; ctx.net.node_count()],
            placement: Placement::default(),
            trace: Vec::new(),
        }
    }

    fn placed(&self) -> usize {
        self.placement.len()
    }

    fn remaining(&self) -> usize {
        self.ctx.battery_count() - self.placed()
    }

    fn next_range(&self) -> f64 {
        self.ctx.inventory.ranges_km()[self.placed()]
    }

    fn is_used(&self, node: NodeId) -> bool {
        self.placement.contains(node)
    }

    /// Unprotected value if the next battery went to `node`.
    fn value_with(&self, node: NodeId) -> f64 {
        unprotected_with(
            self.ctx.net,
            self.ctx.dm,
            &self.mask,
            node,
            self.next_range(),
        )
    }

    fn candidate(&self, node: NodeId, source: CandidateSource) -> Candidate {
        Candidate {
            node,
            source,
            unprotected: self.value_with(node),
        }
    }

    fn place(
        &mut self,
        node: NodeId,
        rule: StepRule,
        candidates: Vec<Candidate>,
        note: Option<String>,
    ) {
        debug_assert!(!self.is_used(node));
        let range_km = self.next_range();
        cover_with(self.ctx.dm, &mut self.mask, node, range_km);
        self.placement.push(node, range_km);
        self.trace.push(TraceStep {
            battery: self.trace.len(),
            range_km,
            rule,
            candidates,
            chosen: node,
            unprotected_after: unprotected_value(self.ctx.net, &self.mask),
            note,
        });
    }

    /// Drops every battery after the first `keep`.
    fn truncate(&mut self, keep: usize) {
        let nodes = self.placement.nodes();
        self.placement = Placement::default();
        self.mask.iter_mut().for_each(|c| *c = false);
        for &node in nodes.iter().take(keep) {
            let r = self.next_range();
            cover_with(self.ctx.dm, &mut self.mask, node, r);
            self.placement.push(node, r);
        }
        self.trace.truncate(keep);
    }

    /// First battery for strategies 3 to 7: the best head of the six sequences.
    fn place_best_head(&mut self) {
        let candidates: Vec<Candidate> = Measure::ALL
            .iter()
            .map(|&m| {
                let node = self.ctx.sequence(m)[0];
                self.candidate(
                    node,
                    CandidateSource::Sequence {
                        measure: m,
                        position: 0,
                    },
                )
            })
            .collect();
        let best = first_minimum(&candidates).expect("six candidates");
        let node = candidates[best].node;
        self.place(node, StepRule::MinUnprotected, candidates, None);
    }

    /// Highest-ranked free node in the betweenness sequence.
    fn place_fallback(&mut self, note: &str) {
        let node = self
            .ctx
            .sequence(Measure::Betweenness)
            .iter()
            .copied()
            .find(|&v| !self.is_used(v))
            .expect("battery count never exceeds node count");
        let cand = self.candidate(node, CandidateSource::Ranking);
        self.place(node, StepRule::Fallback, vec![cand], Some(note.to_string()));
    }

    /// Places the remaining batteries on uncovered nodes, searching all
    /// subsets when that is affordable.
    fn place_remaining_on_uncovered(&mut self, reason: &str) {
        let m = self.remaining();
        if m > 0 {
            exhaustive::place_on_uncovered(self, m, reason);
        }
    }

    fn finish(self, solver: Solver) -> Result<StrategyResult> {
        let report = evaluate(
            self.ctx.net,
            self.ctx.dm,
            &self.placement,
            self.ctx.inventory.intercept_prob(),
        )?;
        Ok(StrategyResult {
            solver,
            placement: self.placement,
            report,
            trace: self.trace,
        })
    }
}

/// Index of the first candidate with the smallest unprotected value.
fn first_minimum(candidates: &[Candidate]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        if best.is_none_or(|b| c.unprotected < candidates[b].unprotected - VALUE_EPS) {
            best = Some(i);
        }
    }
    best
}

#[cfg(test)]
mod tests;
