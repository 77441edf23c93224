//! Strategies that draw one candidate from each of the six rank sequences per
//! battery.

use super::{
    first_minimum, Builder, Candidate, CandidateSource, PlacementContext, Solver, StepRule,
    StrategyId, StrategyResult,
};
use crate::centrality::Measure;
use crate::coverage::within_range;
use crate::graph::NodeId;

/// Position `position` of every sequence that is long enough.
fn candidates_at(
    b: &Builder<'_, '_>,
    sequences: &[Vec<NodeId>],
    position: usize,
) -> Vec<Candidate> {
    Measure::ALL
        .iter()
        .zip(sequences)
        .filter_map(|(&measure, seq)| {
            seq.get(position)
                .map(|&v| b.candidate(v, CandidateSource::Sequence { measure, position }))
        })
        .collect()
}

/// Sequences restricted to nodes outside the first battery's range.
fn beyond_first_battery(b: &Builder<'_, '_>) -> Vec<Vec<NodeId>> {
    let first = b.placement.assignments()[0];
    b.ctx
        .sequences
        .iter()
        .map(|seq| {
            seq.iter()
                .copied()
                .filter(|&v| !within_range(b.ctx.dm, first.node, first.range_km, v))
                .collect()
        })
        .collect()
}

/// Battery `i` looks at position `i` of the six sequences and takes the
/// candidate with the lowest unprotected value. When that candidate already
/// hosts a battery the position advances and the battery retries. If any
/// battery needed a retry, the last `M` batteries (`M` the number of batteries
/// that hit a duplicate) are re-placed by searching the uncovered nodes left
/// by the others.
pub fn strategy_3(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    let n = ctx.net.node_count();
    let mut b = Builder::new(ctx);
    b.place_best_head();

    let mut position = 0;
    let mut duplicated = 0;
    while b.remaining() > 0 {
        position += 1;
        let mut considered = Vec::new();
        let mut retried = false;
        let mut chosen = None;
        while position < n {
            let cands = candidates_at(&b, &ctx.sequences, position);
            let best = first_minimum(&cands).map(|i| cands[i].node);
            considered.extend(cands);
            match best {
                Some(v) if b.is_used(v) => {
                    retried = true;
                    position += 1;
                }
                other => {
                    chosen = other;
                    break;
                }
            }
        }
        if retried || chosen.is_none() {
            duplicated += 1;
        }
        match chosen {
            Some(v) => {
                let note =
                    retried.then(|| "duplicate of an occupied node; advanced position".into());
                b.place(v, StepRule::MinUnprotected, considered, note);
            }
            // Sequences exhausted: every remaining battery is stuck.
            None => {
                duplicated += b.remaining() - 1;
                break;
            }
        }
    }

    if duplicated > 0 {
        let keep = ctx.battery_count() - duplicated;
        b.truncate(keep);
        b.place_remaining_on_uncovered(&format!("{duplicated} batteries hit duplicate candidates"));
    }
    b.finish(Solver::Strategy(StrategyId(3)))
}

/// First battery as in strategy 3. Later batteries read successive positions
/// of the sequences filtered to nodes beyond the first battery's range; if the
/// lowest candidate is occupied the next-lowest free one is taken.
pub fn strategy_4(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    let mut b = Builder::new(ctx);
    b.place_best_head();
    let filtered = beyond_first_battery(&b);
    let longest = filtered.iter().map(Vec::len).max().unwrap_or(0);

    let mut position = 0;
    while b.remaining() > 0 {
        let mut considered = Vec::new();
        let mut chosen = None;
        while position < longest {
            let cands = candidates_at(&b, &filtered, position);
            position += 1;
            let lowest = first_minimum(&cands);
            let pick = match lowest {
                Some(i) if !b.is_used(cands[i].node) => {
                    Some((cands[i].node, StepRule::MinUnprotected))
                }
                Some(_) => {
                    let free: Vec<Candidate> = cands
                        .iter()
                        .filter(|c| !b.is_used(c.node))
                        .cloned()
                        .collect();
                    first_minimum(&free).map(|i| (free[i].node, StepRule::SecondLowest))
                }
                None => None,
            };
            considered.extend(cands);
            if pick.is_some() {
                chosen = pick;
                break;
            }
        }
        match chosen {
            Some((v, rule)) => b.place(v, rule, considered, None),
            None => {
                b.place_remaining_on_uncovered("filtered sequences exhausted");
                break;
            }
        }
    }
    b.finish(Solver::Strategy(StrategyId(4)))
}

/// First battery as in strategy 3. Each later battery considers, in every
/// filtered sequence, the next node no battery covers yet, and scores it by
/// the value left uncovered given all batteries placed so far.
pub fn strategy_5(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    let mut b = Builder::new(ctx);
    b.place_best_head();
    let filtered = beyond_first_battery(&b);
    let mut cursors = [0usize; 6];

    while b.remaining() > 0 {
        let mut cands = Vec::new();
        for (k, seq) in filtered.iter().enumerate() {
            while cursors[k] < seq.len() && b.mask[seq[cursors[k]]] {
                cursors[k] += 1;
            }
            if let Some(&v) = seq.get(cursors[k]) {
                cands.push(b.candidate(
                    v,
                    CandidateSource::Sequence {
                        measure: Measure::ALL[k],
                        position: cursors[k],
                    },
                ));
            }
        }
        match first_minimum(&cands) {
            Some(i) => {
                let v = cands[i].node;
                b.place(v, StepRule::MinUnprotected, cands, None);
            }
            None => {
                b.place_remaining_on_uncovered("filtered sequences exhausted");
                break;
            }
        }
    }
    b.finish(Solver::Strategy(StrategyId(5)))
}
