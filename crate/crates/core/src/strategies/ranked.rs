use super::{
    Builder, CandidateSource, PlacementContext, Solver, StepRule, StrategyId, StrategyResult,
};
use crate::centrality::Measure;
use crate::coverage::within_range;

/// Walks one rank sequence. The first battery takes the top node; every later
/// battery takes the next node lying outside the first battery's range. The
/// filter is relative to the first battery only. Once the sequence runs dry
/// the rest go to the highest-ranked free nodes.
fn ranked_beyond_first(
    ctx: &PlacementContext<'_>,
    measure: Measure,
    id: StrategyId,
) -> crate::Result<StrategyResult> {
    let seq = ctx.sequence(measure);
    let mut b = Builder::new(ctx);
    let first = seq[0];
    let cand = b.candidate(
        first,
        CandidateSource::Sequence {
            measure,
            position: 0,
        },
    );
    b.place(first, StepRule::RankedHead, vec![cand], None);
    let first_range = ctx.inventory.ranges_km()[0];

    let mut cursor = 1;
    while b.remaining() > 0 {
        let next = (cursor..seq.len()).find(|&p| {
            let v = seq[p];
            !b.is_used(v) && !within_range(ctx.dm, first, first_range, v)
        });
        match next {
            Some(p) => {
                cursor = p + 1;
                let cand = b.candidate(
                    seq[p],
                    CandidateSource::Sequence {
                        measure,
                        position: p,
                    },
                );
                b.place(seq[p], StepRule::DistanceFilter, vec![cand], None);
            }
            None => {
                cursor = seq.len();
                let node = seq
                    .iter()
                    .copied()
                    .find(|&v| !b.is_used(v))
                    .expect("battery count never exceeds node count");
                let position = seq.iter().position(|&v| v == node).unwrap_or(0);
                let cand = b.candidate(node, CandidateSource::Sequence { measure, position });
                b.place(
                    node,
                    StepRule::Fallback,
                    vec![cand],
                    Some("no ranked node outside the first battery's range".into()),
                );
            }
        }
    }
    b.finish(Solver::Strategy(id))
}

/// Betweenness ranking with the first-battery distance filter.
pub fn strategy_1(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    ranked_beyond_first(ctx, Measure::Betweenness, StrategyId(1))
}

/// Closeness ranking with the first-battery distance filter.
pub fn strategy_2(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    ranked_beyond_first(ctx, Measure::Closeness, StrategyId(2))
}
