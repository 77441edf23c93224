//! Strategies drawing later batteries from nodes on paths through the first
//! battery.

use super::{
    first_minimum, Builder, CandidateSource, PlacementContext, Solver, StepRule, StrategyId,
    StrategyResult,
};
use crate::centrality::rank_sequence;
use crate::centrality::ScoreVector;
use crate::graph::{diameter, farthest_node_path, shortest_path, NodeId};

/// Nodes on: the path from `first` to its farthest node, the path back from
/// that node, and the paths from both diameter endpoints to `first`. First
/// occurrence order, `first` itself removed.
pub fn path_pool(ctx: &PlacementContext<'_>, first: NodeId) -> Vec<NodeId> {
    let (net, dm) = (ctx.net, ctx.dm);
    let outward = farthest_node_path(net, dm, first);
    let far_end = *outward.nodes.last().unwrap_or(&first);
    let back = shortest_path(net, dm, far_end, first);
    let diam = diameter(dm);
    let from_source = shortest_path(net, dm, diam.source, first);
    let from_target = shortest_path(net, dm, diam.target, first);

    let mut pool = Vec::new();
    for v in [outward, back, from_source, from_target]
        .into_iter()
        .flat_map(|p| p.nodes)
    {
        if v != first && !pool.contains(&v) {
            pool.push(v);
        }
    }
    pool
}

fn place_from_pool(
    mut b: Builder<'_, '_>,
    mut pool: Vec<NodeId>,
    id: StrategyId,
) -> crate::Result<StrategyResult> {
    while b.remaining() > 0 {
        if pool.is_empty() {
            b.place_remaining_on_uncovered("path pool exhausted");
            break;
        }
        let cands: Vec<_> = pool
            .iter()
            .enumerate()
            .map(|(position, &v)| b.candidate(v, CandidateSource::Pool { position }))
            .collect();
        let i = first_minimum(&cands).expect("pool is not empty");
        let node = pool.remove(i);
        b.place(node, StepRule::MinUnprotected, cands, None);
    }
    b.finish(Solver::Strategy(id))
}

/// Later batteries go to the pool node leaving the least value uncovered,
/// earliest pool position on ties.
pub fn strategy_6(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    let mut b = Builder::new(ctx);
    b.place_best_head();
    let pool = path_pool(ctx, b.placement.assignments()[0].node);
    place_from_pool(b, pool, StrategyId(6))
}

/// As strategy 6, but the pool is first ordered by betweenness (highest
/// first, pool order on ties), which decides ties between equal candidates.
pub fn strategy_7(ctx: &PlacementContext<'_>) -> crate::Result<StrategyResult> {
    let mut b = Builder::new(ctx);
    b.place_best_head();
    let pool = path_pool(ctx, b.placement.assignments()[0].node);
    let pool_scores = ScoreVector::new(pool.iter().map(|&v| ctx.scores.betweenness[v]).collect());
    let ranked = rank_sequence(&pool_scores)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    place_from_pool(b, ranked, StrategyId(7))
}
