use super::*;
use crate::coverage::covered_nodes;
use crate::graph::{all_pairs_shortest_paths, Edge};
use crate::netgen::{generate, GenerationConfig};

fn net(assets: Vec<f64>, edges: &[(NodeId, NodeId, f64)]) -> WeightedLocationNetwork {
    WeightedLocationNetwork::new(assets, edges.iter().map(|&(u, v, km)| Edge { u, v, km })).unwrap()
}

fn inv(ranges: &[f64]) -> BatteryInventory {
    BatteryInventory::new(ranges.to_vec(), 0.98).unwrap()
}

fn star() -> WeightedLocationNetwork {
    net(
        vec![0.5; 6],
        &[
            (0, 1, 10.0),
            (0, 2, 10.0),
            (0, 3, 10.0),
            (0, 4, 10.0),
            (0, 5, 10.0),
        ],
    )
}

fn complete(n: usize) -> WeightedLocationNetwork {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 10.0));
        }
    }
    net(vec![0.3; n], &edges)
}

fn path7() -> WeightedLocationNetwork {
    let edges: Vec<_> = (0..6).map(|i| (i, i + 1, 10.0)).collect();
    net(vec![0.1, 0.1, 0.1, 0.5, 0.1, 0.1, 0.9], &edges)
}

fn small_generated(seed: u64) -> WeightedLocationNetwork {
    generate(&GenerationConfig {
        nodes: 8,
        k: 4,
        beta: 0.4,
        unit_km: 10.0,
        mult_max: 5,
        seed,
        ..GenerationConfig::default()
    })
    .unwrap()
}

fn check_consistent(
    net: &WeightedLocationNetwork,
    dm: &DistanceMatrix,
    inv: &BatteryInventory,
    r: &StrategyResult,
) {
    r.placement.validate(inv, net.node_count()).unwrap();
    assert_eq!(r.trace.len(), r.placement.len());
    assert_eq!(r.placement.len(), inv.len().min(net.node_count()));
    let fresh = evaluate(net, dm, &r.placement, inv.intercept_prob()).unwrap();
    assert_eq!(fresh, r.report);
    for w in r.trace.windows(2) {
        assert!(w[1].unprotected_after <= w[0].unprotected_after + VALUE_EPS);
    }
    let last = r.trace.last().unwrap().unprotected_after;
    assert!((last - r.unprotected_value()).abs() < 1e-12);
}

#[test]
fn strategy_ids() {
    assert!(StrategyId::new(0).is_err());
    assert!(StrategyId::new(8).is_err());
    assert_eq!(StrategyId::new(3).unwrap().to_string(), "Strategy_3");
    let json = serde_json::to_string(&StrategyId::new(5).unwrap()).unwrap();
    assert_eq!(json, "5");
    assert!(serde_json::from_str::<StrategyId>("9").is_err());
}

#[test]
fn strategy_1_star_center() {
    let g = star();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[5.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_1(&ctx).unwrap();
    assert_eq!(r.placement.nodes(), vec![0]);
    assert!((r.unprotected_value() - 2.5).abs() < 1e-12);
}

#[test]
fn strategy_1_second_battery_beyond_first_range() {
    let g = star();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[5.0, 5.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_1(&ctx).unwrap();
    assert_eq!(r.placement.nodes(), vec![0, 1]);
    assert_eq!(r.trace[1].rule, StepRule::DistanceFilter);
}

#[test]
fn strategy_1_falls_back_when_filter_empties() {
    let g = star();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[50.0, 5.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_1(&ctx).unwrap();
    assert_eq!(r.placement.nodes(), vec![0, 1]);
    assert_eq!(r.trace[1].rule, StepRule::Fallback);
    assert_eq!(r.unprotected_value(), 0.0);
    assert!((r.report.worst_case_pct - 2.0).abs() < 1e-9);
}

#[test]
fn strategy_2_complete_graph_tie_goes_to_node_0() {
    let g = complete(5);
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[5.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    assert_eq!(strategy_2(&ctx).unwrap().placement.nodes(), vec![0]);
}

#[test]
fn single_battery_covering_everything() {
    let g = path7();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[100.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    for r in run_all(&ctx).unwrap() {
        assert_eq!(r.unprotected_value(), 0.0);
        assert!((r.report.worst_case_pct - 2.0).abs() < 1e-9);
    }
}

#[test]
fn strategy_3_single_battery_is_best_head() {
    let g = path7();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[10.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_3(&ctx).unwrap();
    let best = r.trace[0]
        .candidates
        .iter()
        .map(|c| c.unprotected)
        .fold(f64::INFINITY, f64::min);
    assert_eq!(r.unprotected_value(), best);
    assert_eq!(r.trace[0].candidates.len(), 6);
}

/// Brute-force the tail of a strategy 3 run that went through the
/// uncovered-node search and compare.
#[test]
fn strategy_3_duplicate_path_matches_brute_force() {
    let inventory = inv(&[20.0, 15.0, 10.0]);
    let mut exercised = 0;
    for seed in 0..40 {
        let g = small_generated(seed);
        let dm = all_pairs_shortest_paths(&g).unwrap();
        let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
        let r = strategy_3(&ctx).unwrap();
        check_consistent(&g, &dm, &inventory, &r);
        let Some(start) = r
            .trace
            .iter()
            .position(|s| s.rule == StepRule::ExhaustiveUncovered)
        else {
            continue;
        };
        exercised += 1;
        let ranges = inventory.ranges_km();
        let kept = Placement::from_nodes(&r.placement.nodes()[..start], &inventory);
        let covered = covered_nodes(&dm, &kept);
        let uncovered: Vec<NodeId> = (0..g.node_count())
            .filter(|u| !covered.contains(u))
            .collect();
        let m = ranges.len() - start;
        if uncovered.len() <= m {
            continue;
        }
        let mut best = f64::INFINITY;
        let mut combo: Vec<usize> = (0..m).collect();
        loop {
            let mut p = kept.clone();
            for (slot, &i) in combo.iter().enumerate() {
                p.push(uncovered[i], ranges[start + slot]);
            }
            let u = evaluate(&g, &dm, &p, 0.98).unwrap().unprotected_value;
            best = best.min(u);
            // next combination
            let mut k = m;
            while k > 0 && combo[k - 1] == uncovered.len() - m + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            combo[k - 1] += 1;
            for j in k..m {
                combo[j] = combo[j - 1] + 1;
            }
        }
        assert!((r.unprotected_value() - best).abs() < 1e-12, "seed {seed}");
    }
    assert!(
        exercised > 0,
        "no fixture reached the uncovered-node search"
    );
}

#[test]
fn strategy_4_full_coverage_leaves_nothing() {
    let g = path7();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[100.0, 50.0, 20.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_4(&ctx).unwrap();
    check_consistent(&g, &dm, &inventory, &r);
    assert_eq!(r.unprotected_value(), 0.0);
    assert!(r.trace[1..].iter().all(|s| s.rule == StepRule::Fallback));
}

#[test]
fn strategy_5_cycle_second_battery_covers_the_rest() {
    let g = net(
        vec![0.25; 4],
        &[(0, 1, 10.0), (1, 2, 10.0), (2, 3, 10.0), (0, 3, 10.0)],
    );
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[15.0, 15.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_5(&ctx).unwrap();
    let first = r.placement.nodes()[0];
    let best = (0..4)
        .filter(|&v| v != first)
        .map(|v| {
            let p = Placement::from_nodes(&[first, v], &inventory);
            evaluate(&g, &dm, &p, 0.98).unwrap().unprotected_value
        })
        .fold(f64::INFINITY, f64::min);
    // node 2 is the only node the first battery leaves uncovered
    assert_eq!(r.placement.nodes(), vec![0, 2]);
    assert_eq!(r.unprotected_value(), best);
    assert_eq!(best, 0.0);
}

#[test]
fn strategy_6_path_pool_and_heavier_arm() {
    let g = path7();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[10.0, 10.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let r = strategy_6(&ctx).unwrap();
    assert_eq!(r.placement.nodes()[0], 3);
    assert_eq!(path_pool(&ctx, 3), vec![2, 1, 0, 6, 5, 4]);
    // 6 and 5 both leave 0.2 uncovered; 6 comes first in the pool
    assert_eq!(r.placement.nodes()[1], 6);
    assert!((r.unprotected_value() - 0.2).abs() < 1e-12);
}

#[test]
fn pool_excludes_first_battery() {
    for seed in 0..10 {
        let g = small_generated(seed);
        let dm = all_pairs_shortest_paths(&g).unwrap();
        let inventory = inv(&[20.0]);
        let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
        for v in 0..g.node_count() {
            let pool = path_pool(&ctx, v);
            assert!(!pool.contains(&v));
            let mut sorted = pool.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), pool.len());
        }
    }
}

#[test]
fn strategy_7_singleton_pool_matches_strategy_6() {
    let g = net(vec![0.4, 0.7], &[(0, 1, 30.0)]);
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[10.0, 5.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    let s6 = strategy_6(&ctx).unwrap();
    let s7 = strategy_7(&ctx).unwrap();
    assert_eq!(s6.placement, s7.placement);
    assert_eq!(s6.unprotected_value(), 0.0);
}

#[test]
fn oracle_trivial_cases() {
    let g = path7();
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let all = inv(&[1.0; 7]);
    assert_eq!(
        exhaustive_optimal(&g, &dm, &all)
            .unwrap()
            .unprotected_value(),
        0.0
    );

    let one = inv(&[60.0]);
    let r = exhaustive_optimal(&g, &dm, &one).unwrap();
    assert_eq!(r.placement.nodes(), vec![0]);
    assert_eq!(r.unprotected_value(), 0.0);
    assert_eq!(r.solver, Solver::Exhaustive);
}

#[test]
fn oracle_bound() {
    let g = complete(12);
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let big = inv(&[5.0; 8]);
    assert!(matches!(
        exhaustive_optimal(&g, &dm, &big),
        Err(Error::OracleBoundExceeded(_))
    ));
}

#[test]
fn oracle_dominates_and_runs_are_deterministic() {
    let inventory = inv(&[25.0, 15.0, 10.0]);
    for seed in 0..15 {
        let g = small_generated(seed);
        let dm = all_pairs_shortest_paths(&g).unwrap();
        let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
        let best = exhaustive_optimal(&g, &dm, &inventory)
            .unwrap()
            .unprotected_value();
        let first = run_all(&ctx).unwrap();
        for r in &first {
            check_consistent(&g, &dm, &inventory, r);
            assert!(
                r.unprotected_value() >= best - 1e-12,
                "seed {seed} {:?}",
                r.solver
            );
        }
        assert_eq!(first, run_all(&ctx).unwrap());
    }
}

#[test]
fn more_batteries_than_nodes() {
    let g = net(vec![0.2, 0.9, 0.4], &[(0, 1, 10.0), (1, 2, 10.0)]);
    let dm = all_pairs_shortest_paths(&g).unwrap();
    let inventory = inv(&[3.0, 3.0, 3.0, 3.0, 3.0]);
    let ctx = PlacementContext::new(&g, &dm, &inventory).unwrap();
    for r in run_all(&ctx).unwrap() {
        check_consistent(&g, &dm, &inventory, &r);
        assert_eq!(r.placement.len(), 3);
        assert_eq!(r.unprotected_value(), 0.0);
    }
}

#[test]
fn first_minimum_prefers_earlier() {
    let c = |node, u| Candidate {
        node,
        source: CandidateSource::Ranking,
        unprotected: u,
    };
    assert_eq!(first_minimum(&[]), None);
    assert_eq!(first_minimum(&[c(4, 1.0), c(2, 1.0), c(3, 2.0)]), Some(0));
    assert_eq!(first_minimum(&[c(4, 1.0), c(2, 0.5), c(3, 0.5)]), Some(1));
}
