mod common;

use proptest::prelude::*;

use common::{floyd_warshall, random_connected, random_inventory, TOL};
use iads::coverage::{coverage_mask, evaluate, worst_case_pct, Placement};
use iads::graph::{all_pairs_shortest_paths, diameter, shortest_path, WeightedLocationNetwork};
use iads::netgen::{generate, GenerationConfig};
use iads::strategies::{run_all, PlacementContext};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dijkstra_agrees_with_floyd_warshall(seed in any::<u64>()) {
        let net = random_connected(seed, 9);
        let dm = all_pairs_shortest_paths(&net).unwrap();
        let fw = floyd_warshall(&net);
        for (u, row) in fw.iter().enumerate() {
            for (v, &d) in row.iter().enumerate() {
                prop_assert!((dm.get(u, v) - d).abs() <= TOL);
            }
        }
    }

    #[test]
    fn shortest_paths_are_walks_of_the_right_length(seed in any::<u64>(), a in 0usize..9, b in 0usize..9) {
        let net = random_connected(seed, 9);
        let n = net.node_count();
        let (a, b) = (a % n, b % n);
        let dm = all_pairs_shortest_paths(&net).unwrap();
        let p = shortest_path(&net, &dm, a, b);
        prop_assert_eq!(p.nodes.first(), Some(&a));
        prop_assert_eq!(p.nodes.last(), Some(&b));
        let walked: f64 = p.nodes.windows(2).map(|w| net.edge_km(w[0], w[1]).unwrap()).sum();
        prop_assert!((walked - dm.get(a, b)).abs() <= TOL);
        prop_assert!((p.total_km - walked).abs() <= TOL);
        let paths = common::shortest_simple_paths(&net, a, b);
        prop_assert_eq!(&p.nodes, paths.iter().min().unwrap());
    }

    #[test]
    fn coverage_conserves_value(seed in any::<u64>(), picks in prop::collection::vec(0usize..9, 1..4)) {
        let net = random_connected(seed, 9);
        let inv = random_inventory(seed, 3);
        let n = net.node_count();
        let mut nodes: Vec<usize> = Vec::new();
        for p in picks {
            if !nodes.contains(&(p % n)) && nodes.len() < inv.len() {
                nodes.push(p % n);
            }
        }
        let dm = all_pairs_shortest_paths(&net).unwrap();
        let placement = Placement::from_nodes(&nodes, &inv);
        let report = evaluate(&net, &dm, &placement, inv.intercept_prob()).unwrap();
        let covered: f64 = report.covered.iter().map(|&u| net.asset(u)).sum();
        prop_assert!((covered + report.unprotected_value - net.total_asset()).abs() <= TOL);
        let mask = coverage_mask(&dm, &placement);
        prop_assert_eq!(mask.iter().filter(|&&c| c).count(), report.covered.len());
    }

    #[test]
    fn pct_stays_in_band(u in 0.0f64..50.0, extra in 0.0f64..50.0, p in 0.01f64..=1.0) {
        let t = u + extra + 0.1;
        let pct = worst_case_pct(u, t, p);
        prop_assert!(pct >= 100.0 * (1.0 - p) - 1e-9);
        prop_assert!(pct <= 100.0 + 1e-9);
        prop_assert!(worst_case_pct(u + extra, t, p) >= pct - 1e-9);
    }

    /// Doubling every edge and every range is exact in binary floating point,
    /// so no decision in any strategy may change.
    #[test]
    fn strategies_ignore_a_common_scale(seed in any::<u64>()) {
        let net = random_connected(seed, 10);
        let inv = random_inventory(seed, 3);
        let big = net.scaled(2.0).unwrap();
        let big_inv = iads::coverage::BatteryInventory::new(
            inv.ranges_km().iter().map(|r| r * 2.0).collect(),
            inv.intercept_prob(),
        ).unwrap();
        let dm = all_pairs_shortest_paths(&net).unwrap();
        let big_dm = all_pairs_shortest_paths(&big).unwrap();
        let a = run_all(&PlacementContext::new(&net, &dm, &inv).unwrap()).unwrap();
        let b = run_all(&PlacementContext::new(&big, &big_dm, &big_inv).unwrap()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.placement.nodes(), y.placement.nodes());
            prop_assert_eq!(x.unprotected_value(), y.unprotected_value());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let net = random_connected(seed, 10);
        let text = net.to_json(None).unwrap();
        let (back, meta) = WeightedLocationNetwork::from_json(&text).unwrap();
        prop_assert_eq!(back, net);
        prop_assert!(meta.is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_networks_keep_their_shape(
        seed in any::<u64>(),
        beta in 0.0f64..=1.0,
        half_k in 1usize..=4,
        unit in 1u32..=80,
        mult_max in 1u32..=10,
    ) {
        let cfg = GenerationConfig {
            k: 2 * half_k,
            beta,
            unit_km: f64::from(unit),
            mult_max,
            seed,
            ..GenerationConfig::default()
        };
        let net = match generate(&cfg) {
            Ok(net) => net,
            // sparse, heavily rewired rings may never connect
            Err(iads::Error::Generation(_)) if half_k == 1 => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(net.node_count(), 50);
        prop_assert_eq!(net.edge_count(), 50 * half_k);
        prop_assert!(net.is_connected());
        for e in net.edges() {
            let m = e.km / cfg.unit_km;
            prop_assert!(m.fract() == 0.0 && m >= 1.0 && m <= f64::from(mult_max));
        }
        prop_assert!(net.assets().iter().all(|&a| (0.1..=1.0).contains(&a)));
        prop_assert_eq!(generate(&cfg).unwrap(), net.clone());
        let dm = all_pairs_shortest_paths(&net).unwrap();
        let d = diameter(&dm);
        prop_assert!(d.source < d.target);
        prop_assert_eq!(dm.get(d.source, d.target), d.km);
        prop_assert!((0..50).all(|u| dm.row(u).iter().all(|&x| x <= d.km)));
    }
}
