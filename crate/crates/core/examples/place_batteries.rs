//! Runs the seven placement strategies on one network and prints the
//! step-by-step trace of the best one.
//!
//! cargo run --example place_batteries -- [ranges] [seed]

use iads::coverage::BatteryInventory;
use iads::graph::all_pairs_shortest_paths;
use iads::netgen::{generate, GenerationConfig};
use iads::strategies::{run_all, PlacementContext};

fn main() -> iads::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ranges = args.first().map(String::as_str).unwrap_or("110,90,80");
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    let net = generate(&GenerationConfig {
        k: 8,
        unit_km: 25.0,
        seed,
        ..GenerationConfig::default()
    })?;
    let dm = all_pairs_shortest_paths(&net)?;
    let inventory = BatteryInventory::parse(ranges, 0.98)?;
    let ctx = PlacementContext::new(&net, &dm, &inventory)?;
    let results = run_all(&ctx)?;

    println!("total asset {:.1}, ranges {ranges} km", net.total_asset());
    for r in &results {
        let id = r.strategy_id().expect("strategy result");
        println!(
            "  S{}  nodes {:?}  U {:.1}  worst case {:.4}%",
            id.get(),
            r.placement.nodes(),
            r.unprotected_value(),
            r.report.worst_case_pct
        );
    }

    let best = results
        .iter()
        .min_by(|a, b| a.unprotected_value().total_cmp(&b.unprotected_value()))
        .expect("seven results");
    println!("\ntrace of S{}", best.strategy_id().unwrap().get());
    for step in &best.trace {
        println!(
            "  battery {} ({} km) -> node {:>2} by {:?}, {} candidates, U {:.1}",
            step.battery,
            step.range_km,
            step.chosen,
            step.rule,
            step.candidates.len(),
            step.unprotected_after
        );
    }
    Ok(())
}
