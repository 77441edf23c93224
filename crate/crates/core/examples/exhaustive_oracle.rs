//! Compares the heuristics with the exact optimum on a small network, where
//! enumerating every ordered assignment is cheap.

use iads::coverage::BatteryInventory;
use iads::graph::all_pairs_shortest_paths;
use iads::netgen::{generate, GenerationConfig};
use iads::strategies::{exhaustive_optimal, run_all, PlacementContext};

fn main() -> iads::Result<()> {
    let inventory = BatteryInventory::new(vec![60.0, 40.0, 30.0], 0.98)?;
    let mut gaps = [0usize; 7];
    let seeds = 0..20u64;
    for seed in seeds.clone() {
        let net = generate(&GenerationConfig {
            nodes: 12,
            seed,
            ..GenerationConfig::default()
        })?;
        let dm = all_pairs_shortest_paths(&net)?;
        let best = exhaustive_optimal(&net, &dm, &inventory)?;
        let ctx = PlacementContext::new(&net, &dm, &inventory)?;
        let results = run_all(&ctx)?;
        let line: Vec<String> = results
            .iter()
            .map(|r| format!("{:.1}", r.unprotected_value()))
            .collect();
        println!(
            "seed {seed:>2}  optimum U {:.1} at {:?}  strategies {}",
            best.unprotected_value(),
            best.placement.nodes(),
            line.join(" ")
        );
        for (g, r) in gaps.iter_mut().zip(&results) {
            if r.unprotected_value() > best.unprotected_value() + 1e-9 {
                *g += 1;
            }
        }
    }
    println!(
        "\nnetworks where each strategy missed the optimum (of {}):",
        seeds.count()
    );
    for (i, g) in gaps.iter().enumerate() {
        println!("  S{}  {g}", i + 1);
    }
    Ok(())
}
