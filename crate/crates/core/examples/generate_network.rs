//! Generates one weighted small-world network, prints its summary and writes
//! the JSON document.
//!
//! cargo run --example generate_network -- [beta] [seed] [out.json]

use iads::graph::{all_pairs_shortest_paths, diameter};
use iads::netgen::{generate, small_worldness, GenerationConfig, NetworkMeta};

fn main() -> iads::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let beta = args.first().and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let config = GenerationConfig {
        beta,
        seed,
        ..GenerationConfig::default()
    };

    let net = generate(&config)?;
    let sw = small_worldness(&net, 10, seed)?;
    let dm = all_pairs_shortest_paths(&net)?;
    let d = diameter(&dm);

    println!("nodes        {}", net.node_count());
    println!("edges        {}", net.edge_count());
    println!(
        "edge km      {} .. {}",
        net.min_edge_km().unwrap_or(0.0),
        net.max_edge_km().unwrap_or(0.0)
    );
    println!("total asset  {:.1}", net.total_asset());
    println!("diameter     {} km ({} -> {})", d.km, d.source, d.target);
    println!(
        "omega        {:.4}  (C {:.3}/{:.3}, L {:.3}/{:.3})",
        sw.omega, sw.c_observed, sw.c_lattice, sw.l_random, sw.l_observed
    );

    if let Some(path) = args.get(2) {
        let json = net.to_json(Some(NetworkMeta::from_config(&config, Some(sw.omega))))?;
        std::fs::write(path, json)?;
        println!("wrote {path}");
    }
    Ok(())
}
