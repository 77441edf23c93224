//! Mean small-worldness omega across the rewiring range, showing the move
//! from lattice-like (negative) through small-world (near zero) to random-like
//! (positive) networks.
//!
//! cargo run --release --example small_worldness_sweep -- [out.csv]

use std::io::Write;

use rayon::prelude::*;

use iads::harness::PUBLISHED_RING_DEGREE;
use iads::netgen::{generate, small_worldness, GenerationConfig};

const SEEDS: u64 = 10;

fn main() -> iads::Result<()> {
    let mut out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "k,beta,mean_omega,min_omega,max_omega")?;
    for k in [4, PUBLISHED_RING_DEGREE] {
        for step in 0..=10 {
            let beta = step as f64 / 10.0;
            let omegas: Vec<f64> = (0..SEEDS)
                .into_par_iter()
                .map(|seed| {
                    let net = generate(&GenerationConfig {
                        k,
                        beta,
                        seed,
                        ..GenerationConfig::default()
                    })?;
                    Ok(small_worldness(&net, 5, seed)?.omega)
                })
                .collect::<iads::Result<_>>()?;
            let mean = omegas.iter().sum::<f64>() / omegas.len() as f64;
            let lo = omegas.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = omegas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            writeln!(out, "{k},{beta:.1},{mean:.4},{lo:.4},{hi:.4}")?;
        }
    }
    Ok(())
}
