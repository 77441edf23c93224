//! Picks the asset power-law exponent so that a 50-node network's expected
//! total matches the mean total of the published networks, then checks how
//! often sampled totals land in the published band.
//!
//! cargo run --release --example calibrate_assets -- [out.csv]

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use iads::harness::tables_1_4_fixture;
use iads::netgen::{calibrate_asset_exponent, expected_asset_value, sample_assets};

const NODES: usize = 50;
const BAND: (f64, f64) = (13.0, 16.5);
const SEEDS: u64 = 1000;

fn band_fraction(alpha: f64) -> f64 {
    let inside = (0..SEEDS)
        .filter(|&s| {
            let total: f64 = sample_assets(NODES, alpha, &mut ChaCha8Rng::seed_from_u64(s))
                .iter()
                .sum();
            (BAND.0..=BAND.1).contains(&total)
        })
        .count();
    inside as f64 / SEEDS as f64
}

fn main() -> iads::Result<()> {
    // one total per published network; rows come in runs of seven strategies
    let totals: Vec<f64> = tables_1_4_fixture()
        .chunks(7)
        .map(|c| c[0].total_asset)
        .collect();
    let target = totals.iter().sum::<f64>() / totals.len() as f64;
    let alpha = calibrate_asset_exponent(NODES, target)?;
    println!(
        "published totals: {} networks, mean {target:.4}, range {:.1}..{:.1}",
        totals.len(),
        totals.iter().copied().fold(f64::INFINITY, f64::min),
        totals.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    );
    println!("calibrated exponent {alpha:.4}\n");

    let mut out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "alpha,expected_total,fraction_in_band")?;
    for i in 0..=20 {
        let a = 1.0 + 0.05 * i as f64;
        writeln!(
            out,
            "{a:.2},{:.4},{:.3}",
            NODES as f64 * expected_asset_value(a),
            band_fraction(a)
        )?;
    }
    Ok(())
}
