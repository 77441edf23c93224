//! Chooses the ring-lattice degree for the regenerated ensemble. The
//! published networks only give edge scales and diameters, so the degree is
//! matched on diameter in units of the base edge length.
//!
//! cargo run --release --example calibrate_ring_degree -- [out.csv]

use std::io::Write;

use rayon::prelude::*;

use iads::graph::{all_pairs_shortest_paths, diameter};
use iads::harness::{table5_fixture, PUBLISHED_BETAS, PUBLISHED_EDGE_SCALES};
use iads::netgen::{generate, GenerationConfig};

const REPEATS: u64 = 20;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len().is_multiple_of(2) {
        0.5 * (xs[m - 1] + xs[m])
    } else {
        xs[m]
    }
}

fn main() -> iads::Result<()> {
    let scales: Vec<(f64, u32)> = PUBLISHED_EDGE_SCALES.iter().flatten().copied().collect();
    let published: Vec<f64> = table5_fixture()
        .iter()
        .zip(&scales)
        .map(|(r, &(unit, _))| r.diameter_km / unit)
        .collect();
    println!(
        "published median diameter / unit_km: {:.1}\n",
        median(published)
    );

    let mut out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "k,median_diameter_units,networks")?;
    for k in [4, 6, 8, 10, 12] {
        let ratios: Vec<f64> = (0..REPEATS)
            .into_par_iter()
            .flat_map_iter(|rep| {
                scales
                    .iter()
                    .enumerate()
                    .map(move |(i, &(unit_km, mult_max))| {
                        let net = generate(&GenerationConfig {
                            k,
                            beta: PUBLISHED_BETAS[i % 5],
                            unit_km,
                            mult_max,
                            seed: 1000 * rep + i as u64,
                            ..GenerationConfig::default()
                        })?;
                        Ok(diameter(&all_pairs_shortest_paths(&net)?).km / unit_km)
                    })
            })
            .collect::<iads::Result<_>>()?;
        let count = ratios.len();
        writeln!(out, "{k},{:.1},{count}", median(ratios))?;
    }
    Ok(())
}
