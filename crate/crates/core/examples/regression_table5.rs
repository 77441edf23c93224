//! Fits omega and the worst-case percentage on diameter and total inventory
//! reach over the published best-strategy table, then writes surface data for
//! plotting.
//!
//! cargo run --example regression_table5 -- [surface.csv]

use std::fs::File;

use iads::harness::{
    diameter_grid, emit_plot_data, fit_rows, table5_fixture, RegressionTarget, PLOT_LEVELS_KM,
};

fn main() -> iads::Result<()> {
    let rows = table5_fixture();
    for target in [RegressionTarget::Omega, RegressionTarget::Pct] {
        let fit = fit_rows(&rows, target)?;
        println!(
            "{target:?}: {:.6} + {:.7}*diameter + {:.7}*sum_ranges   R^2 {:.4}  (n = {})",
            fit.beta_0, fit.beta_diameter, fit.beta_sum_ranges, fit.r_squared, fit.n_obs
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        let fit = fit_rows(&rows, RegressionTarget::Pct)?;
        let grid = diameter_grid(100.0, 1500.0, 50);
        let lines = emit_plot_data(&fit, &grid, &PLOT_LEVELS_KM, File::create(&path)?)?;
        println!("wrote {lines} points to {path}");
    }
    Ok(())
}
