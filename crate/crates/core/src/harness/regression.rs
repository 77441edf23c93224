use std::io::Write;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::ExperimentRow;
use crate::error::{Error, Result};

/// Inventory reach levels (sum of ranges, km) of the four published
/// inventories.
pub const PLOT_LEVELS_KM: [f64; 4] = [150.0, 280.0, 400.0, 600.0];

/// `y = beta_0 + beta_diameter * diameter + beta_sum_ranges * sum_ranges`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub beta_0: f64,
    pub beta_diameter: f64,
    pub beta_sum_ranges: f64,
    pub r_squared: f64,
    pub n_obs: usize,
}

impl RegressionFit {
    pub fn predict(&self, diameter_km: f64, sum_ranges_km: f64) -> f64 {
        self.beta_0 + self.beta_diameter * diameter_km + self.beta_sum_ranges * sum_ranges_km
    }
}

/// Least squares through a QR factorisation of the design `[1, x1, x2]`.
pub fn ols_fit(y: &[f64], x1: &[f64], x2: &[f64]) -> Result<RegressionFit> {
    let n = y.len();
    if x1.len() != n || x2.len() != n {
        return Err(Error::Config(format!(
            "regression columns differ in length: {n}, {}, {}",
            x1.len(),
            x2.len()
        )));
    }
    if n < 4 {
        return Err(Error::Config(format!(
            "regression needs at least 4 rows, got {n}"
        )));
    }
    let x = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => x1[i],
        _ => x2[i],
    });
    let yv = DVector::from_column_slice(y);

    let qr = x.clone().qr();
    let r = qr.r();
    let col_norms: Vec<f64> = (0..3).map(|j| x.column(j).norm()).collect();
    for j in 0..3 {
        if col_norms[j] == 0.0 || r[(j, j)].abs() <= 1e-10 * col_norms[j] {
            return Err(Error::CollinearCovariates);
        }
    }
    let qty = qr.q().transpose() * &yv;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::CollinearCovariates)?;

    let residuals = &yv - &x * &beta;
    let ss_res = residuals.norm_squared();
    let mean = yv.mean();
    let ss_tot: f64 = yv.iter().map(|v| (v - mean).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(RegressionFit {
        beta_0: beta[0],
        beta_diameter: beta[1],
        beta_sum_ranges: beta[2],
        r_squared,
        n_obs: n,
    })
}

/// Response variable for a fit over result rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegressionTarget {
    Omega,
    Pct,
}

impl FromStr for RegressionTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(Self::Omega),
            "pct" => Ok(Self::Pct),
            other => Err(Error::Config(format!(
                "unknown regression target {other:?}; expected omega or pct"
            ))),
        }
    }
}

/// Regresses the target on diameter and sum of ranges over `rows`.
pub fn fit_rows(rows: &[ExperimentRow], target: RegressionTarget) -> Result<RegressionFit> {
    let y: Vec<f64> = rows
        .iter()
        .map(|r| match target {
            RegressionTarget::Omega => r.small_worldness,
            RegressionTarget::Pct => r.worst_case_pct,
        })
        .collect();
    let d: Vec<f64> = rows.iter().map(|r| r.diameter_km).collect();
    let s: Vec<f64> = rows.iter().map(ExperimentRow::sum_ranges_km).collect();
    ols_fit(&y, &d, &s)
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn diameter_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Writes `diameter_km,sum_ranges_km,predicted` for every level and grid
/// point, level-major. Returns the number of data rows.
pub fn emit_plot_data<W: Write>(
    fit: &RegressionFit,
    grid: &[f64],
    levels: &[f64],
    out: W,
) -> Result<usize> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["diameter_km", "sum_ranges_km", "predicted"])?;
    for &s in levels {
        for &d in grid {
            w.write_record([d.to_string(), s.to_string(), fit.predict(d, s).to_string()])?;
        }
    }
    w.flush()?;
    Ok(grid.len() * levels.len())
}
