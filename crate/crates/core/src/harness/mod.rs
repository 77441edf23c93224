//! Batch experiments, the result table schema, the published result fixtures
//! and the regression of outcome on network diameter and inventory reach.

mod experiment;
mod fixtures;
mod regression;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::coverage::worst_case_pct;
use crate::error::{Error, Result};
use crate::strategies::StrategyId;

pub use experiment::{
    experiment_rows, published_ensemble, run_case, run_experiment, write_traces_json, CaseOutcome,
    ExperimentCase, PUBLISHED_BETAS, PUBLISHED_EDGE_SCALES, PUBLISHED_INVENTORIES,
    PUBLISHED_RING_DEGREE,
};
pub use fixtures::{table5_fixture, tables_1_4_fixture};
pub use regression::{
    diameter_grid, emit_plot_data, fit_rows, ols_fit, RegressionFit, RegressionTarget,
    PLOT_LEVELS_KM,
};

/// Two unprotected values closer than this count as a tie when aggregating.
pub const TIE_EPS: f64 = 1e-9;

/// One result line: a strategy (or several tied strategies) applied to one
/// network with one inventory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub strategy_ids: Vec<StrategyId>,
    pub small_worldness: f64,
    pub node_count: usize,
    pub diameter_km: f64,
    pub min_edge_km: f64,
    pub max_edge_km: f64,
    pub total_asset: f64,
    pub ranges_km: Vec<f64>,
    pub intercept_prob: f64,
    pub unprotected_value: f64,
    pub worst_case_pct: f64,
}

impl ExperimentRow {
    pub fn sum_ranges_km(&self) -> f64 {
        self.ranges_km.iter().sum()
    }

    /// Percentage recomputed from the row's own `(U, T, p)`.
    pub fn formula_pct(&self) -> f64 {
        worst_case_pct(
            self.unprotected_value,
            self.total_asset,
            self.intercept_prob,
        )
    }

    /// Whether two rows describe the same network and inventory.
    pub fn same_case(&self, other: &Self) -> bool {
        self.small_worldness == other.small_worldness
            && self.node_count == other.node_count
            && self.diameter_km == other.diameter_km
            && self.min_edge_km == other.min_edge_km
            && self.max_edge_km == other.max_edge_km
            && self.total_asset == other.total_asset
            && self.ranges_km == other.ranges_km
            && self.intercept_prob == other.intercept_prob
    }
}

/// Flat CSV form; lists are `;`-joined.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    strategy: String,
    small_worldness: f64,
    node_count: usize,
    diameter_km: f64,
    min_edge_km: f64,
    max_edge_km: f64,
    total_asset: f64,
    ranges_km: String,
    intercept_prob: f64,
    unprotected_value: f64,
    worst_case_pct: f64,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn split<T: std::str::FromStr>(field: &str, what: &str) -> Result<Vec<T>> {
    field
        .split(';')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad {what} entry {s:?}")))
        })
        .collect()
}

impl From<&ExperimentRow> for CsvRow {
    fn from(r: &ExperimentRow) -> Self {
        Self {
            strategy: join(&r.strategy_ids.iter().map(|s| s.get()).collect::<Vec<_>>()),
            small_worldness: r.small_worldness,
            node_count: r.node_count,
            diameter_km: r.diameter_km,
            min_edge_km: r.min_edge_km,
            max_edge_km: r.max_edge_km,
            total_asset: r.total_asset,
            ranges_km: join(&r.ranges_km),
            intercept_prob: r.intercept_prob,
            unprotected_value: r.unprotected_value,
            worst_case_pct: r.worst_case_pct,
        }
    }
}

impl TryFrom<CsvRow> for ExperimentRow {
    type Error = Error;

    fn try_from(r: CsvRow) -> Result<Self> {
        let ids: Vec<u8> = split(&r.strategy, "strategy")?;
        Ok(Self {
            strategy_ids: ids
                .into_iter()
                .map(StrategyId::new)
                .collect::<Result<_>>()?,
            small_worldness: r.small_worldness,
            node_count: r.node_count,
            diameter_km: r.diameter_km,
            min_edge_km: r.min_edge_km,
            max_edge_km: r.max_edge_km,
            total_asset: r.total_asset,
            ranges_km: split(&r.ranges_km, "range")?,
            intercept_prob: r.intercept_prob,
            unprotected_value: r.unprotected_value,
            worst_case_pct: r.worst_case_pct,
        })
    }
}

pub fn write_rows_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    csv::Reader::from_reader(input)
        .deserialize::<CsvRow>()
        .map(|r| ExperimentRow::try_from(r?))
        .collect()
}

/// Keeps the minimum-U row of every run of consecutive rows describing the
/// same case. Rows tied at the minimum are merged into one row listing every
/// tied strategy.
pub fn aggregate_optimal(rows: &[ExperimentRow]) -> Vec<ExperimentRow> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let end = start
            + rows[start..]
                .iter()
                .take_while(|r| r.same_case(&rows[start]))
                .count();
        let group = &rows[start..end];
        let min = group
            .iter()
            .map(|r| r.unprotected_value)
            .fold(f64::INFINITY, f64::min);
        let mut tied = group
            .iter()
            .filter(|r| r.unprotected_value <= min + TIE_EPS);
        let mut best = tied.next().expect("group is nonempty").clone();
        for r in tied {
            best.strategy_ids.extend(&r.strategy_ids);
        }
        out.push(best);
        start = end;
    }
    out
}
