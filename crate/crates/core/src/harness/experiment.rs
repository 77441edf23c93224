use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::ExperimentRow;
use crate::coverage::BatteryInventory;
use crate::error::{Error, Result};
use crate::graph::{all_pairs_shortest_paths, diameter, Diameter};
use crate::netgen::{
    generate, small_worldness, GenerationConfig, NetworkMeta, DEFAULT_OMEGA_SAMPLES,
};
use crate::strategies::{run_all, PlacementContext, StrategyResult};

/// Rewiring probabilities of the five networks generated per inventory.
pub const PUBLISHED_BETAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Ring-lattice degree for the published ensemble. The edge-scale pairs
/// alone leave diameters about twice the published ones at `k = 4`; `k = 8`
/// brings the median diameter, in units of `unit_km`, to the published 13.
/// See the `calibrate_ring_degree` example.
pub const PUBLISHED_RING_DEGREE: usize = 8;

/// The four published inventories, km.
pub const PUBLISHED_INVENTORIES: [&[f64]; 4] = [
    &[80.0, 70.0],
    &[110.0, 90.0, 80.0],
    &[120.0, 110.0, 90.0, 80.0],
    &[200.0, 120.0, 110.0, 90.0, 80.0],
];

/// `(unit_km, mult_max)` of the published networks, five per inventory in
/// table order.
pub const PUBLISHED_EDGE_SCALES: [[(f64, u32); 5]; 4] = [
    [(20.5, 9), (19.0, 9), (20.0, 8), (10.0, 7), (10.0, 8)],
    [(35.0, 9), (18.0, 8), (25.0, 9), (23.0, 8), (20.0, 8)],
    [(45.0, 9), (60.0, 9), (25.0, 8), (17.0, 7), (15.0, 9)],
    [(80.0, 8), (75.0, 9), (50.0, 8), (40.0, 9), (25.0, 10)],
];

/// One network to generate and one inventory to place on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentCase {
    pub label: String,
    pub generation: GenerationConfig,
    pub inventory: BatteryInventory,
    pub omega_samples: usize,
}

/// Everything measured for one case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub label: String,
    pub meta: NetworkMeta,
    pub node_count: usize,
    pub diameter: Diameter,
    pub min_edge_km: f64,
    pub max_edge_km: f64,
    pub total_asset: f64,
    pub inventory: BatteryInventory,
    pub results: Vec<StrategyResult>,
}

impl CaseOutcome {
    /// One row per strategy, in strategy order.
    pub fn rows(&self) -> Vec<ExperimentRow> {
        self.results
            .iter()
            .map(|r| ExperimentRow {
                strategy_ids: r.strategy_id().into_iter().collect(),
                small_worldness: self.meta.omega.unwrap_or(f64::NAN),
                node_count: self.node_count,
                diameter_km: self.diameter.km,
                min_edge_km: self.min_edge_km,
                max_edge_km: self.max_edge_km,
                total_asset: self.total_asset,
                ranges_km: self.inventory.ranges_km().to_vec(),
                intercept_prob: self.inventory.intercept_prob(),
                unprotected_value: r.report.unprotected_value,
                worst_case_pct: r.report.worst_case_pct,
            })
            .collect()
    }
}

fn with_context(label: &str, e: Error) -> Error {
    match e {
        Error::Generation(msg) => Error::Generation(format!("case {label}: {msg}")),
        Error::Config(msg) => Error::Config(format!("case {label}: {msg}")),
        other => other,
    }
}

/// Generates the case's network, measures it and runs all seven strategies.
pub fn run_case(case: &ExperimentCase) -> Result<CaseOutcome> {
    let ctx_err = |e| with_context(&case.label, e);
    let net = generate(&case.generation).map_err(ctx_err)?;
    let omega = small_worldness(&net, case.omega_samples, case.generation.seed).map_err(ctx_err)?;
    let dm = all_pairs_shortest_paths(&net)?;
    let ctx = PlacementContext::new(&net, &dm, &case.inventory)?;
    let results = run_all(&ctx)?;
    Ok(CaseOutcome {
        label: case.label.clone(),
        meta: NetworkMeta::from_config(&case.generation, Some(omega.omega)),
        node_count: net.node_count(),
        diameter: diameter(&dm),
        min_edge_km: net.min_edge_km().unwrap_or(0.0),
        max_edge_km: net.max_edge_km().unwrap_or(0.0),
        total_asset: net.total_asset(),
        inventory: case.inventory.clone(),
        results,
    })
}

/// Runs every case, in parallel across cases. Output order follows `cases`.
pub fn run_experiment(cases: &[ExperimentCase]) -> Result<Vec<CaseOutcome>> {
    if cases.is_empty() {
        return Err(Error::Config("experiment has no cases".into()));
    }
    cases.par_iter().map(run_case).collect()
}

pub fn experiment_rows(outcomes: &[CaseOutcome]) -> Vec<ExperimentRow> {
    outcomes.iter().flat_map(CaseOutcome::rows).collect()
}

/// Full outcomes, traces included, as pretty JSON.
pub fn write_traces_json<W: Write>(outcomes: &[CaseOutcome], out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, outcomes)?;
    Ok(())
}

/// The twenty published configurations: five rewiring probabilities for each
/// of the four inventories, with the published edge scales. Case `i` uses
/// seed `base_seed + i`.
pub fn published_ensemble(base_seed: u64, intercept_prob: f64) -> Result<Vec<ExperimentCase>> {
    let mut cases = Vec::with_capacity(20);
    for (t, (ranges, scales)) in PUBLISHED_INVENTORIES
        .iter()
        .zip(&PUBLISHED_EDGE_SCALES)
        .enumerate()
    {
        let inventory = BatteryInventory::new(ranges.to_vec(), intercept_prob)?;
        for (j, (&beta, &(unit_km, mult_max))) in PUBLISHED_BETAS.iter().zip(scales).enumerate() {
            let index = (t * 5 + j) as u64;
            cases.push(ExperimentCase {
                label: format!("inventory{}-beta{beta}", t + 1),
                generation: GenerationConfig {
                    k: PUBLISHED_RING_DEGREE,
                    beta,
                    unit_km,
                    mult_max,
                    seed: base_seed + index,
                    ..GenerationConfig::default()
                },
                inventory: inventory.clone(),
                omega_samples: DEFAULT_OMEGA_SAMPLES,
            });
        }
    }
    Ok(cases)
}
