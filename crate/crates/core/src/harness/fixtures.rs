//! Published result tables, transcribed into the result CSV schema.
//!
//! The percentage column is the printed value with its "≈" and "%" dropped;
//! nothing has been corrected.

use super::{read_rows_csv, ExperimentRow};

const TABLES_1_4: &str = include_str!("../../data/tables_1_4.csv");
const TABLE_5: &str = include_str!("../../data/table5.csv");

/// The 140 per-strategy rows: five networks for each of the four inventories,
/// seven strategies per network.
pub fn tables_1_4_fixture() -> Vec<ExperimentRow> {
    read_rows_csv(TABLES_1_4.as_bytes()).expect("embedded fixture parses")
}

/// The 20 best-strategy rows, one per network.
pub fn table5_fixture() -> Vec<ExperimentRow> {
    read_rows_csv(TABLE_5.as_bytes()).expect("embedded fixture parses")
}
