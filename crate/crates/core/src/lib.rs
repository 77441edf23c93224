//! Placement of air-defense batteries on weighted small-world location
//! networks.
//!
//! A [`graph::WeightedLocationNetwork`] carries an asset value on every node
//! and a length in km on every edge. [`netgen`] generates such networks,
//! [`centrality`] ranks their nodes, [`strategies`] places a battery
//! inventory and [`coverage`] scores the placement. [`harness`] runs whole
//! experiments and fits the regression of outcome on network size and
//! inventory reach.

pub mod centrality;
pub mod coverage;
pub mod error;
pub mod graph;
pub mod harness;
pub mod netgen;
pub mod strategies;

pub use error::{Error, Result};
