use thiserror::Error;

/// Errors produced by network construction, generation, scoring, placement
/// and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("graph not connected")]
    Disconnected,

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("lattice clustering undefined")]
    LatticeClusteringUndefined,

    #[error("{measure} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        measure: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("network has no assets")]
    NoAssets,

    #[error("oracle bound exceeded: {0} ordered assignments")]
    OracleBoundExceeded(u128),

    #[error("collinear covariates")]
    CollinearCovariates,

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::InvalidNetwork(_)
            | Error::OracleBoundExceeded(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::Disconnected
            | Error::Generation(_)
            | Error::LatticeClusteringUndefined
            | Error::NoConvergence { .. }
            | Error::NoAssets
            | Error::CollinearCovariates => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
