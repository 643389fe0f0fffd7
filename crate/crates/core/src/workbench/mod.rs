//! Instance and certificate files, generators, verification and benchmark
//! reports behind the `steinitz` command-line tool.

use std::path::PathBuf;

use thiserror::Error;

use crate::error::Error;
use crate::steinitz::SelectionConfig;

mod bench;
mod certificate;
mod generate;
mod instance;
pub mod json;

pub use bench::{run_bench, BenchConfig, BenchEntry, BenchReport};
pub use certificate::{
    certify_euclidean, certify_spherical, verify, CertificateFile, CertificatePayload, OracleSettings, Verification,
    VerificationStatus,
};
pub use generate::{gen_euclid, gen_full_sphere, gen_sphere};
pub use instance::{CapSpec, InstanceFile, InstanceKind, Metadata, SCHEMA_VERSION};

/// Overrides the exhaustive-search point limit when set.
pub const EXACT_LIMIT_ENV: &str = "STEINITZ_EXACT_MAX_POINTS";

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Usage(String),
}

impl WorkbenchError {
    /// Process exit code: 1 premise, 2 verification, 3 scale, 4 input.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Core(Error::PremiseViolated(_)) => 1,
            WorkbenchError::Core(Error::VerificationFailed(_) | Error::EquatorSingularity(_))
            | WorkbenchError::Verification(_) => 2,
            WorkbenchError::Core(Error::ScaleLimit(_)) => 3,
            WorkbenchError::Core(Error::InvalidInput(_) | Error::DimensionMismatch { .. })
            | WorkbenchError::Io { .. }
            | WorkbenchError::Schema(_)
            | WorkbenchError::Usage(_) => 4,
        }
    }
}

impl From<serde_json::Error> for WorkbenchError {
    fn from(e: serde_json::Error) -> Self {
        WorkbenchError::Schema(e.to_string())
    }
}

pub type WbResult<T> = std::result::Result<T, WorkbenchError>;

/// The default selector limits, with the exhaustive-search limit taken from
/// [`EXACT_LIMIT_ENV`] when it holds a valid count.
pub fn config_from_env() -> WbResult<SelectionConfig> {
    let mut cfg = SelectionConfig::default();
    if let Ok(raw) = std::env::var(EXACT_LIMIT_ENV) {
        cfg.exact_max_points = raw
            .trim()
            .parse()
            .map_err(|_| WorkbenchError::Usage(format!("{EXACT_LIMIT_ENV}={raw:?} is not a count")))?;
    }
    Ok(cfg)
}
