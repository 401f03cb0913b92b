use std::path::PathBuf;

/// Errors surfaced by dataset-level operations (storage, planning, joins).
///
/// Kernel-level misuse (mismatched dimensions, too many corner dimensions)
/// panics instead; those are programming errors, not recoverable states.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("duplicate partition id `{0}`")]
    DuplicatePartitionId(String),

    #[error("unknown partition id `{0}`")]
    UnknownPartition(String),

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("invalid generator spec: {0}")]
    InvalidGenerator(String),

    #[error("partition `{id}`: {reason}")]
    PartitionData { id: String, reason: String },

    #[error("dataset mismatch: {0}")]
    DatasetMismatch(String),

    /// The proximity relation is a strict partial order, so a cycle can only
    /// arise from inconsistent floating-point evaluations of the pair test.
    #[error("proximity order contains a cycle involving `{0}`")]
    CycleDetected(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
