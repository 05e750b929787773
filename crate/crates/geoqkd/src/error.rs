use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by validation, encoding and decoding.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("state vector has zero norm")]
    ZeroVector,
    #[error("amplitude is not finite")]
    NonFinite,
    #[error("dimension {0} is below the minimum of 2")]
    DimTooSmall(usize),
    #[error("matrix is not unitary within tolerance {tol}: max deviation {max_dev}")]
    NotUnitary { tol: f64, max_dev: f64 },
    #[error("matrix is not Hermitian within tolerance {tol}: max deviation {max_dev}")]
    NotHermitian { tol: f64, max_dev: f64 },
    #[error("matrix is not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },
    #[error("generator is not an involution (G^2 != I), max deviation {max_dev}")]
    NotInvolution { max_dev: f64 },
    #[error("axis is not a unit vector (norm {norm})")]
    NotUnitAxis { norm: f64 },
    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },
    #[error("tangent vector is not orthogonal to its base ray (|<psi|v>| = {overlap})")]
    NotHorizontal { overlap: f64 },
    #[error("gradient vanishes at this point; normal/tangential decomposition is degenerate")]
    DegenerateDecomposition,
    #[error("invalid thresholds: require 0 < eps_tan < eps_norm, got eps_tan={eps_tan}, eps_norm={eps_norm}")]
    InvalidThresholds { eps_tan: f64, eps_norm: f64 },
    #[error("invalid encoder config: {reason}")]
    InvalidEncoderConfig { reason: String },
    #[error("encode walk leaves window [{j_min}, {j_max}] at step {step} (index {index})")]
    EncodeRange {
        step: usize,
        index: i64,
        j_min: i64,
        j_max: i64,
    },
    #[error("state {position} is not within tolerance of any family state")]
    DecodeMismatch { position: usize },
    #[error("trajectory is undecodable with this key: {erasures} of {steps} steps are erasures")]
    Undecodable { erasures: usize, steps: usize },
    #[error("state is not an eigenstate of the requested basis observable")]
    NotEigenstate,
    #[error("invalid key: {reason}")]
    InvalidKey { reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
