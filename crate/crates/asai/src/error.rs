use thiserror::Error;

/// Errors shared across the crate. Messages for precondition failures are
/// stable strings that the CLI forwards verbatim.
#[derive(Debug, Error)]
pub enum AsaiError {
    #[error("gauss sum requires primitive character")]
    NonPrimitiveCharacter,

    #[error("insufficient eigenvalue data for prime {0}")]
    InsufficientEigenData(u64),

    #[error("form not ordinary at {0}")]
    NotOrdinary(u64),

    #[error("use imprimitive reconstruction for ramified prime {0}")]
    RamifiedPrime(u64),

    #[error("reconstruction failed at {0}: no recurrence of order <= {1}")]
    ReconstructionFailed(u64, usize),

    #[error("inconsistent local data at {0}: primitive factor does not divide")]
    InconsistentLocalData(u64),

    #[error("outside convergence region: require Re(s) > {0}")]
    OutsideConvergence(f64),

    #[error("norm relation failed at level {0}")]
    NormRelationFailed(usize),

    #[error("insufficient tower depth: need level {0}, have {1}")]
    InsufficientTowerDepth(usize, usize),

    #[error("ordinary projector did not stabilise; raise p-adic precision")]
    ProjectorPrecision,

    #[error("evaluation at a declared pole of a pseudo-measure")]
    PseudoMeasurePole,

    #[error("exact path requires character values in Q (order <= 2); got order {0}")]
    NonRationalCharacter(usize),

    #[error("no p-adic place of residue degree 1 over {0} for this coefficient field")]
    NoPadicPlace(u64),

    #[error("{0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("bad input file: {0}")]
    BadFile(String),
}

pub type Result<T> = std::result::Result<T, AsaiError>;

impl AsaiError {
    pub fn pre(msg: impl Into<String>) -> Self {
        AsaiError::Precondition(msg.into())
    }
}
