//! The engine's error type.

use thiserror::Error;

/// Everything that can go wrong in a lattice computation, a flip, or the
/// stable-reduction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown curve label {0:?}")]
    MissingCurve(String),
    #[error("unknown component {0:?}")]
    MissingComponent(String),
    #[error("intersection of {0:?} and {1:?} is not tracked (curves on different components meet only through gluing records)")]
    UntrackedIntersection(String, String),
    #[error("inconsistent incidence: {0}")]
    InconsistentIncidence(String),
    #[error("not a contractible chain: {0}")]
    NotContractibleChain(String),
    #[error("curve {0:?} is not a (-1)-curve in the smooth locus")]
    NotMinusOne(String),
    #[error("flip precondition failed: {0}")]
    FlipPreconditionFailed(String),
    #[error("unsupported contraction: {0}")]
    UnsupportedContraction(String),
    #[error("extremal rays of component {0:?} cannot be derived from tracked curves")]
    ConeUnknown(String),
    #[error("configuration is not in the genus-4 case list: {0}")]
    NotInGenus4List(String),
    #[error("divisor singularity exceeds the multiplicity bound: delta = {0} > 2")]
    ExceedsMultiplicityBound(u32),
    #[error("record is not the toric chain row: {0}")]
    NotToricChain(String),
    #[error("orbifold node order {0} is not supported (only 1 and 3 occur)")]
    UnsupportedOrbifoldOrder(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("label {0:?} is already in use")]
    DuplicateLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
