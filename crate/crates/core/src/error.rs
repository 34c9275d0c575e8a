use thiserror::Error;

use crate::numerics::NumericsError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid degrees: {0}")]
    Degrees(String),
    #[error("pade-type factor must have degree {expected}, got {got}")]
    SelectorDegree { expected: usize, got: usize },
    #[error("telescoping identity violated at n = {n}: coefficient {k} is {value:e}")]
    TelescopeViolated { n: usize, k: usize, value: f64 },
    #[error("insufficient data: need {needed} nonzero tail values, have {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("compact fully excluded: no sample point survives the exclusion disks")]
    CompactExcluded,
    #[error("{0} is not a pole of any component")]
    NotAPole(String),
    #[error("n = {n} is outside the row range {lo}..={hi}")]
    OutOfRange { n: usize, lo: usize, hi: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
