use rowpade::series::SeriesError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed series specs.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<rowpade::Error> for CliError {
    fn from(e: rowpade::Error) -> Self {
        use rowpade::Error as E;
        let text = e.to_string();
        match e {
            E::Series(SeriesError::OpaqueConstant { .. }) => CliError::Numeric(text),
            E::Series(_) | E::Degrees(_) | E::SelectorDegree { .. } | E::OutOfRange { .. } => CliError::Usage(text),
            _ => CliError::Numeric(text),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        rowpade::Error::from(e).into()
    }
}

pub type CliResult<T> = Result<T, CliError>;
