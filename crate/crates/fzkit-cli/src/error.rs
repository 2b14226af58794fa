use fzkit::okounkov::OkounkovError;
use fzkit::surface::SurfaceError;
use fzkit::threefold::ThreefoldError;

/// `Usage` exits with 2, everything else with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<ThreefoldError> for CliError {
    fn from(e: ThreefoldError) -> CliError {
        match e {
            ThreefoldError::BadParams(_) | ThreefoldError::OutOfRange { .. } | ThreefoldError::Unsupported { .. } => {
                CliError::Usage(e.to_string())
            }
            ThreefoldError::Surface(s) => s.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> CliError {
        match e {
            SurfaceError::NotBig
            | SurfaceError::BadFlag(_)
            | SurfaceError::UnknownCurve(_)
            | SurfaceError::Length { .. }
            | SurfaceError::InvalidModel(_)
            | SurfaceError::Incomplete { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<OkounkovError> for CliError {
    fn from(e: OkounkovError) -> CliError {
        match e {
            OkounkovError::OutOfRange { .. } | OkounkovError::Unsupported { .. } => CliError::Usage(e.to_string()),
            OkounkovError::Threefold(t) => t.into(),
            OkounkovError::Surface(s) => s.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}
