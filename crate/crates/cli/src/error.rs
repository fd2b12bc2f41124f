use dioph_core::bounds::BoundsError;
use dioph_core::numerics::NumericsError;
use dioph_core::pgn::PgnError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed arguments or configuration.
    #[error("{0}")]
    Usage(String),
    /// Inputs outside the domain of a formula, or a violated hypothesis.
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
    #[error("{0}")]
    Numeric(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
    #[error("{failed} check(s) failed")]
    VerifyFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Domain { .. } => 3,
            CliError::Numeric(_) => 4,
            CliError::VerifyFailed { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain { kind, .. } => kind,
            CliError::Numeric(_) => "NumericFailure",
            CliError::Io { .. } => "IoError",
            CliError::VerifyFailed { .. } => "VerifyFailed",
        }
    }

    /// One-line JSON object `{"error": kind, "message": ...}`.
    pub fn to_json(&self) -> String {
        let kind = serde_json::Value::String(self.kind().to_string());
        let msg = serde_json::Value::String(self.to_string());
        format!("{{\"error\":{kind},\"message\":{msg}}}")
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        if e.is_numeric_failure() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Domain {
                kind: e.kind(),
                message: e.to_string(),
            }
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<PgnError> for CliError {
    fn from(e: PgnError) -> Self {
        let kind = match &e {
            PgnError::RationalDependence { .. } => "RationalDependence",
            PgnError::InsufficientRank { .. } => "InsufficientRank",
            PgnError::InsufficientData(_) => "InsufficientData",
            PgnError::InvalidTarget(_) => "InvalidTarget",
            PgnError::Domain(_) => "DomainError",
            PgnError::Bounds(b) => return b.clone().into(),
            PgnError::Numerics(n) => return n.clone().into(),
        };
        CliError::Domain {
            kind,
            message: e.to_string(),
        }
    }
}
