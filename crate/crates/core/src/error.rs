use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("EGF not polynomial-coefficient: {0}")]
    InexactDivision(String),

    #[error("series variable mismatch: `{0}` vs `{1}`")]
    SeriesVarMismatch(String, String),

    #[error("series variable `{0}` appears inside a coefficient")]
    SeriesVarInCoefficient(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate rule for symbol `{0}`")]
    DuplicateRule(String),

    #[error("strict grammar `{grammar}` has no rule for symbol `{symbol}`")]
    UnruledSymbol { grammar: String, symbol: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("n = {n} outside the valid range {range}")]
    OutOfRange { n: usize, range: String },

    #[error("{0}")]
    InvalidRequest(String),

    #[error("statistic `{stat}` is not defined for the {family} family")]
    StatFamilyMismatch { stat: String, family: String },
}

impl Error {
    pub(crate) fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }

    /// True when the request itself was malformed, as opposed to a
    /// well-formed request whose computation failed.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DuplicateRule(_)
                | Error::Unknown { .. }
                | Error::OutOfRange { .. }
                | Error::InvalidRequest(_)
                | Error::StatFamilyMismatch { .. }
        )
    }
}
