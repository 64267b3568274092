use thiserror::Error;

pub type Result<T> = std::result::Result<T, QssError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QssError {
    /// Malformed or inconsistent input (bad labels, wrong shapes, invariant violations).
    #[error("input error: {0}")]
    Input(String),

    /// A requested object exceeds the configured size guard.
    #[error("size error: {0}")]
    Size(String),

    /// An iterative routine failed to converge or a certificate could not be met.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The share-distribution matrix is not an isometry.
    #[error("encoding error: {0}")]
    Encoding(String),

    /// A scheme document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested coalition cannot recover the secret.
    #[error("recovery impossible: {0}")]
    RecoveryImpossible(String),
}

impl QssError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        QssError::Input(msg.into())
    }

    /// Prefixes the message with `ctx`, keeping the kind.
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            QssError::Input(m) => QssError::Input(format!("{ctx}: {m}")),
            QssError::Size(m) => QssError::Size(format!("{ctx}: {m}")),
            QssError::Numeric(m) => QssError::Numeric(format!("{ctx}: {m}")),
            QssError::Encoding(m) => QssError::Encoding(format!("{ctx}: {m}")),
            QssError::Parse(m) => QssError::Parse(format!("{ctx}: {m}")),
            QssError::RecoveryImpossible(m) => QssError::RecoveryImpossible(format!("{ctx}: {m}")),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> u8 {
        match self {
            QssError::Input(_) | QssError::Size(_) | QssError::Encoding(_) | QssError::Parse(_) => 2,
            QssError::RecoveryImpossible(_) => 1,
            QssError::Numeric(_) => 3,
        }
    }
}
