use thiserror::Error;

/// Everything that ends a run before a verdict: exit code 2, or 3 for
/// [`CliError::Oracle`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },

    #[error("invalid JSON at byte {offset}: {message}")]
    Json { offset: usize, message: String },

    #[error("{field}: syntax error at byte {offset}: {message}")]
    Expression { field: String, offset: usize, message: String },

    #[error("{field}: {message}")]
    Validation { field: String, message: String },

    #[error("oracle disagreement: {0}")]
    Oracle(String),
}

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Attaches a document path to a library error.
    pub fn at(field: impl Into<String>, e: imcalc::Error) -> Self {
        let field = field.into();
        match e {
            imcalc::Error::Syntax { offset, message } => CliError::Expression { field, offset, message },
            imcalc::Error::OracleDisagreement(m) => CliError::Oracle(m),
            other => CliError::Validation {
                field,
                message: other.to_string(),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Expression { .. } => "syntax",
            CliError::Validation { .. } => "validation",
            CliError::Oracle(_) => "oracle",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(_) => crate::EXIT_ORACLE,
            _ => crate::EXIT_INPUT,
        }
    }

    pub fn offset(&self) -> Option<usize> {
        match self {
            CliError::Json { offset, .. } | CliError::Expression { offset, .. } => Some(*offset),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            CliError::Expression { field, .. } | CliError::Validation { field, .. } => Some(field),
            _ => None,
        }
    }
}

/// Byte offset of a serde_json error position in `text`.
pub fn json_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}
