use thiserror::Error;

/// Errors raised by constructors and engines. Validation failures are
/// reported through [`crate::validate::ValidationReport`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("GrouplikeNotInvertible: grouplike {key} has non-invertible value {value}")]
    GrouplikeNotInvertible { key: String, value: String },
    #[error("FiltrationNotExhaustive: {0} has no finite filtration degree")]
    FiltrationNotExhaustive(String),
    #[error("RuleNotFound: no rule for generator `{0}`")]
    RuleNotFound(String),
    #[error("grouplikes are not central in this bialgebra; pass it through the central quotient first (offending pair {0})")]
    NotCentral(String),
}

impl HopfError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        HopfError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors that come from malformed user input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            HopfError::Parse { .. } | HopfError::Construction(_) | HopfError::Config(_)
        )
    }
}

pub type Result<T, E = HopfError> = std::result::Result<T, E>;

/// Deserializes a JSON document, mapping syntax errors to line/column.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| HopfError::parse(e.line(), e.column(), e.to_string()))
}

/// Rejects names that would collide with the literal grammars.
pub fn check_name(kind: &str, name: &str) -> Result<()> {
    let bad = name.is_empty() || name.chars().any(|c| c.is_whitespace() || "()[]<>,;.*⊗|".contains(c));
    if bad {
        Err(HopfError::Construction(format!("invalid {kind} name `{name}`")))
    } else {
        Ok(())
    }
}
