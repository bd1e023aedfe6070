//! Line-oriented parsing shared by the plain-text formats.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers, trimmed.
pub(crate) fn records(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `<prefix><n>` such as `p12`.
pub(crate) fn indexed(token: &str, prefix: &str, line: usize) -> Result<usize, ParseError> {
    token
        .strip_prefix(prefix)
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| ParseError::new(line, format!("expected {prefix}<index>, found `{token}`")))
}

pub(crate) fn number(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a number, found `{token}`")))
}
