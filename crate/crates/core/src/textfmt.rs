//! Shared plumbing for the line-oriented text formats: UTF-8, `#` comments,
//! blank lines ignored, errors carry 1-based line numbers.

use std::fmt;

/// A text-format error pointing at a 1-based line; line 0 marks a
/// whole-file problem such as a missing required line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl fmt::Display) -> ParseError {
        ParseError {
            line,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// Yields `(line_number, trimmed_content)` for every line that is neither
/// blank nor a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Yields `(line_number, comment_body)` for every `#` comment line, with the
/// leading marker and surrounding whitespace removed.
pub(crate) fn comment_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, line)| line.starts_with('#'))
        .map(|(n, line)| (n, line.trim_start_matches('#').trim()))
}

/// Splits `key: value`, returning the value when the key matches.
pub(crate) fn keyed_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    let rest = rest.strip_prefix(':')?;
    Some(rest.trim())
}
