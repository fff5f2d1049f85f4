//! Line-precise errors for the TOML input formats.

use std::ops::Range;

use crate::error::Error;

/// 1-based line of a byte offset.
pub(crate) fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

pub(crate) fn at(source: &str, text: &str, span: Range<usize>, message: impl Into<String>) -> Error {
    Error::Format { source_name: source.to_string(), line: line_of(text, span.start), message: message.into() }
}

pub(crate) fn from_toml(source: &str, text: &str, err: toml::de::Error) -> Error {
    let line = err.span().map_or(1, |s| line_of(text, s.start));
    Error::Format { source_name: source.to_string(), line, message: err.message().to_string() }
}
