//! Shared helpers for the line-oriented text formats (`.ecg`, `.fam`, `.boxf`).
//!
//! All formats are canonical: a file is accepted only if serializing the parsed
//! value reproduces it byte for byte, so the parsers reject leading zeros,
//! repeated spaces, CR characters and a missing final newline.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column number.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// A single line of input with its 1-based number.
#[derive(Debug, Clone, Copy)]
pub struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    pub fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, column, message)
    }

    /// Splits on single spaces, returning each token with its 1-based column.
    pub fn tokens(&self) -> Result<Vec<(usize, &'a str)>, ParseError> {
        let mut out = Vec::new();
        let mut col = 1;
        for tok in self.text.split(' ') {
            if tok.is_empty() {
                return Err(self.error(col, "empty token (leading, trailing or repeated space)"));
            }
            out.push((col, tok));
            col += tok.len() + 1;
        }
        Ok(out)
    }

    /// Expects `<keyword> <args...>` and returns the argument tokens.
    pub fn keyword(&self, keyword: &str) -> Result<Vec<(usize, &'a str)>, ParseError> {
        let toks = self.tokens()?;
        if toks[0].1 != keyword {
            return Err(self.error(1, format!("expected `{keyword}`, found `{}`", toks[0].1)));
        }
        Ok(toks[1..].to_vec())
    }
}

/// Splits a document into lines, insisting on LF endings and a final newline.
pub fn lines(input: &str) -> Result<Vec<Line<'_>>, ParseError> {
    if input.is_empty() {
        return Err(ParseError::new(1, 1, "empty input"));
    }
    let body = match input.strip_suffix('\n') {
        Some(body) => body,
        None => {
            let line = input.matches('\n').count() + 1;
            let col = input.rsplit('\n').next().map_or(0, str::len) + 1;
            return Err(ParseError::new(line, col, "missing final newline"));
        }
    };
    let mut out = Vec::new();
    for (i, text) in body.split('\n').enumerate() {
        if let Some(pos) = text.find('\r') {
            return Err(ParseError::new(i + 1, pos + 1, "CR character (use LF line endings)"));
        }
        if text.is_empty() {
            return Err(ParseError::new(i + 1, 1, "empty line"));
        }
        out.push(Line { number: i + 1, text });
    }
    Ok(out)
}

/// Parses a canonical decimal natural number (no sign, no leading zeros).
pub fn parse_nat(line: &Line<'_>, column: usize, tok: &str) -> Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.error(column, format!("expected a natural number, found `{tok}`")));
    }
    if tok.len() > 1 && tok.starts_with('0') {
        return Err(line.error(column, format!("leading zero in `{tok}`")));
    }
    tok.parse()
        .map_err(|_| line.error(column, format!("number `{tok}` out of range")))
}

/// Parses a comma-separated, strictly ascending index list. The empty string
/// is the empty list when `allow_empty` is set.
pub fn parse_index_list(
    line: &Line<'_>,
    column: usize,
    tok: &str,
    allow_empty: bool,
) -> Result<Vec<usize>, ParseError> {
    if tok.is_empty() {
        return if allow_empty {
            Ok(Vec::new())
        } else {
            Err(line.error(column, "empty index list"))
        };
    }
    let mut out: Vec<usize> = Vec::new();
    let mut col = column;
    for part in tok.split(',') {
        let value = parse_nat(line, col, part)?;
        if let Some(&prev) = out.last() {
            if value <= prev {
                return Err(line.error(col, "indices must be strictly ascending"));
            }
        }
        out.push(value);
        col += part.len() + 1;
    }
    Ok(out)
}

pub fn join_indices(items: &[usize]) -> String {
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn expect_count(line: &Line<'_>, args: &[(usize, &str)], n: usize) -> Result<(), ParseError> {
    if args.len() != n {
        let col = args.get(n).map_or(line.text.len() + 1, |a| a.0);
        return Err(line.error(col, format!("expected {n} argument(s), found {}", args.len())));
    }
    Ok(())
}
