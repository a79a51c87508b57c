//! Text formats for instances and colorings.
//!
//! Instance file: the first significant line holds the ground-set size n;
//! every following significant line holds one interval as "<left> <right>".
//! Blank lines are skipped and '#' starts a comment line. Coloring file: one
//! significant line per point, "<point> <color>" with points ascending from 1
//! and color 0 written explicitly.

use kscf_core::{Coloring, Error, IntervalFamily};
use std::fmt;

/// A format error, pointing at the offending 1-based line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Significant lines of the text: (1-based line number, trimmed content).
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, s)| !s.is_empty() && !s.starts_with('#'))
}

fn parse_two_fields(line: usize, content: &str, what: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = content.split_whitespace();
    let first = fields.next();
    let second = fields.next();
    if fields.next().is_some() {
        return Err(fail(line, format!("expected \"{what}\", found extra fields: {content:?}")));
    }
    match (first, second) {
        (Some(a), Some(b)) => {
            let a = a
                .parse()
                .map_err(|_| fail(line, format!("{what}: {a:?} is not a non-negative integer")))?;
            let b = b
                .parse()
                .map_err(|_| fail(line, format!("{what}: {b:?} is not a non-negative integer")))?;
            Ok((a, b))
        }
        _ => Err(fail(line, format!("expected \"{what}\", found {content:?}"))),
    }
}

/// Parses an instance file into a normalized family plus the number of
/// duplicate intervals that were removed.
pub fn parse_instance(text: &str) -> Result<(IntervalFamily, usize), ParseError> {
    let mut lines = significant_lines(text);
    let (n_line, n_text) = lines
        .next()
        .ok_or_else(|| fail(1, "missing ground-set size: the first line must hold n"))?;
    let n: usize = n_text
        .parse()
        .map_err(|_| fail(n_line, format!("ground-set size {n_text:?} is not an integer")))?;
    if n == 0 {
        return Err(fail(n_line, "ground-set size must be at least 1"));
    }

    let mut pairs = Vec::new();
    for (line, content) in lines {
        let (left, right) = parse_two_fields(line, content, "<left> <right>")?;
        if left < 1 || left > right || right > n {
            return Err(fail(
                line,
                format!("interval ({left}, {right}) is not within 1 <= left <= right <= {n}"),
            ));
        }
        pairs.push((left, right));
    }

    match IntervalFamily::normalize(n, &pairs) {
        Ok(result) => Ok(result),
        // Every line was validated above, so normalization cannot fail; keep
        // the error path honest anyway.
        Err(e) => Err(fail(1, e.to_string())),
    }
}

/// Renders a family in the instance format; `parse_instance` round-trips it
/// with zero duplicates.
pub fn emit_instance(family: &IntervalFamily) -> String {
    let mut out = format!("{}\n", family.n());
    for iv in family.iter() {
        out.push_str(&format!("{} {}\n", iv.left(), iv.right()));
    }
    out
}

/// Parses a coloring file for a ground set of n points. Every point must
/// appear exactly once, in ascending order.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ParseError> {
    let mut colors = Vec::with_capacity(n);
    let mut last_line = 1;
    for (line, content) in significant_lines(text) {
        last_line = line;
        let (point, color) = parse_two_fields(line, content, "<point> <color>")?;
        let expected = colors.len() + 1;
        if point != expected {
            return Err(fail(line, format!("expected point {expected}, found point {point}")));
        }
        if point > n {
            return Err(fail(line, format!("point {point} exceeds the ground-set size {n}")));
        }
        colors.push(color);
    }
    if colors.len() != n {
        return Err(fail(
            last_line,
            format!("coloring covers {} of {n} points", colors.len()),
        ));
    }
    Ok(Coloring::new(colors))
}

/// Renders a coloring, one "<point> <color>" line per point; color 0 is
/// written explicitly.
pub fn emit_coloring(coloring: &Coloring) -> String {
    let mut out = String::new();
    for (i, &c) in coloring.colors().iter().enumerate() {
        out.push_str(&format!("{} {}\n", i + 1, c));
    }
    out
}

/// Maps a library error to the diagnostic shown for bad command input.
pub fn input_error(e: &Error) -> String {
    format!("input error: {e}")
}
