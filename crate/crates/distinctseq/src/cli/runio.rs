//! Input parsing for the `run` subcommand and JSON rendering of outcomes.
//!
//! Sequence format: `n: v1 v2 ... vn` (ASCII, whitespace separated).
//! Matrix format: a first line holding n, then n lines of n integers.

use crate::algorithms::{
    backward_test, bucket_test, linear_test, matrix_test, Algorithm, InputError, Sequence,
    SquareMatrix, StopPosition, TestOutcome,
};
use serde_json::json;
use thiserror::Error;

/// Malformed-input diagnostic with a 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

/// Tokenizes one line, yielding (column, token).
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_usize(line_no: usize, col: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| err(line_no, col, format!("expected {what}, got `{token}`")))
}

/// Parses `n: v1 v2 ... vn`.
pub fn parse_sequence(text: &str) -> Result<Sequence, ParseError> {
    let first_line_no = text
        .lines()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| err(1, 1, "empty input"))?;
    let line = text.lines().nth(first_line_no).unwrap();
    let line_no = first_line_no + 1;
    let colon = line
        .find(':')
        .ok_or_else(|| err(line_no, line.len().max(1), "expected `n: v1 v2 ... vn`"))?;
    let head = &line[..colon];
    let head_tokens = tokens(head);
    if head_tokens.len() != 1 {
        return Err(err(line_no, 1, "expected a single length before `:`"));
    }
    let (col, tok) = head_tokens[0];
    let n = parse_usize(line_no, col, tok, "a positive length")?;
    let mut values = Vec::new();
    let tail = &line[colon + 1..];
    for (col, tok) in tokens(tail) {
        values.push((colon + 1 + col, tok));
    }
    // allow values to continue on following lines
    let mut parsed = Vec::new();
    for (col, tok) in values {
        parsed.push(parse_usize(line_no, col, tok, "an integer value")?);
    }
    for (extra_idx, extra_line) in text.lines().enumerate().skip(line_no) {
        for (col, tok) in tokens(extra_line) {
            parsed.push(parse_usize(extra_idx + 1, col, tok, "an integer value")?);
        }
    }
    Sequence::new(n, parsed).map_err(|e| input_error_position(e, text, line_no))
}

/// Parses the matrix format: first line n, then n rows of n integers.
pub fn parse_matrix(text: &str) -> Result<SquareMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (head_idx, head) = lines.next().ok_or_else(|| err(1, 1, "empty input"))?;
    let head_tokens = tokens(head);
    if head_tokens.len() != 1 {
        return Err(err(
            head_idx + 1,
            1,
            "expected the order n alone on the first line",
        ));
    }
    let n = parse_usize(
        head_idx + 1,
        head_tokens[0].0,
        head_tokens[0].1,
        "the order n",
    )?;
    if n == 0 {
        return Err(err(head_idx + 1, head_tokens[0].0, "n must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (idx, line) = lines.next().ok_or_else(|| {
            err(
                head_idx + 1 + rows.len() + 1,
                1,
                format!("expected {n} matrix rows, got {}", rows.len()),
            )
        })?;
        let toks = tokens(line);
        if toks.len() != n {
            return Err(err(
                idx + 1,
                toks.last().map(|t| t.0).unwrap_or(1),
                format!("expected {n} values in this row, got {}", toks.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (col, tok) in toks {
            row.push(parse_usize(idx + 1, col, tok, "an integer value")?);
        }
        rows.push(row);
    }
    if let Some((idx, _)) = lines.next() {
        return Err(err(idx + 1, 1, "unexpected extra content after the matrix"));
    }
    SquareMatrix::from_rows(rows).map_err(|e| input_error_position(e, text, head_idx + 1))
}

fn input_error_position(e: InputError, _text: &str, line: usize) -> ParseError {
    err(line, 1, e.to_string())
}

/// Runs one algorithm on parsed input.
pub fn run_input(algorithm: Algorithm, text: &str) -> Result<TestOutcome, ParseError> {
    match algorithm {
        Algorithm::Matrix => Ok(matrix_test(&parse_matrix(text)?)),
        Algorithm::Linear => Ok(linear_test(&parse_sequence(text)?)),
        Algorithm::Backward => Ok(backward_test(&parse_sequence(text)?)),
        Algorithm::Bucket => Ok(bucket_test(&parse_sequence(text)?)),
    }
}

/// JSON rendering of a test outcome.
pub fn outcome_json(algorithm: Algorithm, outcome: &TestOutcome) -> serde_json::Value {
    let stop = match outcome.stop {
        StopPosition::Element(k) => json!({ "kind": "element", "index": k }),
        StopPosition::MatrixCell {
            phase,
            line,
            element,
        } => json!({
            "kind": "cell",
            "phase": match phase {
                crate::algorithms::Phase::Row => "row",
                crate::algorithms::Phase::Column => "column",
            },
            "line": line,
            "element": element,
        }),
    };
    json!({
        "algorithm": algorithm.to_string(),
        "good": outcome.good,
        "comparisons": outcome.counters.comparisons,
        "assignments": outcome.counters.assignments,
        "total": outcome.counters.total(),
        "stop": stop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_round_trip() {
        let s = parse_sequence("3: 1 2 3").unwrap();
        assert_eq!(s.values(), &[1, 2, 3]);
        let s = parse_sequence("4: 1 2\n 3 4").unwrap();
        assert_eq!(s.n(), 4);
    }

    #[test]
    fn sequence_diagnostics_carry_position() {
        let e = parse_sequence("3: 1 x 3").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        let e = parse_sequence("3: 1 2").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("expected 3 values"));
        let e = parse_sequence("nope").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn matrix_round_trip_and_errors() {
        let m = parse_matrix("2\n1 2\n2 1\n").unwrap();
        assert_eq!(m.row(1), &[1, 2]);
        let e = parse_matrix("2\n1 2\n").unwrap_err();
        assert!(e.message.contains("expected 2 matrix rows"));
        let e = parse_matrix("2\n1 2 3\n2 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_matrix("2\n1 2\n2 9\n").unwrap_err();
        assert!(e.message.contains("outside"));
    }

    #[test]
    fn run_input_dispatches() {
        let out = run_input(Algorithm::Linear, "3: 1 2 3").unwrap();
        assert!(out.good);
        assert_eq!(out.counters.comparisons, 3);
        let out = run_input(Algorithm::Backward, "3: 2 2 1").unwrap();
        assert!(!out.good);
        assert_eq!(out.counters.comparisons, 1);
        let out = run_input(Algorithm::Matrix, "2\n1 2\n2 1").unwrap();
        assert!(out.good);
    }

    #[test]
    fn outcome_json_shape() {
        let out = run_input(Algorithm::Linear, "3: 1 2 3").unwrap();
        let v = outcome_json(Algorithm::Linear, &out);
        assert_eq!(v["good"], true);
        assert_eq!(v["comparisons"], 3);
        assert_eq!(v["stop"]["kind"], "element");
    }
}
