//! Text forms of group elements: 1-based disjoint-cycle notation for
//! permutations and comma-separated integer tuples for lattice vectors.

use std::fmt;

use num_bigint::BigInt;

use crate::group::{Backend, Element, IntVector, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    ZeroDegree,
    Empty,
    PointOutOfRange { point: String, degree: usize },
    RepeatedPoint(usize),
    Malformed(String),
    RankMismatch { expected: usize, found: usize },
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::ZeroDegree => f.write_str("degree must be at least 1"),
            ParseErrorKind::Empty => f.write_str("empty element"),
            ParseErrorKind::PointOutOfRange { point, degree } => {
                write!(f, "point {point} outside 1..={degree}")
            }
            ParseErrorKind::RepeatedPoint(p) => write!(f, "point {p} repeated"),
            ParseErrorKind::Malformed(msg) => f.write_str(msg),
            ParseErrorKind::RankMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
        }
    }
}

fn err(position: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { position, kind }
}

/// Parses a product of disjoint cycles such as `(1 2)(3 4 5)`.
///
/// Points are 1-based; spaces or commas separate them. `e` and `()` denote
/// the identity. Overlapping cycles are rejected rather than composed.
pub fn parse_cycle_notation(text: &str, degree: usize) -> Result<Permutation, ParseError> {
    if degree == 0 {
        return Err(err(0, ParseErrorKind::ZeroDegree));
    }
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(err(offset, ParseErrorKind::Empty));
    }
    if trimmed == "e" {
        return Ok(Permutation::identity(degree));
    }

    let bytes = text.as_bytes();
    let mut pos = offset;
    let mut used = vec![false; degree];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut saw_empty = false;
    let end = offset + trimmed.len();

    while pos < end {
        match bytes[pos] {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b'(' => {
                let open = pos;
                pos += 1;
                let mut cycle = Vec::new();
                loop {
                    while pos < end && matches!(bytes[pos], b' ' | b'\t' | b',') {
                        pos += 1;
                    }
                    if pos >= end {
                        return Err(err(open, ParseErrorKind::Malformed("unclosed '('".into())));
                    }
                    match bytes[pos] {
                        b')' => {
                            pos += 1;
                            break;
                        }
                        b'0'..=b'9' => {
                            let start = pos;
                            while pos < end && bytes[pos].is_ascii_digit() {
                                pos += 1;
                            }
                            let digits = &text[start..pos];
                            let point = digits
                                .parse::<usize>()
                                .ok()
                                .filter(|p| (1..=degree).contains(p))
                                .ok_or_else(|| {
                                    err(
                                        start,
                                        ParseErrorKind::PointOutOfRange {
                                            point: digits.to_string(),
                                            degree,
                                        },
                                    )
                                })?;
                            if std::mem::replace(&mut used[point - 1], true) {
                                return Err(err(start, ParseErrorKind::RepeatedPoint(point)));
                            }
                            cycle.push(point - 1);
                        }
                        other => {
                            return Err(err(
                                pos,
                                ParseErrorKind::Malformed(format!(
                                    "unexpected character '{}'",
                                    other as char
                                )),
                            ))
                        }
                    }
                }
                if cycle.is_empty() {
                    saw_empty = true;
                } else {
                    cycles.push(cycle);
                }
            }
            b')' => return Err(err(pos, ParseErrorKind::Malformed("unmatched ')'".into()))),
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(err(
                    pos,
                    ParseErrorKind::Malformed(format!("unexpected character '{ch}'")),
                ));
            }
        }
    }
    if saw_empty && !cycles.is_empty() {
        return Err(err(
            offset,
            ParseErrorKind::Malformed("empty cycle inside a product".into()),
        ));
    }
    Ok(Permutation::from_cycles(degree, &cycles)
        .expect("points validated as disjoint and in range"))
}

/// Parses `1,-2,3`, optionally wrapped in `(..)` or `[..]`.
pub fn parse_vector(text: &str, rank: usize) -> Result<IntVector, ParseError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')));
    let (body, base) = match inner {
        Some(body) => (body, offset + 1),
        None => (trimmed, offset),
    };
    if body.trim().is_empty() {
        if rank == 0 {
            return Ok(IntVector::zero(0));
        }
        return Err(err(offset, ParseErrorKind::Empty));
    }
    let mut entries = Vec::new();
    let mut start = 0;
    for piece in body.split(',') {
        let token = piece.trim();
        let at = base + start + (piece.len() - piece.trim_start().len());
        let value: BigInt = token.parse().map_err(|_| {
            err(
                at,
                ParseErrorKind::Malformed(format!("invalid integer '{token}'")),
            )
        })?;
        entries.push(value);
        start += piece.len() + 1;
    }
    if entries.len() != rank {
        return Err(err(
            offset,
            ParseErrorKind::RankMismatch {
                expected: rank,
                found: entries.len(),
            },
        ));
    }
    Ok(IntVector::new(entries))
}

/// Parses an element in the text form matching `backend`.
pub fn parse_element(text: &str, backend: Backend) -> Result<Element, ParseError> {
    match backend {
        Backend::FinitePermutation { degree } => {
            parse_cycle_notation(text, degree).map(Element::Perm)
        }
        Backend::FreeAbelian { rank } => {
            if text.trim() == "e" {
                return Ok(IntVector::zero(rank).into());
            }
            parse_vector(text, rank).map(Element::Vector)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition() {
        let p = parse_cycle_notation("(1 2)", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn identity_forms() {
        for text in ["e", " e ", "()", " ( ) "] {
            assert!(
                parse_cycle_notation(text, 4).unwrap().is_identity(),
                "{text}"
            );
        }
    }

    #[test]
    fn whitespace_and_commas() {
        let a = parse_cycle_notation("  ( 1,2 ,3 ) (4 5)", 5).unwrap();
        assert_eq!(a.to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn overlapping_cycles_rejected() {
        let e = parse_cycle_notation("(1 2)(2 3)", 3).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RepeatedPoint(2));
        assert_eq!(e.position, 6);
    }

    #[test]
    fn out_of_range_and_malformed() {
        let e = parse_cycle_notation("(1 4)", 3).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(matches!(e.kind, ParseErrorKind::PointOutOfRange { .. }));
        assert!(matches!(
            parse_cycle_notation("(0 1)", 3).unwrap_err().kind,
            ParseErrorKind::PointOutOfRange { .. }
        ));
        assert!(parse_cycle_notation("(1 2", 3).is_err());
        assert!(parse_cycle_notation("1 2)", 3).is_err());
        assert!(parse_cycle_notation("(1 x)", 3).is_err());
        assert!(parse_cycle_notation("()(1 2)", 3).is_err());
        assert!(parse_cycle_notation("", 3).is_err());
        assert_eq!(
            parse_cycle_notation("e", 0).unwrap_err().kind,
            ParseErrorKind::ZeroDegree
        );
    }

    #[test]
    fn vectors() {
        assert_eq!(
            parse_vector("1,-2", 2).unwrap(),
            IntVector::from(vec![1, -2])
        );
        assert_eq!(
            parse_vector("[3, 4]", 2).unwrap(),
            IntVector::from(vec![3, 4])
        );
        assert_eq!(parse_vector("(5)", 1).unwrap(), IntVector::from(vec![5]));
        assert!(parse_vector("1,2,3", 2).is_err());
        assert!(parse_vector("1,x", 2).is_err());
        assert_eq!(
            parse_element("e", Backend::FreeAbelian { rank: 2 }).unwrap(),
            IntVector::zero(2).into()
        );
    }
}
