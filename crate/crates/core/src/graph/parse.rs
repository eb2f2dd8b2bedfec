use std::collections::HashSet;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: u64 },
    #[error("line {line}: duplicate edge {a}-{b}")]
    DuplicateEdge { line: usize, a: u64, b: u64 },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    IdOutOfRange { line: usize, id: u64, n: u64 },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Malformed { line, .. }
            | ParseError::Loop { line, .. }
            | ParseError::DuplicateEdge { line, .. }
            | ParseError::IdOutOfRange { line, .. } => Some(*line),
            ParseError::EdgeCount { .. } => None,
        }
    }
}

fn two_numbers(line_no: usize, text: &str) -> Result<(u64, u64), ParseError> {
    let malformed = |message: &str| ParseError::Malformed {
        line: line_no,
        message: message.into(),
    };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = it.next().ok_or_else(|| malformed("expected two integers"))?;
    if it.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| malformed("not a non-negative integer"))?;
    Ok((a, b))
}

/// Parses the edge-list document: a header line `n m`, then `m` lines `u v`
/// with `1 ≤ u, v ≤ n`. Blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        message: "missing header".into(),
    })?;
    let (n, m) = two_numbers(hline, header)?;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line, text) in lines {
        if edges.len() == m as usize {
            return Err(ParseError::Malformed {
                line,
                message: "more edges than declared".into(),
            });
        }
        let (a, b) = two_numbers(line, text)?;
        for id in [a, b] {
            if id == 0 || id > n {
                return Err(ParseError::IdOutOfRange { line, id, n });
            }
        }
        if a == b {
            return Err(ParseError::Loop { line, vertex: a });
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                line,
                a: key.0,
                b: key.1,
            });
        }
        edges.push(((a - 1) as usize, (b - 1) as usize));
    }
    if edges.len() != m as usize {
        return Err(ParseError::EdgeCount {
            expected: m as usize,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges_unchecked(n as usize, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn single_vertex() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn triangle() {
        let g = parse_graph("3 3\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g, named::complete(3));
    }

    #[test]
    fn duplicate_edge_names_line() {
        let err = parse_graph("2 2\n1 2\n1 2\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, a: 1, b: 2 });
        assert_eq!(err.line(), Some(3));
        assert!(matches!(
            parse_graph("2 2\n1 2\n2 1\n"),
            Err(ParseError::DuplicateEdge { line: 3, .. })
        ));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(parse_graph("2 1\n1 1"), Err(ParseError::Loop { line: 2, .. })));
        assert!(matches!(
            parse_graph("2 1\n1 3"),
            Err(ParseError::IdOutOfRange { line: 2, .. })
        ));
        assert!(matches!(parse_graph("3 2\n1 2"), Err(ParseError::EdgeCount { .. })));
        assert!(matches!(
            parse_graph("3 1\n1 x"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(parse_graph(""), Err(ParseError::Malformed { .. })));
    }

    #[test]
    fn round_trip() {
        let g = named::petersen();
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }
}
