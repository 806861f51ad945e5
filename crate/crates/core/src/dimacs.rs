//! DIMACS shortest-path (`.gr`) reading and writing.
//!
//! Input is read as an undirected simple graph: an arc and its reverse
//! describe the same edge, duplicate arcs keep the minimum weight, and
//! self-loops are dropped.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::weight::{VertexId, Weight, MAX_INPUT_WEIGHT};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed problem line: {text:?}")]
    BadProblemLine { line: usize, text: String },
    #[error("line {line}: second problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: arc before problem line")]
    ArcBeforeProblem { line: usize },
    #[error("line {line}: malformed arc line: {text:?}")]
    BadArc { line: usize, text: String },
    #[error("line {line}: vertex {id} outside 1..={n}")]
    VertexOutOfRange { line: usize, id: u64, n: usize },
    #[error("line {line}: negative weight {text}")]
    NegativeWeight { line: usize, text: String },
    #[error("line {line}: weight {text} exceeds {max}", max = MAX_INPUT_WEIGHT)]
    WeightTooLarge { line: usize, text: String },
    #[error("line {line}: unrecognized line {text:?}")]
    UnknownLine { line: usize, text: String },
    #[error("no problem line")]
    MissingProblemLine,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph, DimacsError> {
    let mut graph: Option<Graph> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut fields = line.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if graph.is_some() {
                    return Err(DimacsError::DuplicateProblemLine { line: lineno });
                }
                let bad = || DimacsError::BadProblemLine {
                    line: lineno,
                    text: line.clone(),
                };
                let rest: Vec<&str> = fields.collect();
                if rest.len() != 3 || rest[0] != "sp" {
                    return Err(bad());
                }
                let n: usize = rest[1].parse().map_err(|_| bad())?;
                let _arcs: u64 = rest[2].parse().map_err(|_| bad())?;
                if n >= u32::MAX as usize {
                    return Err(bad());
                }
                graph = Some(Graph::new(n));
            }
            "a" => {
                let g = graph
                    .as_mut()
                    .ok_or(DimacsError::ArcBeforeProblem { line: lineno })?;
                let rest: Vec<&str> = fields.collect();
                if rest.len() != 3 {
                    return Err(DimacsError::BadArc {
                        line: lineno,
                        text: line.clone(),
                    });
                }
                let u = parse_id(rest[0], lineno, g.n_original(), &line)?;
                let v = parse_id(rest[1], lineno, g.n_original(), &line)?;
                let w = parse_weight(rest[2], lineno, &line)?;
                if u != v {
                    g.insert_min_edge(u, v, w)?;
                }
            }
            _ => {
                return Err(DimacsError::UnknownLine {
                    line: lineno,
                    text: line.clone(),
                })
            }
        }
    }
    graph.ok_or(DimacsError::MissingProblemLine)
}

pub fn parse_dimacs_str(text: &str) -> Result<Graph, DimacsError> {
    parse_dimacs(text.as_bytes())
}

fn parse_id(field: &str, line: usize, n: usize, text: &str) -> Result<VertexId, DimacsError> {
    let id: u64 = field.parse().map_err(|_| DimacsError::BadArc {
        line,
        text: text.to_string(),
    })?;
    if id == 0 || id > n as u64 {
        return Err(DimacsError::VertexOutOfRange { line, id, n });
    }
    Ok(VertexId::new(id as u32))
}

fn parse_weight(field: &str, line: usize, text: &str) -> Result<Weight, DimacsError> {
    let digits = field.strip_prefix('+').unwrap_or(field);
    if let Some(rest) = field.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DimacsError::NegativeWeight {
                line,
                text: field.to_string(),
            });
        }
    }
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DimacsError::BadArc {
            line,
            text: text.to_string(),
        });
    }
    match digits.parse::<u64>() {
        Ok(w) if w <= MAX_INPUT_WEIGHT => Ok(Weight::new(w)),
        _ => Err(DimacsError::WeightTooLarge {
            line,
            text: field.to_string(),
        }),
    }
}

/// Writes `g` in DIMACS form: one tool comment, the problem line counting
/// directed arcs, then both arcs of every edge in ascending `(u, v)` order.
///
/// Absent vertices keep their id slots, so the problem line reports
/// `n_original`.
pub fn write_dimacs<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    writeln!(out, "c generated by apsp-core {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "p sp {} {}", g.n_original(), 2 * g.edge_count())?;
    for u in g.vertices() {
        for (v, w) in g.neighbors(u) {
            writeln!(out, "a {} {} {}", u, v, w)?;
        }
    }
    Ok(())
}

pub fn write_dimacs_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    #[test]
    fn symmetric_arcs_make_one_edge() {
        let g = parse_dimacs_str("p sp 2 1\na 1 2 7\na 2 1 7").unwrap();
        assert_eq!(g.n_original(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight(v(1), v(2)).unwrap(), Weight::new(7));
    }

    #[test]
    fn duplicates_keep_minimum() {
        let g = parse_dimacs_str("p sp 3 3\na 1 2 4\na 1 2 3\na 2 3 1").unwrap();
        assert_eq!(g.edge_weight(v(1), v(2)).unwrap(), Weight::new(3));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn single_vertex() {
        let g = parse_dimacs_str("p sp 1 0").unwrap();
        assert_eq!(g.n_original(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_blank_lines_and_loops() {
        let g = parse_dimacs_str("c hello\n\np sp 2 3\nc mid\na 1 1 5\na 1 2 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_dimacs_str("p sp x 1"),
            Err(DimacsError::BadProblemLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p xx 2 1"),
            Err(DimacsError::BadProblemLine { .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 3 1"),
            Err(DimacsError::VertexOutOfRange { line: 2, id: 3, n: 2 })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 2 -4"),
            Err(DimacsError::NegativeWeight { .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 2 4294967296"),
            Err(DimacsError::WeightTooLarge { .. })
        ));
        assert!(parse_dimacs_str("p sp 2 1\na 1 2 4294967295").is_ok());
        assert!(matches!(
            parse_dimacs_str("a 1 2 3\np sp 2 1"),
            Err(DimacsError::ArcBeforeProblem { line: 1 })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\np sp 2 1"),
            Err(DimacsError::DuplicateProblemLine { line: 2 })
        ));
        assert!(matches!(parse_dimacs_str("c only"), Err(DimacsError::MissingProblemLine)));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\nx 1 2"),
            Err(DimacsError::UnknownLine { .. })
        ));
    }

    #[test]
    fn write_format() {
        let g = parse_dimacs_str("p sp 2 1\na 1 2 7").unwrap();
        let text = write_dimacs_string(&g);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("c "));
        assert_eq!(&lines[1..], &["p sp 2 2", "a 1 2 7", "a 2 1 7"]);

        let empty = write_dimacs_string(&Graph::new(3));
        assert_eq!(empty.lines().skip(1).collect::<Vec<_>>(), vec!["p sp 3 0"]);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..30, raw in proptest::collection::vec((1u32..30, 1u32..30, 0u64..5000), 0..80)) {
            let mut g = Graph::new(n);
            for (a, b, w) in raw {
                let (a, b) = ((a - 1) % n as u32 + 1, (b - 1) % n as u32 + 1);
                if a != b {
                    g.insert_min_edge(v(a), v(b), Weight::new(w)).unwrap();
                }
            }
            let back = parse_dimacs_str(&write_dimacs_string(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
