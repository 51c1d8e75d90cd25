//! Line-oriented graph files.
//!
//! ```text
//! # comments run to the end of the line
//! vertex v
//! vertex w
//! edge e v w
//! X v
//! ```
//!
//! Directives may appear in any order; duplicate ids are rejected.

use thiserror::Error;

use super::{Graph, GraphError, RawGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
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

pub fn parse_raw_graph(text: &str) -> Result<RawGraph, FormatError> {
    let mut raw = RawGraph::default();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, directive)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        let expect = |n: usize| {
            if args.len() != n {
                Err(syntax(
                    lineno,
                    col,
                    format!("`{directive}` takes {n} argument(s), found {}", args.len()),
                ))
            } else {
                Ok(())
            }
        };
        for &(c, tok) in args {
            if !super::is_valid_id(tok) {
                return Err(syntax(lineno, c, format!("invalid identifier `{tok}`")));
            }
        }
        match directive {
            "vertex" => {
                expect(1)?;
                raw = raw.vertex(args[0].1);
            }
            "edge" => {
                expect(3)?;
                raw = raw.edge(args[0].1, args[1].1, args[2].1);
            }
            "X" => {
                expect(1)?;
                raw = raw.in_x(args[0].1);
            }
            other => {
                return Err(syntax(lineno, col, format!("unknown directive `{other}`")));
            }
        }
    }
    Ok(raw)
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    Ok(Graph::new(&parse_raw_graph(text)?)?)
}

/// Canonical text form: vertices, edges, then `X`, each in id order.
pub fn write_graph(graph: &Graph) -> String {
    let mut out = String::new();
    for v in graph.vertices() {
        out.push_str(&format!("vertex {}\n", graph.vertex_name(v)));
    }
    for e in graph.edges() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            graph.edge_name(e),
            graph.vertex_name(graph.src(e)),
            graph.vertex_name(graph.rng(e))
        ));
    }
    for v in graph.x_vertices() {
        out.push_str(&format!("X {}\n", graph.vertex_name(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_independent() {
        let a = parse_graph("X v\nedge e v w\nvertex w\nvertex v\n").unwrap();
        let b = parse_graph("vertex v # source\nvertex w\nedge e v w\nX v").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_graph(&write_graph(&a)).unwrap(), a);
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(matches!(
            parse_graph("vertex v\nvertex v\n"),
            Err(FormatError::Graph(GraphError::DuplicateId(_)))
        ));
        assert_eq!(
            parse_graph("vertex v\n  loop e v v\n"),
            Err(FormatError::Syntax {
                line: 2,
                column: 3,
                message: "unknown directive `loop`".into()
            })
        );
        assert!(matches!(
            parse_graph("edge e v\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("vertex v.w\n"),
            Err(FormatError::Syntax { column: 8, .. })
        ));
    }
}
