//! Text forms for cylinder sets, functions and skew elements.
//!
//! ```text
//! set      := "∅" | piece (" ∪ " piece)*
//! piece    := "Z(" path [" \ {" edge ("," edge)* "}"] ")"
//! dfunc    := "0" | [rational " * "] piece (" + " ...)*
//! skew     := "0" | "(" dfunc ") δ_[" word "]" (" + " ...)*
//! ```
//!
//! Printing emits the canonical disjoint decomposition, so equal objects
//! print identically.

use std::sync::Arc;

use super::{BoundaryError, CylinderSet, DFunction, FreeWord, SkewElement};
use crate::graph::{EdgeId, Graph, Path};
use crate::scalar::{parse_rational, Field, Rational};

fn format_piece(graph: &Graph, beta: &Path, excluded: &[EdgeId]) -> String {
    if excluded.is_empty() {
        format!("Z({})", beta.display(graph))
    } else {
        let names: Vec<&str> = excluded.iter().map(|&e| graph.edge_name(e)).collect();
        format!("Z({} \\ {{{}}})", beta.display(graph), names.join(","))
    }
}

pub fn format_cylinder_set(set: &CylinderSet) -> String {
    let g = &**set.graph();
    let pieces: Vec<String> = set
        .pieces()
        .iter()
        .map(|(beta, excluded, _)| format_piece(g, beta, excluded))
        .collect();
    if pieces.is_empty() {
        "∅".to_string()
    } else {
        pieces.join(" ∪ ")
    }
}

pub fn format_dfunction<K: Field>(f: &DFunction<K>) -> String {
    let g = &**f.graph();
    let terms: Vec<String> = f
        .pieces()
        .iter()
        .map(|(beta, excluded, c)| format!("{c} * {}", format_piece(g, beta, excluded)))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn err(msg: impl Into<String>) -> BoundaryError {
    BoundaryError::Parse(msg.into())
}

fn parse_path(graph: &Graph, text: &str) -> Result<Path, BoundaryError> {
    let text = text.trim();
    if let Some(v) = graph.vertex_id(text) {
        return Ok(Path::vertex(v));
    }
    let edges = text
        .split('.')
        .map(|n| graph.edge_id(n.trim()).ok_or_else(|| err(format!("unknown vertex or edge `{}`", n.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    Path::from_edges(graph, edges).ok_or_else(|| err(format!("`{text}` is not a path")))
}

/// Parses `Z(β)` or `Z(β \ {e,f})`.
fn parse_piece(graph: &Arc<Graph>, text: &str) -> Result<CylinderSet, BoundaryError> {
    let text = text.trim();
    let inner = text
        .strip_prefix("Z(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(format!("expected `Z(...)`, found `{text}`")))?;
    let (path, excluded) = match inner.split_once('\\') {
        Some((p, rest)) => {
            let rest = rest.trim();
            let list = rest
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| err(format!("expected `{{...}}`, found `{rest}`")))?;
            let edges = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| graph.edge_id(n).ok_or_else(|| err(format!("unknown edge `{n}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            (p, edges)
        }
        None => (inner, Vec::new()),
    };
    let beta = parse_path(graph, path)?;
    let r = beta.rng(graph);
    if let Some(&bad) = excluded.iter().find(|&&e| graph.src(e) != r) {
        return Err(err(format!("edge `{}` does not leave the range of `{path}`", graph.edge_name(bad))));
    }
    Ok(CylinderSet::gen_cylinder(graph, &beta, &excluded))
}

pub fn parse_cylinder_set(graph: &Arc<Graph>, text: &str) -> Result<CylinderSet, BoundaryError> {
    let text = text.trim();
    let mut out = CylinderSet::empty(graph);
    if text == "∅" || text.is_empty() {
        return Ok(out);
    }
    for piece in text.split('∪') {
        out = out.union(&parse_piece(graph, piece)?);
    }
    Ok(out)
}

/// Splits on `sep` outside parentheses and brackets.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

pub fn parse_dfunction(graph: &Arc<Graph>, text: &str) -> Result<DFunction<Rational>, BoundaryError> {
    let text = text.trim();
    let mut out = DFunction::zero(graph);
    if text == "0" {
        return Ok(out);
    }
    for term in split_top(text, '+') {
        let term = term.trim();
        let (coeff, piece) = match term.split_once('*') {
            Some((c, p)) => (
                parse_rational(c).ok_or_else(|| err(format!("bad coefficient `{}`", c.trim())))?,
                p,
            ),
            None => (num_traits::One::one(), term),
        };
        let set = parse_piece(graph, piece)?;
        out = out.add(&set.indicator::<Rational>().scale(&coeff));
    }
    Ok(out)
}

pub fn parse_skew(graph: &Arc<Graph>, text: &str) -> Result<SkewElement, BoundaryError> {
    let text = text.trim();
    let mut out = SkewElement::zero(graph);
    if text == "0" {
        return Ok(out);
    }
    for term in split_top(text, '+') {
        let term = term.trim();
        let close = term
            .rfind(')')
            .filter(|_| term.starts_with('('))
            .ok_or_else(|| err(format!("expected `(f) δ_[t]`, found `{term}`")))?;
        let f = parse_dfunction(graph, &term[1..close])?;
        let rest = term[close + 1..].trim();
        let word = rest
            .strip_prefix("δ_[")
            .or_else(|| rest.strip_prefix("d_["))
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err(format!("expected `δ_[word]`, found `{rest}`")))?;
        let t = FreeWord::parse(graph, word).map_err(err)?;
        out = out.try_add(&SkewElement::term(t, f)?)?;
    }
    Ok(out)
}
