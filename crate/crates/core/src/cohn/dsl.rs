//! The element DSL.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := scalar ('*' product)? | product
//! product := factor ('.' factor)*
//! factor  := ident '^'? | '(' expr ')' '^'?
//! scalar  := digits ('/' digits)?
//! ```
//!
//! Identifiers name vertices or edges; `e^` is the ghost edge `e*`, and
//! `(x)^` applies the involution. A bare scalar `k` stands for `k·1`.
//! Example: `3/2 * e1.e2 . (f1)^ + v`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::Element;
use crate::graph::Graph;
use crate::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// `column` is 1-based.
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown id `{id}`")]
    UnknownId { column: usize, id: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = pos;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            out.push((start, Tok::Ident(text[start..end].to_string())));
        } else if c.is_ascii_digit() {
            let start = pos;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            let n: BigInt = text[start..end].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if "+-*/.^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                column: pos + 1,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    graph: &'a Arc<Graph>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(p, _)| p) + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar(&mut self) -> Result<Rational, ParseError> {
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.error("expected a number");
        };
        self.pos += 1;
        if self.eat('/') {
            let Some(Tok::Num(d)) = self.peek().cloned() else {
                return self.error("expected a denominator");
            };
            if d.is_zero() {
                return self.error("zero denominator");
            }
            self.pos += 1;
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        if matches!(self.peek(), Some(Tok::Num(_))) {
            let k = self.scalar()?;
            if self.eat('*') {
                return Ok(self.product()?.scale(&k));
            }
            return Ok(Element::unit(self.graph).scale(&k));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('.') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let column = self.column();
        let base = match self.peek().cloned() {
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if let Some(v) = self.graph.vertex_id(&id) {
                    Element::vertex(self.graph, v)
                } else if let Some(e) = self.graph.edge_id(&id) {
                    Element::edge(self.graph, e)
                } else {
                    return Err(ParseError::UnknownId { column, id });
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                inner
            }
            Some(_) => return self.error("expected an identifier or `(`"),
            None => return self.error("unexpected end of input"),
        };
        Ok(if self.eat('^') { base.star() } else { base })
    }
}

/// Parses an element over `graph`; see the module docs for the grammar.
pub fn parse_element(graph: &Arc<Graph>, text: &str) -> Result<Element, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        graph,
        toks,
        pos: 0,
        end: text.len(),
    };
    let x = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.error("trailing input");
    }
    Ok(x)
}
