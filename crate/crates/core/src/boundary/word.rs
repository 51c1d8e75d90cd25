//! Reduced words in the free group on the edges.

use std::fmt;

use crate::graph::{EdgeId, Graph, Path, VertexId};

/// A letter `e` or `e⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: EdgeId,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }
}

/// A reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Shortlex, so the identity comes first.
impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `t = a b⁻¹` with `a`, `b` paths and `rng(a) = rng(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordShape {
    Identity,
    /// `a b⁻¹` with `a` nonempty (`b` possibly a vertex).
    Forward { a: Path, b: Path },
    /// `b⁻¹` with `b` nonempty.
    Backward { b: Path },
    /// Anything else: `U_t` is empty.
    Degenerate,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn edge(e: EdgeId) -> Self {
        FreeWord {
            letters: vec![Letter { edge: e, inverse: false }],
        }
    }

    pub fn edge_inv(e: EdgeId) -> Self {
        FreeWord {
            letters: vec![Letter { edge: e, inverse: true }],
        }
    }

    /// The word of a path (identity for vertices).
    pub fn path(p: &Path) -> Self {
        FreeWord {
            letters: p
                .edges()
                .iter()
                .map(|&e| Letter { edge: e, inverse: false })
                .collect(),
        }
    }

    /// `a b⁻¹`.
    pub fn from_paths(a: &Path, b: &Path) -> Self {
        Self::path(a).mul(&Self::path(b).inverse())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Positive letters minus inverse letters.
    pub fn degree(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn shape(&self, graph: &Graph) -> WordShape {
        if self.letters.is_empty() {
            return WordShape::Identity;
        }
        let split = self.letters.iter().position(|l| l.inverse).unwrap_or(self.letters.len());
        if self.letters[split..].iter().any(|l| !l.inverse) {
            return WordShape::Degenerate;
        }
        let a_edges: Vec<EdgeId> = self.letters[..split].iter().map(|l| l.edge).collect();
        let b_edges: Vec<EdgeId> = self.letters[split..].iter().rev().map(|l| l.edge).collect();
        let a = (!a_edges.is_empty()).then(|| Path::from_edges(graph, a_edges));
        let b = (!b_edges.is_empty()).then(|| Path::from_edges(graph, b_edges));
        match (a, b) {
            (Some(Some(a)), None) => {
                let b = Path::vertex(a.rng(graph));
                WordShape::Forward { a, b }
            }
            (Some(Some(a)), Some(Some(b))) if a.rng(graph) == b.rng(graph) => WordShape::Forward { a, b },
            (None, Some(Some(b))) => WordShape::Backward { b },
            _ => WordShape::Degenerate,
        }
    }

    /// All reduced words of length `1..=n` in shortlex order.
    pub fn all_up_to(graph: &Graph, n: usize) -> Vec<FreeWord> {
        let alphabet: Vec<Letter> = graph
            .edges()
            .flat_map(|e| {
                [
                    Letter { edge: e, inverse: false },
                    Letter { edge: e, inverse: true },
                ]
            })
            .collect();
        let mut level = vec![FreeWord::identity()];
        let mut out = Vec::new();
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &level {
                for &l in &alphabet {
                    if w.letters.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(FreeWord { letters });
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    /// Words `a b⁻¹` (nonempty `U_t`) with `|a| + |b| ≤ n`, excluding the
    /// identity.
    pub fn with_nonempty_domain(graph: &Graph, n: usize) -> Vec<FreeWord> {
        let paths = graph.paths_up_to(n);
        let mut out = Vec::new();
        for a in &paths {
            for b in &paths {
                if a.len() + b.len() > n || a.rng(graph) != b.rng(graph) {
                    continue;
                }
                let last_a = a.last_edge();
                if last_a.is_some() && last_a == b.last_edge() {
                    continue;
                }
                if a.is_vertex() && b.is_vertex() {
                    continue;
                }
                out.push(Self::from_paths(a, b));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph }
    }

    /// Parses `e.f^-1` (letters separated by `.`); the empty string or `1`
    /// is the identity.
    pub fn parse(graph: &Graph, text: &str) -> Result<FreeWord, String> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        for part in text.split('.') {
            let part = part.trim();
            let (name, inverse) = match part.strip_suffix("^-1") {
                Some(n) => (n.trim(), true),
                None => (part, false),
            };
            let edge = graph.edge_id(name).ok_or_else(|| format!("unknown edge `{name}`"))?;
            letters.push(Letter { edge, inverse });
        }
        Ok(FreeWord::from_letters(letters))
    }

    /// The vertex a trivial-shape word is anchored at, if any.
    pub fn anchor(&self, graph: &Graph) -> Option<VertexId> {
        match self.shape(graph) {
            WordShape::Forward { a, .. } => Some(a.src()),
            WordShape::Backward { b } => Some(b.rng(graph)),
            _ => None,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a FreeWord,
    graph: &'a Graph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(self.graph.edge_name(l.edge))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
