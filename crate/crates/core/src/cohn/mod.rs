//! Elements of the relative Cohn path algebra `C_K^X(E)` in normal form.
//!
//! Every element is a finite combination of monomials `α β*` with
//! `rng(α) = rng(β)`. The linear basis used here forbids monomials whose
//! two paths share a last edge that is the *special* edge of a vertex in
//! `X` (the lexicographically largest edge it emits). The relation
//! `v = Σ_{e ∈ s⁻¹(v)} e e*` is solved for the special edge and used as a
//! rewrite rule; each rewrite shortens the monomial or replaces it with
//! monomials ending in non-special edges, so normalization terminates.

mod corner;
mod dsl;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::scalar::{Field, Rational};

pub use corner::{corner_spanning_monomials, CornerDescriptor};
pub use dsl::{parse_element, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("invalid corner: {0}")]
    InvalidCorner(String),
}

/// `α β*` with `rng(α) = rng(β)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    pub fn new(graph: &Graph, alpha: Path, beta: Path) -> Option<Self> {
        if alpha.rng(graph) != beta.rng(graph) {
            return None;
        }
        Some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `|α| - |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// Source of the monomial as a left factor: `s(α)`.
    pub fn left_vertex(&self) -> VertexId {
        self.alpha.src()
    }

    /// `s(β)`: the monomial is fixed by right multiplication with this vertex.
    pub fn right_vertex(&self) -> VertexId {
        self.beta.src()
    }

    pub fn is_normal(&self, graph: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => !(a == b && graph.is_special(a)),
            _ => true,
        }
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Product in the path calculus, before normalization.
    pub fn product(&self, graph: &Graph, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(graph, &self.beta) {
            let alpha = self.alpha.concat(graph, &rest)?;
            return Some(Monomial {
                alpha,
                beta: other.beta.clone(),
            });
        }
        if let Some(rest) = self.beta.strip_prefix(graph, &other.alpha) {
            let beta = other.beta.concat(graph, &rest)?;
            return Some(Monomial {
                alpha: self.alpha.clone(),
                beta,
            });
        }
        None
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            graph,
        }
    }
}

/// Ordered by total length, then `α`, then `β`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.alpha.len() + self.beta.len())
            .cmp(&(other.alpha.len() + other.beta.len()))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element-DSL rendering: `e1.e2.f1^.f2^` for `(e1 e2)(f2 f1)*`.
pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    graph: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.monomial;
        if m.alpha.is_vertex() && m.beta.is_vertex() {
            return f.write_str(self.graph.vertex_name(m.alpha.src()));
        }
        let mut first = true;
        for &e in m.alpha.edges() {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            f.write_str(self.graph.edge_name(e))?;
        }
        for &e in m.beta.edges().iter().rev() {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            write!(f, "{}^", self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// Generator kinds of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Vertex,
    Edge,
    GhostEdge,
}

/// A finite `K`-combination of normal monomials over a fixed graph.
#[derive(Clone)]
pub struct Element<K: Field = Rational> {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> PartialEq for Element<K> {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl<K: Field> Eq for Element<K> {}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn insert_term<K: Field>(terms: &mut BTreeMap<Monomial, K>, m: Monomial, k: K) {
    if k.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(k);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + k;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

/// Adds `k·m` to `terms`, rewriting `m` into normal form first.
fn insert_normalized<K: Field>(graph: &Graph, terms: &mut BTreeMap<Monomial, K>, m: Monomial, k: K) {
    if m.is_normal(graph) {
        insert_term(terms, m, k);
        return;
    }
    let f = m.alpha.last_edge().expect("non-normal monomials end in an edge");
    let v = graph.src(f);
    let alpha0 = m.alpha.without_last(graph);
    let beta0 = m.beta.without_last(graph);
    for &g in graph.out_edges(v) {
        if g != f {
            let a = extend_at(graph, &alpha0, g);
            let b = extend_at(graph, &beta0, g);
            insert_term(terms, Monomial { alpha: a, beta: b }, -k.clone());
        }
    }
    insert_normalized(
        graph,
        terms,
        Monomial {
            alpha: alpha0,
            beta: beta0,
        },
        k,
    );
}

fn extend_at(graph: &Graph, p: &Path, e: EdgeId) -> Path {
    if p.is_vertex() {
        Path::edge(graph, e)
    } else {
        p.extended(graph, e).expect("edge leaves the range of the path")
    }
}

impl<K: Field> Element<K> {
    pub fn zero(graph: &Arc<Graph>) -> Self {
        Element {
            graph: Arc::clone(graph),
            terms: BTreeMap::new(),
        }
    }

    /// `k · α β*`, normalized.
    pub fn term(graph: &Arc<Graph>, m: Monomial, k: K) -> Self {
        let mut terms = BTreeMap::new();
        insert_normalized(graph, &mut terms, m, k);
        Element {
            graph: Arc::clone(graph),
            terms,
        }
    }

    /// `α β*`, or `None` when the ranges differ.
    pub fn monomial(graph: &Arc<Graph>, alpha: Path, beta: Path) -> Option<Self> {
        let m = Monomial::new(graph, alpha, beta)?;
        Some(Self::term(graph, m, K::one()))
    }

    /// The path `p` itself (`p · rng(p)*`).
    pub fn path(graph: &Arc<Graph>, p: &Path) -> Self {
        let r = Path::vertex(p.rng(graph));
        Self::monomial(graph, p.clone(), r).expect("ranges agree")
    }

    /// The ghost path `p*`.
    pub fn ghost_path(graph: &Arc<Graph>, p: &Path) -> Self {
        Self::path(graph, p).star()
    }

    pub fn vertex(graph: &Arc<Graph>, v: VertexId) -> Self {
        Self::term(graph, Monomial::vertex(v), K::one())
    }

    pub fn edge(graph: &Arc<Graph>, e: EdgeId) -> Self {
        Self::path(graph, &Path::edge(graph, e))
    }

    pub fn ghost(graph: &Arc<Graph>, e: EdgeId) -> Self {
        Self::ghost_path(graph, &Path::edge(graph, e))
    }

    /// `1 = Σ_v v`; the algebra is unital since the graph is finite.
    pub fn unit(graph: &Arc<Graph>) -> Self {
        let mut out = Self::zero(graph);
        for v in graph.vertices() {
            insert_term(&mut out.terms, Monomial::vertex(v), K::one());
        }
        out
    }

    /// The canonical generator named `id`.
    pub fn generator(graph: &Arc<Graph>, kind: GeneratorKind, id: &str) -> Result<Self, AlgebraError> {
        let unknown = || AlgebraError::UnknownId(id.to_string());
        match kind {
            GeneratorKind::Vertex => Ok(Self::vertex(graph, graph.vertex_id(id).ok_or_else(unknown)?)),
            GeneratorKind::Edge => Ok(Self::edge(graph, graph.edge_id(id).ok_or_else(unknown)?)),
            GeneratorKind::GhostEdge => Ok(Self::ghost(graph, graph.edge_id(id).ok_or_else(unknown)?)),
        }
    }

    /// The gap `v - Σ_{e ∈ s⁻¹(v)} e e*`.
    pub fn gap(graph: &Arc<Graph>, v: VertexId) -> Self {
        let mut out = Self::vertex(graph, v);
        out = out.sub(&Self::edge_sum(graph, v));
        out
    }

    /// `Σ_{e ∈ s⁻¹(v)} e e*`.
    pub fn edge_sum(graph: &Arc<Graph>, v: VertexId) -> Self {
        let mut out = Self::zero(graph);
        for &e in graph.out_edges(v) {
            let p = Path::edge(graph, e);
            let m = Monomial::new(graph, p.clone(), p).expect("same path");
            insert_normalized(graph, &mut out.terms, m, K::one());
        }
        out
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    fn check_graph(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(AlgebraError::GraphMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_graph(other)?;
        let mut terms = self.terms.clone();
        for (m, k) in &other.terms {
            insert_term(&mut terms, m.clone(), k.clone());
        }
        Ok(Element {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        let terms = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect()
        };
        Element {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-K::one())
    }

    /// Panicking addition for operands known to share a graph.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("graph mismatch in addition")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("graph mismatch in subtraction")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_graph(other)?;
        let graph = &*self.graph;
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                if let Some(p) = m.product(graph, n) {
                    insert_normalized(graph, &mut terms, p, a.clone() * b.clone());
                }
            }
        }
        Ok(Element {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("graph mismatch in multiplication")
    }

    /// The involution `(α β*)* = β α*`.
    pub fn star(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.star(), k.clone()))
            .collect();
        Element {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::unit(&self.graph);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The sub-sum of terms with `|α| - |β| = n`.
    pub fn graded_component(&self, n: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == n)
            .map(|(m, k)| (m.clone(), k.clone()))
            .collect();
        Element {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }

    /// Degrees occurring in the element, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Some(n)` when every term has degree `n`; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    /// Lies in the span of real paths (no ghost edges).
    pub fn is_real(&self) -> bool {
        self.terms.keys().all(|m| m.beta.is_vertex())
    }

    /// Longest ghost part among the terms.
    pub fn ghost_degree(&self) -> usize {
        self.terms.keys().map(|m| m.beta.len()).max().unwrap_or(0)
    }

    /// The terms with no ghost edges.
    pub fn real_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.beta.is_vertex())
            .map(|(m, k)| (m.clone(), k.clone()))
            .collect();
        Element {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }
}

impl<K: Field> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, k)) in self.terms.iter().enumerate() {
            let negative = k.is_negative();
            let magnitude = if negative { -k.clone() } else { k.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude} * ")?;
            }
            write!(f, "{}", m.display(&self.graph))?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl<K: Field> Add for &Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: Self) -> Element<K> {
        Element::add(self, rhs)
    }
}

impl<K: Field> Sub for &Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: Self) -> Element<K> {
        Element::sub(self, rhs)
    }
}

impl<K: Field> Mul for &Element<K> {
    type Output = Element<K>;
    fn mul(self, rhs: Self) -> Element<K> {
        Element::mul(self, rhs)
    }
}

impl<K: Field> Neg for &Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        Element::neg(self)
    }
}

/// All normal monomials `α β*` with `|α|, |β| ≤ max_len`, in term order.
pub fn normal_monomials(graph: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths = graph.paths_up_to(max_len);
    let mut by_range: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for p in &paths {
        by_range.entry(p.rng(graph)).or_default().push(p);
    }
    let mut out = Vec::new();
    for group in by_range.values() {
        for a in group {
            for b in group {
                let m = Monomial {
                    alpha: (*a).clone(),
                    beta: (*b).clone(),
                };
                if m.is_normal(graph) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// Result of [`dimension_if_finite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Unbounded,
}

/// Counts normal monomials when every path is shorter than `cap`.
pub fn dimension_if_finite(graph: &Graph, cap: usize) -> Dimension {
    let paths = graph.paths_up_to(cap);
    if paths.iter().any(|p| p.len() >= cap) {
        return Dimension::Unbounded;
    }
    Dimension::Finite(normal_monomials(graph, cap).len())
}

#[cfg(test)]
mod tests;
