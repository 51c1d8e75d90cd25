//! Maps out of `C_K^X(E)`: the isomorphism with the Leavitt path algebra
//! of the extended graph `E(X)`, the reduction algorithm, and injectivity
//! certificates for homomorphisms given on generators.

mod reduce;
mod uniqueness;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cohn::{same_graph, AlgebraError, Element, Monomial};
use crate::graph::{EdgeId, ExtendedGraph, Graph, VertexId};
use crate::scalar::{fmt_rational, rat, Rational};

pub use reduce::{reduce, reduce_homogeneous, ReductionOutcome, Shape};
pub use uniqueness::{
    check_ck_uniqueness, check_graded_uniqueness, check_relative_ck_uniqueness, Certificate, CheckKind,
    Hypothesis, HypothesisKind, UniquenessError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("element does not live over the extended graph")]
    NotExtendedGraph,
    #[error("element does not live over the source graph")]
    NotSourceGraph,
    #[error("cannot reduce the zero element")]
    ZeroElement,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("reduction certificate failed to replay: {0}")]
    ReplayFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A ring with decidable zero in which generator images can be evaluated.
pub trait TargetRing: Clone + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// The zero of the ring `self` lives in.
    fn zero_like(&self) -> Self;
    /// Homogeneous components `(degree, component)` for graded targets.
    fn graded_components(&self) -> Option<Vec<(i64, Self)>> {
        None
    }
    fn describe(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl TargetRing for Element {
    fn add(&self, other: &Self) -> Self {
        Element::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Element::mul(self, other)
    }
    fn scale(&self, k: &Rational) -> Self {
        Element::scale(self, k)
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Element::zero(self.graph())
    }
    fn graded_components(&self) -> Option<Vec<(i64, Self)>> {
        Some(
            self.degrees()
                .into_iter()
                .map(|d| (d, self.graded_component(d)))
                .collect(),
        )
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `Q` itself, concentrated in degree zero.
impl TargetRing for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        rat(0)
    }
    fn graded_components(&self) -> Option<Vec<(i64, Self)>> {
        if TargetRing::is_zero(self) {
            Some(Vec::new())
        } else {
            Some(vec![(0, self.clone())])
        }
    }
    fn describe(&self) -> String {
        fmt_rational(self)
    }
}

/// Generator of `C_K^X(E)` as seen by an assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

/// Images of all generators in a target ring, checked against the defining
/// relations on construction.
#[derive(Clone, Debug)]
pub struct GeneratorAssignment<T: TargetRing> {
    graph: Arc<Graph>,
    zero: T,
    vertices: Vec<T>,
    edges: Vec<T>,
    ghosts: Vec<T>,
}

impl<T: TargetRing> GeneratorAssignment<T> {
    pub fn from_fn(graph: &Arc<Graph>, zero: T, mut image: impl FnMut(Generator) -> T) -> Result<Self, UniquenessError> {
        let vertices = graph.vertices().map(|v| image(Generator::Vertex(v))).collect();
        let edges = graph.edges().map(|e| image(Generator::Edge(e))).collect();
        let ghosts = graph.edges().map(|e| image(Generator::Ghost(e))).collect();
        let out = GeneratorAssignment {
            graph: Arc::clone(graph),
            zero,
            vertices,
            edges,
            ghosts,
        };
        out.check_relations()?;
        Ok(out)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn image(&self, g: Generator) -> &T {
        match g {
            Generator::Vertex(v) => &self.vertices[v.index()],
            Generator::Edge(e) => &self.edges[e.index()],
            Generator::Ghost(e) => &self.ghosts[e.index()],
        }
    }

    pub fn vertex(&self, v: VertexId) -> &T {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &T {
        &self.edges[e.index()]
    }

    pub fn ghost(&self, e: EdgeId) -> &T {
        &self.ghosts[e.index()]
    }

    pub fn zero(&self) -> T {
        self.zero.clone()
    }

    /// `π(Σ_{e ∈ s⁻¹(v)} e e*)`.
    pub fn edge_sum(&self, v: VertexId) -> T {
        self.graph
            .out_edges(v)
            .iter()
            .fold(self.zero(), |acc, &e| acc.add(&self.edge(e).mul(self.ghost(e))))
    }

    /// `π(v - Σ e e*)`.
    pub fn gap(&self, v: VertexId) -> T {
        self.vertex(v).sub(&self.edge_sum(v))
    }

    fn check_relations(&self) -> Result<(), UniquenessError> {
        let g = &*self.graph;
        let violation = |relation: String| Err(UniquenessError::RelationViolation { relation });
        for v in g.vertices() {
            for w in g.vertices() {
                let prod = self.vertex(v).mul(self.vertex(w));
                let expect = if v == w { self.vertex(v).clone() } else { self.zero() };
                if !prod.equals(&expect) {
                    return violation(format!("(V) at {}, {}", g.vertex_name(v), g.vertex_name(w)));
                }
            }
        }
        for e in g.edges() {
            let name = g.edge_name(e);
            let (s, r) = (self.vertex(g.src(e)), self.vertex(g.rng(e)));
            let (ed, gh) = (self.edge(e), self.ghost(e));
            if !s.mul(ed).equals(ed) || !ed.mul(r).equals(ed) {
                return violation(format!("(E1) at {name}"));
            }
            if !r.mul(gh).equals(gh) || !gh.mul(s).equals(gh) {
                return violation(format!("(E2) at {name}"));
            }
            for f in g.edges() {
                let prod = gh.mul(self.edge(f));
                let expect = if e == f { r.clone() } else { self.zero() };
                if !prod.equals(&expect) {
                    return violation(format!("(CK1) at {name}, {}", g.edge_name(f)));
                }
            }
        }
        for v in g.x_vertices() {
            if !self.gap(v).is_zero() {
                return violation(format!("(XCK2) at {}", g.vertex_name(v)));
            }
        }
        Ok(())
    }

    pub fn evaluate_monomial(&self, m: &Monomial) -> T {
        if m.alpha().is_vertex() && m.beta().is_vertex() {
            return self.vertex(m.alpha().src()).clone();
        }
        let mut factors = m.alpha().edges().iter().map(|&e| self.edge(e));
        let ghosts = m.beta().edges().iter().rev().map(|&e| self.ghost(e));
        let mut all = factors.by_ref().chain(ghosts);
        let first = all.next().expect("monomial has an edge").clone();
        all.fold(first, |acc, t| acc.mul(t))
    }

    /// `π(x)`; `x` must live over the assignment's graph.
    pub fn evaluate(&self, x: &Element) -> Result<T, AlgebraError> {
        if !same_graph(x.graph(), &self.graph) {
            return Err(AlgebraError::GraphMismatch);
        }
        Ok(x.terms().fold(self.zero(), |acc, (m, k)| {
            acc.add(&self.evaluate_monomial(m).scale(k))
        }))
    }
}

/// The identity assignment of `C_K^X(E)` into itself.
pub fn identity_assignment(graph: &Arc<Graph>) -> GeneratorAssignment<Element> {
    GeneratorAssignment::from_fn(graph, Element::zero(graph), |gen| generator_element(graph, gen))
        .expect("the defining relations hold in the algebra itself")
}

/// Generators sent to the same-named generators of the Leavitt path
/// algebra `L_K(E) = C_K^{Reg(E)}(E)`.
pub fn leavitt_assignment(graph: &Arc<Graph>) -> GeneratorAssignment<Element> {
    let target = Arc::new(graph.with_full_x());
    GeneratorAssignment::from_fn(graph, Element::zero(&target), |gen| generator_element(&target, gen))
        .expect("the Leavitt relations imply the relative ones")
}

fn generator_element(graph: &Arc<Graph>, gen: Generator) -> Element {
    match gen {
        Generator::Vertex(v) => Element::vertex(graph, v),
        Generator::Edge(e) => Element::edge(graph, e),
        Generator::Ghost(e) => Element::ghost(graph, e),
    }
}

/// The pair `φ : C_K^X(E) → L_K(E(X))` and `ψ` in the other direction.
pub struct Isomorphism {
    ext: ExtendedGraph,
    phi: GeneratorAssignment<Element>,
    psi: GeneratorAssignment<Element>,
}

impl Isomorphism {
    pub fn new(graph: &Arc<Graph>) -> Self {
        let ext = graph.extended_graph();
        let target = Arc::clone(ext.graph());
        let phi = GeneratorAssignment::from_fn(graph, Element::zero(&target), |gen| match gen {
            Generator::Vertex(v) => phi_vertex(&ext, v),
            Generator::Edge(e) => phi_edge(&ext, e),
            Generator::Ghost(e) => phi_edge(&ext, e).star(),
        })
        .expect("φ respects the defining relations");
        let psi = GeneratorAssignment::from_fn(&target, Element::zero(graph), |gen| match gen {
            Generator::Vertex(v) => psi_vertex(&ext, v),
            Generator::Edge(e) => psi_edge(&ext, e),
            Generator::Ghost(e) => psi_edge(&ext, e).star(),
        })
        .expect("ψ respects the Leavitt relations of E(X)");
        Isomorphism { ext, phi, psi }
    }

    pub fn extended(&self) -> &ExtendedGraph {
        &self.ext
    }

    pub fn source(&self) -> &Arc<Graph> {
        self.ext.base()
    }

    pub fn target(&self) -> &Arc<Graph> {
        self.ext.graph()
    }

    pub fn phi(&self, x: &Element) -> Result<Element, TransformError> {
        self.phi.evaluate(x).map_err(|_| TransformError::NotSourceGraph)
    }

    pub fn psi(&self, x: &Element) -> Result<Element, TransformError> {
        self.psi.evaluate(x).map_err(|_| TransformError::NotExtendedGraph)
    }

    pub fn phi_assignment(&self) -> &GeneratorAssignment<Element> {
        &self.phi
    }

    pub fn psi_assignment(&self) -> &GeneratorAssignment<Element> {
        &self.psi
    }
}

fn phi_vertex(ext: &ExtendedGraph, v: VertexId) -> Element {
    let h = ext.graph();
    let base = Element::vertex(h, ext.vertex(v));
    match ext.primed_vertex(v) {
        Some(vp) => base.add(&Element::vertex(h, vp)),
        None => base,
    }
}

fn phi_edge(ext: &ExtendedGraph, e: EdgeId) -> Element {
    let h = ext.graph();
    let base = Element::edge(h, ext.edge(e));
    match ext.primed_edge(e) {
        Some(ep) => base.add(&Element::edge(h, ep)),
        None => base,
    }
}

fn psi_vertex(ext: &ExtendedGraph, v: VertexId) -> Element {
    let g = ext.base();
    let (orig, primed) = ext.vertex_origin(v);
    match (g.in_y(orig), primed) {
        (false, _) => Element::vertex(g, orig),
        (true, false) => Element::edge_sum(g, orig),
        (true, true) => Element::gap(g, orig),
    }
}

fn psi_edge(ext: &ExtendedGraph, e: EdgeId) -> Element {
    let g = ext.base();
    let (orig, primed) = ext.edge_origin(e);
    let r = g.rng(orig);
    let edge = Element::edge(g, orig);
    match (g.in_y(r), primed) {
        (false, _) => edge,
        (true, false) => edge.mul(&Element::edge_sum(g, r)),
        (true, true) => edge.mul(&Element::gap(g, r)),
    }
}
