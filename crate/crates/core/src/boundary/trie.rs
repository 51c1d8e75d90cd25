//! Locally constant functions on the relative boundary path space.
//!
//! A function is stored as one trie per vertex. A `Leaf(c)` at prefix `β`
//! means "constant `c` on the whole cylinder `Z(β)`"; a `Split` gives the
//! value at the finite path `β` itself (meaningful only when `rng(β)` is a
//! sink or lies in `Y`) and one child per edge leaving `rng(β)`, in
//! `out_edges` order. Every cylinder `Z(β)` of a finite graph is nonempty,
//! so the collapsed form is canonical and equality of tries is equality of
//! functions.

use std::fmt::Debug;
use std::sync::Arc;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::scalar::Field;

/// Values a trie can hold: a zero plus decidable equality.
pub trait TrieValue: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl TrieValue for bool {
    fn zero() -> Self {
        false
    }
}

impl<K: Field> TrieValue for K {
    fn zero() -> Self {
        K::zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Node<V> {
    Leaf(V),
    Split { point: V, children: Vec<Node<V>> },
}

#[derive(Clone, Debug)]
pub struct LocallyConstant<V> {
    graph: Arc<Graph>,
    roots: Vec<Node<V>>,
}

impl<V: TrieValue> PartialEq for LocallyConstant<V> {
    fn eq(&self, other: &Self) -> bool {
        crate::cohn::same_graph(&self.graph, &other.graph) && self.roots == other.roots
    }
}

impl<V: TrieValue + Eq> Eq for LocallyConstant<V> {}

pub(crate) fn edge_slot(g: &Graph, e: EdgeId) -> usize {
    g.out_edges(g.src(e))
        .iter()
        .position(|&f| f == e)
        .expect("edge is listed at its source")
}

/// Builds a split at `v`, collapsing to a leaf when the value is constant.
pub(crate) fn make_split<V: TrieValue>(g: &Graph, v: VertexId, point: V, children: Vec<Node<V>>) -> Node<V> {
    let point = if g.is_boundary_end(v) { point } else { V::zero() };
    let Some(Node::Leaf(first)) = children.first() else {
        return if children.is_empty() {
            Node::Leaf(point)
        } else {
            Node::Split { point, children }
        };
    };
    let uniform = children.iter().all(|c| matches!(c, Node::Leaf(x) if x == first));
    if uniform && (!g.is_boundary_end(v) || point == *first) {
        return Node::Leaf(first.clone());
    }
    Node::Split { point, children }
}

fn expand<V: TrieValue>(g: &Graph, v: VertexId, node: &Node<V>) -> (V, Vec<Node<V>>) {
    match node {
        Node::Leaf(c) => (c.clone(), vec![Node::Leaf(c.clone()); g.out_edges(v).len()]),
        Node::Split { point, children } => (point.clone(), children.clone()),
    }
}

fn zip_node<A: TrieValue, B: TrieValue, C: TrieValue>(
    g: &Graph,
    v: VertexId,
    a: &Node<A>,
    b: &Node<B>,
    f: &mut impl FnMut(&A, &B) -> C,
) -> Node<C> {
    if let (Node::Leaf(x), Node::Leaf(y)) = (a, b) {
        return Node::Leaf(f(x, y));
    }
    let (pa, ca) = expand(g, v, a);
    let (pb, cb) = expand(g, v, b);
    let children = g
        .out_edges(v)
        .iter()
        .zip(ca.iter().zip(cb.iter()))
        .map(|(&e, (x, y))| zip_node(g, g.rng(e), x, y, f))
        .collect();
    make_split(g, v, f(&pa, &pb), children)
}

fn map_node<A: TrieValue, B: TrieValue>(g: &Graph, v: VertexId, a: &Node<A>, f: &mut impl FnMut(&A) -> B) -> Node<B> {
    match a {
        Node::Leaf(x) => Node::Leaf(f(x)),
        Node::Split { point, children } => {
            let kids = g
                .out_edges(v)
                .iter()
                .zip(children)
                .map(|(&e, c)| map_node(g, g.rng(e), c, f))
                .collect();
            make_split(g, v, f(point), kids)
        }
    }
}

impl<V: TrieValue> LocallyConstant<V> {
    pub fn constant(graph: &Arc<Graph>, c: V) -> Self {
        LocallyConstant {
            graph: Arc::clone(graph),
            roots: graph.vertices().map(|_| Node::Leaf(c.clone())).collect(),
        }
    }

    pub fn zero(graph: &Arc<Graph>) -> Self {
        Self::constant(graph, V::zero())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub(crate) fn root(&self, v: VertexId) -> &Node<V> {
        &self.roots[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.roots.iter().all(|n| matches!(n, Node::Leaf(c) if c.is_zero()))
    }

    /// `node` placed at `Z(β)` (re-rooted from `rng(β)`), zero elsewhere.
    pub(crate) fn graft(graph: &Arc<Graph>, beta: &Path, node: Node<V>) -> Self {
        let g = &**graph;
        let mut built = node;
        for &e in beta.edges().iter().rev() {
            let v = g.src(e);
            let mut children = vec![Node::Leaf(V::zero()); g.out_edges(v).len()];
            children[edge_slot(g, e)] = built;
            built = make_split(g, v, V::zero(), children);
        }
        let mut out = Self::zero(graph);
        out.roots[beta.src().index()] = built;
        out
    }

    /// The restriction to `Z(β)`, as a trie rooted at `rng(β)`.
    pub(crate) fn subtree(&self, beta: &Path) -> Node<V> {
        let g = &*self.graph;
        let mut node = self.root(beta.src());
        for &e in beta.edges() {
            match node {
                Node::Leaf(_) => return node.clone(),
                Node::Split { children, .. } => node = &children[edge_slot(g, e)],
            }
        }
        node.clone()
    }

    /// `c` on `Z(β)`, zero elsewhere.
    pub fn on_cylinder(graph: &Arc<Graph>, beta: &Path, c: V) -> Self {
        Self::graft(graph, beta, Node::Leaf(c))
    }

    /// `c` on `Z(β \ F)`, zero elsewhere. Edges of `F` not leaving `rng(β)`
    /// are ignored.
    pub fn on_gen_cylinder(graph: &Arc<Graph>, beta: &Path, excluded: &[EdgeId], c: V) -> Self {
        let g = &**graph;
        let r = beta.rng(g);
        let children = g
            .out_edges(r)
            .iter()
            .map(|e| Node::Leaf(if excluded.contains(e) { V::zero() } else { c.clone() }))
            .collect();
        Self::graft(graph, beta, make_split(g, r, c, children))
    }

    pub fn zip_with<B: TrieValue, C: TrieValue>(
        &self,
        other: &LocallyConstant<B>,
        mut f: impl FnMut(&V, &B) -> C,
    ) -> LocallyConstant<C> {
        let g = &*self.graph;
        LocallyConstant {
            graph: Arc::clone(&self.graph),
            roots: g
                .vertices()
                .map(|v| zip_node(g, v, self.root(v), other.root(v), &mut f))
                .collect(),
        }
    }

    pub fn map<B: TrieValue>(&self, mut f: impl FnMut(&V) -> B) -> LocallyConstant<B> {
        let g = &*self.graph;
        LocallyConstant {
            graph: Arc::clone(&self.graph),
            roots: g.vertices().map(|v| map_node(g, v, self.root(v), &mut f)).collect(),
        }
    }

    /// Value at the finite boundary point `β`; `None` unless `rng(β)` is a
    /// sink or lies in `Y`.
    pub fn value_at_point(&self, beta: &Path) -> Option<V> {
        let g = &*self.graph;
        if !g.is_boundary_end(beta.rng(g)) {
            return None;
        }
        match self.subtree(beta) {
            Node::Leaf(c) => Some(c),
            Node::Split { point, .. } => Some(point),
        }
    }

    /// The constant value on `Z(β)`, if the function is constant there.
    pub fn value_on_cylinder(&self, beta: &Path) -> Option<V> {
        match self.subtree(beta) {
            Node::Leaf(c) => Some(c),
            Node::Split { .. } => None,
        }
    }

    /// The support as a set.
    pub fn support(&self) -> LocallyConstant<bool> {
        self.map(|c| !c.is_zero())
    }

    /// Maximal depth of the tries.
    pub fn depth(&self) -> usize {
        fn d<V>(n: &Node<V>) -> usize {
            match n {
                Node::Leaf(_) => 0,
                Node::Split { children, .. } => 1 + children.iter().map(d).max().unwrap_or(0),
            }
        }
        self.roots.iter().map(d).max().unwrap_or(0)
    }

    /// Disjoint generalized cylinders `(β, F, value)` with nonzero values
    /// covering the support.
    pub fn pieces(&self) -> Vec<(Path, Vec<EdgeId>, V)> {
        let g = &*self.graph;
        let mut out = Vec::new();
        for v in g.vertices() {
            collect_pieces(g, &Path::vertex(v), self.root(v), &mut out);
        }
        out
    }
}

fn collect_pieces<V: TrieValue>(g: &Graph, beta: &Path, node: &Node<V>, out: &mut Vec<(Path, Vec<EdgeId>, V)>) {
    let v = beta.rng(g);
    let extend = |e: EdgeId| beta.extended(g, e).expect("edge leaves rng(β)");
    match node {
        Node::Leaf(c) => {
            if !c.is_zero() {
                out.push((beta.clone(), Vec::new(), c.clone()));
            }
        }
        Node::Split { point, children } => {
            let outs = g.out_edges(v);
            let boundary = g.is_boundary_end(v);
            // Values that can be grouped into a single Z(β \ F).
            let mut grouped: Vec<V> = Vec::new();
            if boundary {
                if !point.is_zero() {
                    grouped.push(point.clone());
                }
            } else {
                for c in children {
                    if let Node::Leaf(x) = c {
                        if !x.is_zero() && !grouped.contains(x) {
                            grouped.push(x.clone());
                        }
                    }
                }
            }
            for x in &grouped {
                let excluded: Vec<EdgeId> = outs
                    .iter()
                    .zip(children)
                    .filter(|(_, c)| !matches!(c, Node::Leaf(y) if y == x))
                    .map(|(&e, _)| e)
                    .collect();
                out.push((beta.clone(), excluded, x.clone()));
            }
            for (&e, c) in outs.iter().zip(children) {
                match c {
                    Node::Leaf(x) if grouped.contains(x) || x.is_zero() => {}
                    _ => collect_pieces(g, &extend(e), c, out),
                }
            }
        }
    }
}

/// A subset of the boundary path space.
pub type CylinderSet = LocallyConstant<bool>;

impl CylinderSet {
    pub fn empty(graph: &Arc<Graph>) -> Self {
        Self::constant(graph, false)
    }

    pub fn full(graph: &Arc<Graph>) -> Self {
        Self::constant(graph, true)
    }

    /// `Z(β)`.
    pub fn cylinder(graph: &Arc<Graph>, beta: &Path) -> Self {
        Self::on_cylinder(graph, beta, true)
    }

    /// `Z(β \ F)`.
    pub fn gen_cylinder(graph: &Arc<Graph>, beta: &Path, excluded: &[EdgeId]) -> Self {
        Self::on_gen_cylinder(graph, beta, excluded, true)
    }

    /// The single finite boundary point `β`, if it is one.
    pub fn point(graph: &Arc<Graph>, beta: &Path) -> Option<Self> {
        let r = beta.rng(graph);
        graph
            .is_boundary_end(r)
            .then(|| Self::gen_cylinder(graph, beta, graph.out_edges(r)))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a || *b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a && *b)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a && !*b)
    }

    pub fn complement(&self) -> Self {
        self.map(|a| !*a)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.subtract(other).is_empty()
    }

    /// Membership of a finite boundary point.
    pub fn contains_point(&self, beta: &Path) -> bool {
        self.value_at_point(beta).unwrap_or(false)
    }

    /// Whether every boundary path extending `β` belongs to the set.
    pub fn contains_cylinder(&self, beta: &Path) -> bool {
        self.value_on_cylinder(beta).unwrap_or(false)
    }

    pub fn indicator<K: Field>(&self) -> DFunction<K> {
        self.map(|&b| if b { K::one() } else { K::zero() })
    }
}

/// A locally constant `K`-valued function with finite support description.
pub type DFunction<K> = LocallyConstant<K>;

impl<K: Field> LocallyConstant<K> {
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }
}
