//! Finite directed graphs with a distinguished set `X` of regular vertices.
//!
//! Vertex and edge ids are strings; internally they are interned as indices
//! into lexicographically sorted tables, so comparing [`VertexId`]s or
//! [`EdgeId`]s compares the underlying names.

mod format;
mod path;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use format::{parse_graph, write_graph, FormatError};
pub use path::{Cycle, Path, PathDisplay};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid identifier `{0}`")]
    InvalidId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    DanglingEdge { edge: String, vertex: String },
    #[error("X refers to unknown vertex `{0}`")]
    UnknownXVertex(String),
    #[error("vertex `{0}` is in X but is not regular")]
    XNotRegular(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// An unvalidated graph description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub x: Vec<String>,
}

impl RawGraph {
    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn edge(mut self, id: &str, src: &str, rng: &str) -> Self {
        self.edges.push(RawEdge {
            id: id.to_string(),
            src: src.to_string(),
            rng: rng.to_string(),
        });
        self
    }

    pub fn in_x(mut self, id: &str) -> Self {
        self.x.push(id.to_string());
        self
    }
}

/// Identifiers are `[A-Za-z_][A-Za-z0-9_']*`.
pub fn is_valid_id(id: &str) -> bool {
    let mut chars = id.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Checks every graph invariant and reports the first violation.
pub fn validate(raw: &RawGraph) -> Result<(), GraphError> {
    let mut seen = BTreeSet::new();
    for id in raw.vertices.iter().chain(raw.edges.iter().map(|e| &e.id)) {
        if !is_valid_id(id) {
            return Err(GraphError::InvalidId(id.clone()));
        }
        if !seen.insert(id.as_str()) {
            return Err(GraphError::DuplicateId(id.clone()));
        }
    }
    let vertices: BTreeSet<&str> = raw.vertices.iter().map(String::as_str).collect();
    for e in &raw.edges {
        for v in [&e.src, &e.rng] {
            if !vertices.contains(v.as_str()) {
                return Err(GraphError::DanglingEdge {
                    edge: e.id.clone(),
                    vertex: v.clone(),
                });
            }
        }
    }
    let mut x_seen = BTreeSet::new();
    for v in &raw.x {
        if !vertices.contains(v.as_str()) {
            return Err(GraphError::UnknownXVertex(v.clone()));
        }
        if !x_seen.insert(v.as_str()) {
            return Err(GraphError::DuplicateId(v.clone()));
        }
        if !raw.edges.iter().any(|e| &e.src == v) {
            return Err(GraphError::XNotRegular(v.clone()));
        }
    }
    Ok(())
}

/// A validated finite graph `E` together with `X ⊆ Reg(E)`.
#[derive(Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    rng: Vec<VertexId>,
    in_x: Vec<bool>,
    out: Vec<Vec<EdgeId>>,
    vertex_index: BTreeMap<String, VertexId>,
    edge_index: BTreeMap<String, EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.edge_names == other.edge_names
            && self.src == other.src
            && self.rng == other.rng
            && self.in_x == other.in_x
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_names)
            .field("edges", &self.edge_names)
            .field("x", &self.x_names())
            .finish()
    }
}

/// The sinks, the regular vertices and `Y = Reg(E) \ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub sinks: BTreeSet<VertexId>,
    pub regular: BTreeSet<VertexId>,
    pub y: BTreeSet<VertexId>,
}

impl Graph {
    pub fn new(raw: &RawGraph) -> Result<Self, GraphError> {
        validate(raw)?;
        let mut vertex_names = raw.vertices.clone();
        vertex_names.sort();
        let vertex_index: BTreeMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i as u32)))
            .collect();
        let mut edges = raw.edges.clone();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let edge_names: Vec<String> = edges.iter().map(|e| e.id.clone()).collect();
        let edge_index = edge_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), EdgeId(i as u32)))
            .collect();
        let src: Vec<VertexId> = edges.iter().map(|e| vertex_index[&e.src]).collect();
        let rng = edges.iter().map(|e| vertex_index[&e.rng]).collect();
        let mut out = vec![Vec::new(); vertex_names.len()];
        for (i, s) in src.iter().enumerate() {
            out[s.index()].push(EdgeId(i as u32));
        }
        let mut in_x = vec![false; vertex_names.len()];
        for v in &raw.x {
            in_x[vertex_index[v].index()] = true;
        }
        Ok(Graph {
            vertex_names,
            edge_names,
            src,
            rng,
            in_x,
            out,
            vertex_index,
            edge_index,
        })
    }

    pub fn into_arc(self) -> Arc<Graph> {
        Arc::new(self)
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges()
                .map(|e| RawEdge {
                    id: self.edge_name(e).to_string(),
                    src: self.vertex_name(self.src(e)).to_string(),
                    rng: self.vertex_name(self.rng(e)).to_string(),
                })
                .collect(),
            x: self.x_names(),
        }
    }

    /// The same graph with a different relative set.
    pub fn with_x<I, S>(&self, x: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut raw = self.to_raw();
        raw.x = x.into_iter().map(|s| s.as_ref().to_string()).collect();
        Graph::new(&raw)
    }

    /// The same graph with `X = Reg(E)`, whose relative Cohn algebra is the
    /// Leavitt path algebra.
    pub fn with_full_x(&self) -> Graph {
        let names: Vec<String> = self
            .vertices()
            .filter(|&v| self.is_regular(v))
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        self.with_x(names).expect("regular vertices form a valid X")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator {
        (0..self.edge_names.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.src[e.index()]
    }

    pub fn rng(&self, e: EdgeId) -> VertexId {
        self.rng[e.index()]
    }

    /// `src⁻¹(v)` in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.index()].is_empty()
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn in_x(&self, v: VertexId) -> bool {
        self.in_x[v.index()]
    }

    /// `v ∈ Y = Reg(E) \ X`.
    pub fn in_y(&self, v: VertexId) -> bool {
        self.is_regular(v) && !self.in_x(v)
    }

    /// Finite boundary paths end exactly at these vertices: sinks and `Y`.
    pub fn is_boundary_end(&self, v: VertexId) -> bool {
        self.is_sink(v) || !self.in_x(v)
    }

    pub fn x_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.in_x(v))
    }

    pub fn y_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.in_y(v))
    }

    pub fn x_names(&self) -> Vec<String> {
        self.x_vertices()
            .map(|v| self.vertex_name(v).to_string())
            .collect()
    }

    /// The special edge used by the normal form at `v ∈ X`: the
    /// lexicographically largest edge it emits.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.in_x(v) {
            self.out[v.index()].last().copied()
        } else {
            None
        }
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special_edge(self.src(e)) == Some(e)
    }

    pub fn classify_vertices(&self) -> VertexClasses {
        let sinks = self.vertices().filter(|&v| self.is_sink(v)).collect();
        let regular = self.vertices().filter(|&v| self.is_regular(v)).collect();
        let y = self.y_vertices().collect();
        VertexClasses { sinks, regular, y }
    }

    /// All paths of length `0..=n`, ordered by length and then
    /// lexicographically by edge ids (vertices by id).
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let mut level: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut all = level.clone();
        for _ in 0..n {
            let mut next: Vec<Path> = Vec::new();
            for p in &level {
                for &e in self.out_edges(p.rng(self)) {
                    if p.is_vertex() {
                        next.push(Path::edge(self, e));
                    } else {
                        next.push(p.extended(self, e).expect("e leaves rng(p)"));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    /// Paths of length exactly `n` starting at `v`, in order.
    pub fn paths_from(&self, v: VertexId, n: usize) -> Vec<Path> {
        let mut level = vec![Path::vertex(v)];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &level {
                for &e in self.out_edges(p.rng(self)) {
                    next.push(if p.is_vertex() {
                        Path::edge(self, e)
                    } else {
                        p.extended(self, e).expect("composable")
                    });
                }
            }
            level = next;
        }
        level.sort();
        level
    }

    /// Cycles none of whose vertices emit a second edge, one per rotation
    /// class, each starting at its smallest vertex.
    pub fn exit_free_cycles(&self) -> Vec<Cycle> {
        let mut found = BTreeSet::new();
        for start in self.vertices() {
            if self.out_edges(start).len() != 1 {
                continue;
            }
            let mut edges = Vec::new();
            let mut v = start;
            loop {
                let outs = self.out_edges(v);
                if outs.len() != 1 || edges.len() > self.vertex_count() {
                    break;
                }
                let e = outs[0];
                edges.push(e);
                v = self.rng(e);
                if v == start {
                    let path = Path::from_edges(self, edges.clone()).expect("composable");
                    if let Some(c) = Cycle::new(self, path) {
                        found.insert(c.canonical(self));
                    }
                    break;
                }
            }
        }
        found.into_iter().collect()
    }

    /// Every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.exit_free_cycles().is_empty()
    }

    /// Every cycle whose sources all avoid `Y` has an exit.
    pub fn relative_condition_l(&self) -> bool {
        self.exit_free_cycles_avoiding_y().is_empty()
    }

    /// Exit-free cycles with no source vertex in `Y`.
    pub fn exit_free_cycles_avoiding_y(&self) -> Vec<Cycle> {
        self.exit_free_cycles()
            .into_iter()
            .filter(|c| c.vertices(self).iter().all(|&v| !self.in_y(v)))
            .collect()
    }

    /// The exit-free cycle through `v`, rotated to start at `v`.
    pub fn exit_free_cycle_at(&self, v: VertexId) -> Option<Cycle> {
        self.exit_free_cycles()
            .into_iter()
            .find_map(|c| c.rotated_to(self, v))
    }

    /// Shortest path (shortlex-least among shortest) from `from` to a vertex
    /// satisfying `target`.
    pub fn shortest_path_to(
        &self,
        from: VertexId,
        mut target: impl FnMut(VertexId) -> bool,
    ) -> Option<Path> {
        let mut visited = vec![false; self.vertex_count()];
        let mut level = vec![Path::vertex(from)];
        visited[from.index()] = true;
        while !level.is_empty() {
            level.sort();
            if let Some(p) = level.iter().find(|p| target(p.rng(self))) {
                return Some(p.clone());
            }
            let mut next = Vec::new();
            for p in &level {
                for &e in self.out_edges(p.rng(self)) {
                    let r = self.rng(e);
                    if !visited[r.index()] {
                        visited[r.index()] = true;
                        next.push(if p.is_vertex() {
                            Path::edge(self, e)
                        } else {
                            p.extended(self, e).expect("composable")
                        });
                    }
                }
            }
            level = next;
        }
        None
    }

    /// `E(X)`: a primed sink `v'` for each `v ∈ Y` and a primed edge `e'`
    /// with `rng(e') = rng(e)'` for each edge into `Y`. The result has
    /// `X = Reg(E(X))`.
    pub fn extended_graph(self: &Arc<Self>) -> ExtendedGraph {
        ExtendedGraph::new(Arc::clone(self))
    }
}

/// `E(X)` together with the bookkeeping that relates it to `E`.
#[derive(Clone, Debug)]
pub struct ExtendedGraph {
    base: Arc<Graph>,
    graph: Arc<Graph>,
    vertex_to_ext: Vec<VertexId>,
    edge_to_ext: Vec<EdgeId>,
    primed_vertex: Vec<Option<VertexId>>,
    primed_edge: Vec<Option<EdgeId>>,
    vertex_origin: Vec<(VertexId, bool)>,
    edge_origin: Vec<(EdgeId, bool)>,
}

impl ExtendedGraph {
    fn new(base: Arc<Graph>) -> Self {
        let mut taken: BTreeSet<String> = base
            .vertex_names
            .iter()
            .chain(base.edge_names.iter())
            .cloned()
            .collect();
        let mut fresh = |name: &str| {
            let mut candidate = format!("{name}'");
            while taken.contains(&candidate) {
                candidate.push('\'');
            }
            taken.insert(candidate.clone());
            candidate
        };
        let mut raw = base.to_raw();
        let mut vertex_prime_names = BTreeMap::new();
        for v in base.y_vertices() {
            let name = fresh(base.vertex_name(v));
            raw.vertices.push(name.clone());
            vertex_prime_names.insert(v, name);
        }
        let mut edge_prime_names = BTreeMap::new();
        for e in base.edges() {
            if let Some(target) = vertex_prime_names.get(&base.rng(e)) {
                let name = fresh(base.edge_name(e));
                raw.edges.push(RawEdge {
                    id: name.clone(),
                    src: base.vertex_name(base.src(e)).to_string(),
                    rng: target.clone(),
                });
                edge_prime_names.insert(e, name);
            }
        }
        let regular: BTreeSet<&str> = raw.edges.iter().map(|e| e.src.as_str()).collect();
        raw.x = regular.into_iter().map(str::to_string).collect();
        let graph = Graph::new(&raw).expect("extended graph is valid");

        let vertex_to_ext: Vec<VertexId> = base
            .vertices()
            .map(|v| graph.vertex_id(base.vertex_name(v)).unwrap())
            .collect();
        let edge_to_ext: Vec<EdgeId> = base
            .edges()
            .map(|e| graph.edge_id(base.edge_name(e)).unwrap())
            .collect();
        let primed_vertex: Vec<Option<VertexId>> = base
            .vertices()
            .map(|v| vertex_prime_names.get(&v).map(|n| graph.vertex_id(n).unwrap()))
            .collect();
        let primed_edge: Vec<Option<EdgeId>> = base
            .edges()
            .map(|e| edge_prime_names.get(&e).map(|n| graph.edge_id(n).unwrap()))
            .collect();
        let mut vertex_origin = vec![(VertexId(0), false); graph.vertex_count()];
        for v in base.vertices() {
            vertex_origin[vertex_to_ext[v.index()].index()] = (v, false);
            if let Some(p) = primed_vertex[v.index()] {
                vertex_origin[p.index()] = (v, true);
            }
        }
        let mut edge_origin = vec![(EdgeId(0), false); graph.edge_count()];
        for e in base.edges() {
            edge_origin[edge_to_ext[e.index()].index()] = (e, false);
            if let Some(p) = primed_edge[e.index()] {
                edge_origin[p.index()] = (e, true);
            }
        }
        ExtendedGraph {
            base,
            graph: Arc::new(graph),
            vertex_to_ext,
            edge_to_ext,
            primed_vertex,
            primed_edge,
            vertex_origin,
            edge_origin,
        }
    }

    pub fn base(&self) -> &Arc<Graph> {
        &self.base
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// The copy of a base vertex inside `E(X)`.
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertex_to_ext[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.edge_to_ext[e.index()]
    }

    /// `v'` for `v ∈ Y`.
    pub fn primed_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.primed_vertex[v.index()]
    }

    /// `e'` for edges with range in `Y`.
    pub fn primed_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.primed_edge[e.index()]
    }

    /// The base vertex an extended vertex comes from, and whether it is a
    /// primed copy.
    pub fn vertex_origin(&self, v: VertexId) -> (VertexId, bool) {
        self.vertex_origin[v.index()]
    }

    pub fn edge_origin(&self, e: EdgeId) -> (EdgeId, bool) {
        self.edge_origin[e.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(g: &Graph, set: &BTreeSet<VertexId>) -> Vec<String> {
        set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    fn show(g: &Graph, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| p.display(g).to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&RawGraph::default().vertex("v")).is_ok());
        let loop_x = RawGraph::default()
            .vertex("v")
            .edge("e", "v", "v")
            .in_x("v");
        assert!(validate(&loop_x).is_ok());
        let sink_x = RawGraph::default().vertex("v").in_x("v");
        assert_eq!(
            validate(&sink_x),
            Err(GraphError::XNotRegular("v".into()))
        );
        let dangling = RawGraph::default().vertex("v").edge("e", "v", "w");
        assert_eq!(
            validate(&dangling),
            Err(GraphError::DanglingEdge {
                edge: "e".into(),
                vertex: "w".into()
            })
        );
        let dup = RawGraph::default().vertex("v").edge("v", "v", "v");
        assert_eq!(validate(&dup), Err(GraphError::DuplicateId("v".into())));
        let bad = RawGraph::default().vertex("1v");
        assert_eq!(validate(&bad), Err(GraphError::InvalidId("1v".into())));
    }

    #[test]
    fn classify_examples() {
        let g2 = fixtures::g2();
        let c = g2.classify_vertices();
        assert_eq!(names(&g2, &c.sinks), ["w"]);
        assert_eq!(names(&g2, &c.regular), ["v"]);
        assert!(c.y.is_empty());

        let g3 = fixtures::g3();
        let c = g3.classify_vertices();
        assert!(c.sinks.is_empty());
        assert_eq!(names(&g3, &c.regular), ["v", "w"]);
        assert_eq!(names(&g3, &c.y), ["v", "w"]);

        let g4 = fixtures::g4();
        let c = g4.classify_vertices();
        assert_eq!(names(&g4, &c.sinks), ["b"]);
        assert_eq!(names(&g4, &c.regular), ["m", "p", "t"]);
        assert_eq!(names(&g4, &c.y), ["p"]);
        for g in fixtures::all() {
            let c = g.classify_vertices();
            for v in g.vertices() {
                assert_eq!(c.regular.contains(&v), g.in_x(v) || c.y.contains(&v));
                assert!(!(g.in_x(v) && c.y.contains(&v)));
            }
        }
    }

    #[test]
    fn paths_up_to_examples() {
        let g1 = fixtures::g1();
        assert_eq!(show(&g1, &g1.paths_up_to(3)), ["v"]);
        let g2 = fixtures::g2();
        assert_eq!(show(&g2, &g2.paths_up_to(1)), ["v", "w", "e"]);
        // vertices come in id order: v before w
        let g3 = fixtures::g3();
        assert_eq!(
            show(&g3, &g3.paths_up_to(2)),
            ["v", "w", "e1", "e2", "e1.e2", "e2.e1"]
        );
    }

    #[test]
    fn paths_up_to_is_prefix_closed_without_duplicates() {
        for g in fixtures::all() {
            let paths = g.paths_up_to(4);
            let set: BTreeSet<Path> = paths.iter().cloned().collect();
            assert_eq!(set.len(), paths.len());
            for p in &paths {
                if !p.is_vertex() {
                    assert!(set.contains(&p.without_last(&g)));
                }
            }
        }
    }

    #[test]
    fn exit_free_cycle_examples() {
        let g5p = fixtures::g5p();
        let cycles = g5p.exit_free_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].path().display(&g5p).to_string(), "e");

        // canonical rotation starts at v, the smaller id
        let g3 = fixtures::g3();
        let cycles = g3.exit_free_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].path().display(&g3).to_string(), "e2.e1");
        let at_w = cycles[0].rotated_to(&g3, g3.vertex_id("w").unwrap()).unwrap();
        assert_eq!(at_w.path().display(&g3).to_string(), "e1.e2");

        assert!(fixtures::g6().exit_free_cycles().is_empty());
    }

    #[test]
    fn cycles_visit_vertices_once() {
        for g in fixtures::all() {
            for c in g.exit_free_cycles() {
                let vs = c.vertices(&g);
                let set: BTreeSet<_> = vs.iter().collect();
                assert_eq!(set.len(), vs.len());
            }
        }
    }

    #[test]
    fn condition_l_examples() {
        assert!(fixtures::g6().condition_l());
        assert!(!fixtures::g5p().condition_l());
        assert!(!fixtures::g3().condition_l());

        assert!(fixtures::g3().relative_condition_l());
        assert!(!fixtures::g5p().relative_condition_l());
        assert!(fixtures::g5pp().relative_condition_l());
    }

    #[test]
    fn extended_graph_examples() {
        let g2 = Arc::new(fixtures::g2());
        let ext = g2.extended_graph();
        assert_eq!(ext.graph().to_raw(), g2.to_raw());

        let g5pp = Arc::new(fixtures::g5pp());
        let ext = g5pp.extended_graph();
        let eg = ext.graph();
        assert_eq!(eg.vertex_count(), 2);
        let vp = eg.vertex_id("v'").unwrap();
        let ep = eg.edge_id("e'").unwrap();
        let v = eg.vertex_id("v").unwrap();
        assert_eq!(eg.src(ep), v);
        assert_eq!(eg.rng(ep), vp);
        assert_eq!(eg.rng(eg.edge_id("e").unwrap()), v);
        assert!(eg.in_x(v) && eg.is_sink(vp));

        let g4 = Arc::new(fixtures::g4());
        let ext = g4.extended_graph();
        let eg = ext.graph();
        let pp = eg.vertex_id("p'").unwrap();
        for name in ["f1'", "f2'", "f3'"] {
            assert_eq!(eg.rng(eg.edge_id(name).unwrap()), pp);
        }
        assert!(eg.edge_id("f4'").is_none());
    }

    #[test]
    fn extended_graph_invariants() {
        for g in fixtures::all() {
            let g = Arc::new(g);
            let ext = g.extended_graph();
            let eg = ext.graph();
            for v in g.vertices() {
                let ev = ext.vertex(v);
                if g.in_x(v) {
                    assert!(eg.is_regular(ev));
                }
                if g.in_y(v) {
                    assert!(eg.is_regular(ev));
                    assert!(eg.is_sink(ext.primed_vertex(v).unwrap()));
                }
            }
            assert_eq!(eg.condition_l(), g.relative_condition_l());
        }
    }

    #[test]
    fn primed_names_avoid_collisions() {
        let raw = RawGraph::default()
            .vertex("v")
            .vertex("v'")
            .edge("e", "v", "v");
        let g = Arc::new(Graph::new(&raw).unwrap());
        let ext = g.extended_graph();
        assert!(ext.graph().vertex_id("v''").is_some());
    }
}
