use std::cmp::Ordering;
use std::fmt;

use super::{EdgeId, Graph, VertexId};

/// A finite path. Length-0 paths are vertices and carry their base; for
/// longer paths `base` is the source of the first edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    base: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    /// The length-0 path at `v`.
    pub fn vertex(v: VertexId) -> Self {
        Path {
            base: v,
            edges: Vec::new(),
        }
    }

    /// The length-1 path along `e`.
    pub fn edge(graph: &Graph, e: EdgeId) -> Self {
        Path {
            base: graph.src(e),
            edges: vec![e],
        }
    }

    /// Builds a path from an edge sequence, checking that consecutive
    /// edges compose. Returns `None` for an empty or broken sequence.
    pub fn from_edges(graph: &Graph, edges: Vec<EdgeId>) -> Option<Self> {
        let first = *edges.first()?;
        for pair in edges.windows(2) {
            if graph.rng(pair[0]) != graph.src(pair[1]) {
                return None;
            }
        }
        Some(Path {
            base: graph.src(first),
            edges,
        })
    }

    pub(crate) fn from_parts_unchecked(base: VertexId, edges: Vec<EdgeId>) -> Self {
        Path { base, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Same as [`Path::is_vertex`].
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn src(&self) -> VertexId {
        self.base
    }

    pub fn rng(&self, graph: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => graph.rng(e),
            None => self.base,
        }
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    /// `self` followed by `other`; `None` unless `rng(self) = src(other)`.
    pub fn concat(&self, graph: &Graph, other: &Path) -> Option<Path> {
        if self.rng(graph) != other.base {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            base: self.base,
            edges,
        })
    }

    /// Appends one edge; `None` if it does not start at `rng(self)`.
    pub fn extended(&self, graph: &Graph, e: EdgeId) -> Option<Path> {
        if self.rng(graph) != graph.src(e) {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Some(Path {
            base: self.base,
            edges,
        })
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, graph: &Graph, prefix: &Path) -> Option<Path> {
        if prefix.base != self.base || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            base: prefix.rng(graph),
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    /// Drops the last edge. Vertices are returned unchanged.
    pub fn without_last(&self, graph: &Graph) -> Path {
        match self.edges.split_last() {
            Some((&e, rest)) => Path {
                base: if rest.is_empty() {
                    graph.src(e)
                } else {
                    self.base
                },
                edges: rest.to_vec(),
            },
            None => self.clone(),
        }
    }

    /// The first `n` edges as a path.
    pub fn prefix(&self, n: usize) -> Path {
        Path {
            base: self.base,
            edges: self.edges[..n].to_vec(),
        }
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

/// Shortlex order: length first, then edge ids, then base vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "Path(v{})", self.base.0)
        } else {
            write!(f, "Path(")?;
            for (i, e) in self.edges.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "e{}", e.0)?;
            }
            write!(f, ")")
        }
    }
}

/// Prints a path as dot-separated edge ids, or the vertex id.
pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.edges.is_empty() {
            return f.write_str(self.graph.vertex_name(self.path.base));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// A cycle: a closed path of positive length visiting each of its source
/// vertices once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    /// Checks closedness and the no-repeated-source condition.
    pub fn new(graph: &Graph, path: Path) -> Option<Self> {
        if path.is_vertex() || path.rng(graph) != path.src() {
            return None;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &e in path.edges() {
            if !seen.insert(graph.src(e)) {
                return None;
            }
        }
        Some(Cycle { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn base(&self) -> VertexId {
        self.path.src()
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    /// Always false: cycles have at least one edge.
    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Source vertices of the edges, in order.
    pub fn vertices(&self, graph: &Graph) -> Vec<VertexId> {
        self.path.edges().iter().map(|&e| graph.src(e)).collect()
    }

    /// The same cycle started at `v`, if `v` lies on it.
    pub fn rotated_to(&self, graph: &Graph, v: VertexId) -> Option<Cycle> {
        let edges = self.path.edges();
        let k = edges.iter().position(|&e| graph.src(e) == v)?;
        let mut rotated = edges[k..].to_vec();
        rotated.extend_from_slice(&edges[..k]);
        Some(Cycle {
            path: Path::from_parts_unchecked(v, rotated),
        })
    }

    /// Rotation starting at the smallest vertex id.
    pub fn canonical(&self, graph: &Graph) -> Cycle {
        let min = self
            .vertices(graph)
            .into_iter()
            .min()
            .expect("cycles are nonempty");
        self.rotated_to(graph, min).expect("vertex lies on the cycle")
    }
}
