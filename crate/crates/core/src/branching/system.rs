//! Branching systems: sets `D_v`, `R_e` and bijections `f_e : D_{rng(e)} → R_e`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{AffinePiece, BranchingError, IntervalSet, PAMap, QuadScalar};
use crate::graph::{EdgeId, Graph, VertexId};

type Q = QuadScalar;

#[derive(Clone, Debug)]
pub struct BranchingSystem {
    graph: Arc<Graph>,
    space: IntervalSet,
    d: Vec<IntervalSet>,
    r: Vec<IntervalSet>,
    f: Vec<PAMap>,
}

impl PartialEq for BranchingSystem {
    fn eq(&self, other: &Self) -> bool {
        crate::cohn::same_graph(&self.graph, &other.graph)
            && self.space == other.space
            && self.d == other.d
            && self.r == other.r
            && self.f == other.f
    }
}

/// `θ = √2 − 1`.
pub fn theta() -> Q {
    Q::sqrt2() - Q::one()
}

impl BranchingSystem {
    /// Assembles a system without checking the axioms.
    pub fn from_parts(
        graph: &Arc<Graph>,
        space: IntervalSet,
        d: Vec<IntervalSet>,
        r: Vec<IntervalSet>,
        f: Vec<PAMap>,
    ) -> Result<Self, BranchingError> {
        if d.len() != graph.vertex_count() || r.len() != graph.edge_count() || f.len() != graph.edge_count() {
            return Err(BranchingError::Shape);
        }
        Ok(BranchingSystem {
            graph: Arc::clone(graph),
            space,
            d,
            r,
            f,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn space(&self) -> &IntervalSet {
        &self.space
    }

    pub fn d(&self, v: VertexId) -> &IntervalSet {
        &self.d[v.index()]
    }

    pub fn r(&self, e: EdgeId) -> &IntervalSet {
        &self.r[e.index()]
    }

    pub fn f(&self, e: EdgeId) -> &PAMap {
        &self.f[e.index()]
    }

    pub fn set_d(&mut self, v: VertexId, s: IntervalSet) {
        self.d[v.index()] = s;
    }

    pub fn set_r(&mut self, e: EdgeId, s: IntervalSet) {
        self.r[e.index()] = s;
    }

    pub fn set_f(&mut self, e: EdgeId, f: PAMap) {
        self.f[e.index()] = f;
    }

    /// `f_α = f_{e_1} ∘ … ∘ f_{e_n}` for the edge sequence `α`.
    pub fn f_path(&self, edges: &[EdgeId]) -> PAMap {
        let mut out = self.f(*edges.last().expect("nonempty path")).clone();
        for &e in edges.iter().rev().skip(1) {
            out = self.f(e).compose(&out);
        }
        out
    }
}

/// `D_{v_i} = [i, i+1)` in id order, and the pieces `R_e` of each `D_v`:
/// `N` equal pieces at `X`-vertices, `N + 1` (the last unassigned) at
/// `Y`-vertices.
fn layout(graph: &Graph) -> (IntervalSet, Vec<IntervalSet>, Vec<(Q, Q)>) {
    let n = graph.vertex_count() as i64;
    let space = IntervalSet::interval(Q::zero(), Q::int(n));
    let d: Vec<IntervalSet> = (0..n).map(|i| IntervalSet::interval(Q::int(i), Q::int(i + 1))).collect();
    let mut r = vec![(Q::zero(), Q::zero()); graph.edge_count()];
    for v in graph.vertices() {
        let outs = graph.out_edges(v);
        if outs.is_empty() {
            continue;
        }
        let count = outs.len() as i64 + if graph.in_x(v) { 0 } else { 1 };
        let width = Q::one() / Q::int(count);
        let base = Q::int(v.index() as i64);
        for (k, &e) in outs.iter().enumerate() {
            let l = base.clone() + width.clone() * Q::int(k as i64);
            r[e.index()] = (l.clone(), l + width.clone());
        }
    }
    (space, d, r)
}

/// Affine bijections `D_{rng(e)} → R_e`.
pub fn build_standard_system(graph: &Arc<Graph>) -> BranchingSystem {
    let (space, d, r) = layout(graph);
    let f = graph
        .edges()
        .map(|e| {
            let (a, b) = &d[graph.rng(e).index()].parts()[0];
            let (c, dd) = &r[e.index()];
            PAMap::affine(a, b, c, dd)
        })
        .collect();
    let r = r.into_iter().map(|(l, h)| IntervalSet::interval(l, h)).collect();
    BranchingSystem {
        graph: Arc::clone(graph),
        space,
        d,
        r,
        f,
    }
}

/// `f_e = g̃_e ∘ h_θ ∘ g_e` with `h_θ(x) = x + θ mod 1` and `g_e`, `g̃_e`
/// the affine bijections `D_{rng(e)} → [0,1)` and `[0,1) → R_e`.
pub fn build_rotation_system(graph: &Arc<Graph>) -> BranchingSystem {
    let mut sys = build_standard_system(graph);
    let unit = (Q::zero(), Q::one());
    let th = theta();
    let cut = Q::one() - th.clone();
    let h = PAMap::new(vec![
        AffinePiece {
            l: Q::zero(),
            r: cut.clone(),
            slope: Q::one(),
            offset: th.clone(),
        },
        AffinePiece {
            l: cut,
            r: Q::one(),
            slope: Q::one(),
            offset: th - Q::one(),
        },
    ])
    .expect("rotation pieces are valid");
    for e in graph.edges() {
        let (a, b) = sys.d(graph.rng(e)).parts()[0].clone();
        let (c, d) = sys.r(e).parts()[0].clone();
        let g = PAMap::affine(&a, &b, &unit.0, &unit.1);
        let g_tilde = PAMap::affine(&unit.0, &unit.1, &c, &d);
        sys.f[e.index()] = g_tilde.compose(&h.compose(&g));
    }
    sys
}

/// The axiom a system violates, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// Some `D_v` or `R_e` leaves the ambient space.
    OutsideSpace { name: String },
    /// `R_e ∩ R_f ≠ ∅`.
    Axiom1 { e: String, f: String, overlap: String },
    /// `D_v ∩ D_w ≠ ∅`.
    Axiom2 { v: String, w: String, overlap: String },
    /// `R_e ⊄ D_{src(e)}`.
    Axiom3 { edge: String, excess: String },
    /// `D_v ≠ ∪ R_e` at a vertex of `X`.
    Axiom4 { vertex: String, uncovered: String },
    /// `f_e` is not a bijection `D_{rng(e)} → R_e`.
    Axiom5 { edge: String, reason: String },
}

impl AxiomViolation {
    pub fn axiom(&self) -> usize {
        match self {
            AxiomViolation::OutsideSpace { .. } => 0,
            AxiomViolation::Axiom1 { .. } => 1,
            AxiomViolation::Axiom2 { .. } => 2,
            AxiomViolation::Axiom3 { .. } => 3,
            AxiomViolation::Axiom4 { .. } => 4,
            AxiomViolation::Axiom5 { .. } => 5,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::OutsideSpace { name } => write!(f, "{name} is not contained in the space"),
            AxiomViolation::Axiom1 { e, f: g, overlap } => write!(f, "axiom 1: R_{e} ∩ R_{g} = {overlap}"),
            AxiomViolation::Axiom2 { v, w, overlap } => write!(f, "axiom 2: D_{v} ∩ D_{w} = {overlap}"),
            AxiomViolation::Axiom3 { edge, excess } => write!(f, "axiom 3: R_{edge} \\ D_src = {excess}"),
            AxiomViolation::Axiom4 { vertex, uncovered } => {
                write!(f, "axiom 4: D_{vertex} \\ ∪R_e = {uncovered} at an X-vertex")
            }
            AxiomViolation::Axiom5 { edge, reason } => write!(f, "axiom 5: f_{edge} {reason}"),
        }
    }
}

/// Outcome of [`check_axioms`]: every violation found, in axiom order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&AxiomViolation> {
        self.violations.first()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("AXIOMS HOLD (1-5)");
        }
        for v in &self.violations {
            writeln!(f, "[FAIL] {v}")?;
        }
        f.write_str("AXIOMS VIOLATED")
    }
}

pub fn check_axioms(sys: &BranchingSystem) -> AxiomReport {
    let g = &*sys.graph;
    let mut out = Vec::new();
    for v in g.vertices() {
        if !sys.d(v).is_subset(&sys.space) {
            out.push(AxiomViolation::OutsideSpace {
                name: format!("D_{}", g.vertex_name(v)),
            });
        }
    }
    for e in g.edges() {
        if !sys.r(e).is_subset(&sys.space) {
            out.push(AxiomViolation::OutsideSpace {
                name: format!("R_{}", g.edge_name(e)),
            });
        }
    }
    let edges: Vec<EdgeId> = g.edges().collect();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let overlap = sys.r(e).intersect(sys.r(f));
            if !overlap.is_empty() {
                out.push(AxiomViolation::Axiom1 {
                    e: g.edge_name(e).into(),
                    f: g.edge_name(f).into(),
                    overlap: overlap.to_string(),
                });
            }
        }
    }
    let vertices: Vec<VertexId> = g.vertices().collect();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &vertices[i + 1..] {
            let overlap = sys.d(v).intersect(sys.d(w));
            if !overlap.is_empty() {
                out.push(AxiomViolation::Axiom2 {
                    v: g.vertex_name(v).into(),
                    w: g.vertex_name(w).into(),
                    overlap: overlap.to_string(),
                });
            }
        }
    }
    for &e in &edges {
        let excess = sys.r(e).subtract(sys.d(g.src(e)));
        if !excess.is_empty() {
            out.push(AxiomViolation::Axiom3 {
                edge: g.edge_name(e).into(),
                excess: excess.to_string(),
            });
        }
    }
    for v in g.x_vertices() {
        let covered = g
            .out_edges(v)
            .iter()
            .fold(IntervalSet::empty(), |acc, &e| acc.union(sys.r(e)));
        let uncovered = sys.d(v).subtract(&covered);
        if !uncovered.is_empty() || !covered.is_subset(sys.d(v)) {
            out.push(AxiomViolation::Axiom4 {
                vertex: g.vertex_name(v).into(),
                uncovered: uncovered.to_string(),
            });
        }
    }
    for &e in &edges {
        let f = sys.f(e);
        let reason = if f.domain() != *sys.d(g.rng(e)) {
            Some(format!("has domain {} instead of D_rng = {}", f.domain(), sys.d(g.rng(e))))
        } else if f.range() != *sys.r(e) {
            Some(format!("has range {} instead of R = {}", f.range(), sys.r(e)))
        } else if !f.is_injective() {
            Some("is not injective".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            out.push(AxiomViolation::Axiom5 {
                edge: g.edge_name(e).into(),
                reason,
            });
        }
    }
    out.sort_by_key(AxiomViolation::axiom);
    AxiomReport { violations: out }
}

// --- text format ---------------------------------------------------------

/// ```text
/// space [0,2)
/// D v [0,1)
/// R e [0,1)
/// f e piece [1,2) 1 -1
/// ```
impl fmt::Display for BranchingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &*self.graph;
        writeln!(f, "space {}", self.space)?;
        for v in g.vertices() {
            writeln!(f, "D {} {}", g.vertex_name(v), self.d(v))?;
        }
        for e in g.edges() {
            writeln!(f, "R {} {}", g.edge_name(e), self.r(e))?;
        }
        for e in g.edges() {
            writeln!(f, "f {} {}", g.edge_name(e), self.f(e))?;
        }
        Ok(())
    }
}

fn parse_pieces(text: &str) -> Result<PAMap, String> {
    let mut pieces = Vec::new();
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] != "piece" || i + 3 >= tokens.len() {
            return Err("expected `piece [l,r) slope offset`".into());
        }
        let interval = IntervalSet::parse(tokens[i + 1])?;
        let [(l, r)] = interval.parts() else {
            return Err(format!("bad piece interval `{}`", tokens[i + 1]));
        };
        let slope = Q::parse(tokens[i + 2]).ok_or_else(|| format!("bad slope `{}`", tokens[i + 2]))?;
        let offset = Q::parse(tokens[i + 3]).ok_or_else(|| format!("bad offset `{}`", tokens[i + 3]))?;
        pieces.push(AffinePiece {
            l: l.clone(),
            r: r.clone(),
            slope,
            offset,
        });
        i += 4;
    }
    PAMap::new(pieces)
}

/// Parses the text format; every vertex and edge must be given exactly
/// once. Blank lines and `#` comments are skipped.
pub fn parse_system(graph: &Arc<Graph>, text: &str) -> Result<BranchingSystem, BranchingError> {
    let mut space = None;
    let mut d: Vec<Option<IntervalSet>> = vec![None; graph.vertex_count()];
    let mut r: Vec<Option<IntervalSet>> = vec![None; graph.edge_count()];
    let mut f: Vec<Option<PAMap>> = vec![None; graph.edge_count()];
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| BranchingError::Parse { line: line_no, message };
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if kw == "space" {
            space = Some(IntervalSet::parse(rest).map_err(err)?);
            continue;
        }
        let (id, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        match kw {
            "D" => {
                let v = graph.vertex_id(id).ok_or_else(|| err(format!("unknown vertex `{id}`")))?;
                if d[v.index()].replace(IntervalSet::parse(body).map_err(err)?).is_some() {
                    return Err(err(format!("D_{id} given twice")));
                }
            }
            "R" => {
                let e = graph.edge_id(id).ok_or_else(|| err(format!("unknown edge `{id}`")))?;
                if r[e.index()].replace(IntervalSet::parse(body).map_err(err)?).is_some() {
                    return Err(err(format!("R_{id} given twice")));
                }
            }
            "f" => {
                let e = graph.edge_id(id).ok_or_else(|| err(format!("unknown edge `{id}`")))?;
                if f[e.index()].replace(parse_pieces(body).map_err(err)?).is_some() {
                    return Err(err(format!("f_{id} given twice")));
                }
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let missing = |what: String| BranchingError::Parse {
        line: text.lines().count(),
        message: format!("{what} is missing"),
    };
    let space = space.ok_or_else(|| missing("space".into()))?;
    let d = graph
        .vertices()
        .map(|v| d[v.index()].take().ok_or_else(|| missing(format!("D_{}", graph.vertex_name(v)))))
        .collect::<Result<_, _>>()?;
    let r = graph
        .edges()
        .map(|e| r[e.index()].take().ok_or_else(|| missing(format!("R_{}", graph.edge_name(e)))))
        .collect::<Result<_, _>>()?;
    let f = graph
        .edges()
        .map(|e| f[e.index()].take().ok_or_else(|| missing(format!("f_{}", graph.edge_name(e)))))
        .collect::<Result<_, _>>()?;
    BranchingSystem::from_parts(graph, space, d, r, f)
}
