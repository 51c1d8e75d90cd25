//! Injectivity certificates for homomorphisms given on generators.
//!
//! Three checkers, all reducing injectivity to finitely many nonvanishing
//! conditions:
//!
//! * graded: the target is graded, the map preserves degrees, vertices and
//!   gaps at `Y`-vertices map to nonzero elements;
//! * Cuntz–Krieger: every cycle has an exit, and the same vertex/gap
//!   conditions;
//! * relative Cuntz–Krieger: every exit-free cycle passes through `Y`,
//!   vertices outside `Y`, gaps, and `Σ e e*` at `Y`-vertices all map to
//!   nonzero elements.

use std::fmt;

use thiserror::Error;

use super::{Generator, GeneratorAssignment, TargetRing};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniquenessError {
    #[error("condition (L) fails: cycle {cycle} has no exit")]
    ConditionLFails { cycle: String },
    #[error("relative condition (L) fails: cycle {cycle} has no exit and avoids Y")]
    RelativeConditionLFails { cycle: String },
    #[error("relation {relation} is violated by the assignment")]
    RelationViolation { relation: String },
    #[error("target is not graded compatibly at generator {generator}")]
    NotGraded { generator: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Graded,
    CuntzKrieger,
    RelativeCuntzKrieger,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Graded => "graded uniqueness",
            CheckKind::CuntzKrieger => "Cuntz-Krieger uniqueness",
            CheckKind::RelativeCuntzKrieger => "relative Cuntz-Krieger uniqueness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisKind {
    GraphCondition,
    DegreePreserving,
    VertexNonzero(VertexId),
    GapNonzero(VertexId),
    EdgeSumNonzero(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub kind: HypothesisKind,
    pub statement: String,
    pub holds: bool,
    /// Source element (in the element DSL) whose image vanishes.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub check: CheckKind,
    pub hypotheses: Vec<Hypothesis>,
}

impl Certificate {
    pub fn injective(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn first_failure(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.holds)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: {}", self.check)?;
        for h in &self.hypotheses {
            write!(f, "[{}] {}", if h.holds { "pass" } else { "FAIL" }, h.statement)?;
            if let Some(w) = &h.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        if self.injective() {
            writeln!(f, "INJECTIVE")
        } else {
            writeln!(f, "NOT INJECTIVE")
        }
    }
}

fn graph_hypothesis(statement: &str) -> Hypothesis {
    Hypothesis {
        kind: HypothesisKind::GraphCondition,
        statement: statement.to_string(),
        holds: true,
        witness: None,
    }
}

fn nonzero<T: TargetRing>(kind: HypothesisKind, source: String, image: &T) -> Hypothesis {
    let holds = !image.is_zero();
    Hypothesis {
        kind,
        statement: format!("pi({source}) != 0"),
        holds,
        witness: (!holds).then_some(source),
    }
}

fn vertex_hyp<T: TargetRing>(g: &Graph, a: &GeneratorAssignment<T>, v: VertexId) -> Hypothesis {
    nonzero(HypothesisKind::VertexNonzero(v), g.vertex_name(v).to_string(), a.vertex(v))
}

fn gap_source(g: &Graph, v: VertexId) -> String {
    let sum: Vec<String> = g
        .out_edges(v)
        .iter()
        .map(|&e| format!("{0}.{0}^", g.edge_name(e)))
        .collect();
    format!("{} - {}", g.vertex_name(v), sum.join(" - "))
}

fn gap_hyp<T: TargetRing>(g: &Graph, a: &GeneratorAssignment<T>, v: VertexId) -> Hypothesis {
    nonzero(HypothesisKind::GapNonzero(v), gap_source(g, v), &a.gap(v))
}

fn edge_sum_hyp<T: TargetRing>(g: &Graph, a: &GeneratorAssignment<T>, v: VertexId) -> Hypothesis {
    let sum: Vec<String> = g
        .out_edges(v)
        .iter()
        .map(|&e| format!("{0}.{0}^", g.edge_name(e)))
        .collect();
    nonzero(HypothesisKind::EdgeSumNonzero(v), sum.join(" + "), &a.edge_sum(v))
}

/// Vertices everywhere and gaps at `Y`.
fn vertex_and_gap<T: TargetRing>(a: &GeneratorAssignment<T>) -> Vec<Hypothesis> {
    let g = &**a.graph();
    let mut out: Vec<Hypothesis> = g.vertices().map(|v| vertex_hyp(g, a, v)).collect();
    out.extend(g.y_vertices().map(|v| gap_hyp(g, a, v)));
    out
}

fn check_degrees<T: TargetRing>(a: &GeneratorAssignment<T>) -> Result<(), UniquenessError> {
    let g = &**a.graph();
    let gens = g
        .vertices()
        .map(|v| (Generator::Vertex(v), 0, g.vertex_name(v).to_string()))
        .chain(g.edges().map(|e| (Generator::Edge(e), 1, g.edge_name(e).to_string())))
        .chain(g.edges().map(|e| (Generator::Ghost(e), -1, format!("{}^", g.edge_name(e)))));
    for (gen, degree, name) in gens {
        let comps = a
            .image(gen)
            .graded_components()
            .ok_or_else(|| UniquenessError::NotGraded { generator: name.clone() })?;
        if comps.iter().any(|(d, c)| *d != degree && !c.is_zero()) {
            return Err(UniquenessError::NotGraded { generator: name });
        }
    }
    Ok(())
}

pub fn check_graded_uniqueness<T: TargetRing>(a: &GeneratorAssignment<T>) -> Result<Certificate, UniquenessError> {
    check_degrees(a)?;
    let mut hypotheses = vec![Hypothesis {
        kind: HypothesisKind::DegreePreserving,
        statement: "generators map to homogeneous elements of their degree".into(),
        holds: true,
        witness: None,
    }];
    hypotheses.extend(vertex_and_gap(a));
    Ok(Certificate {
        check: CheckKind::Graded,
        hypotheses,
    })
}

pub fn check_ck_uniqueness<T: TargetRing>(a: &GeneratorAssignment<T>) -> Result<Certificate, UniquenessError> {
    let g = &**a.graph();
    if let Some(c) = g.exit_free_cycles().first() {
        return Err(UniquenessError::ConditionLFails {
            cycle: c.path().display(g).to_string(),
        });
    }
    let mut hypotheses = vec![graph_hypothesis("condition (L): every cycle has an exit")];
    hypotheses.extend(vertex_and_gap(a));
    Ok(Certificate {
        check: CheckKind::CuntzKrieger,
        hypotheses,
    })
}

pub fn check_relative_ck_uniqueness<T: TargetRing>(
    a: &GeneratorAssignment<T>,
) -> Result<Certificate, UniquenessError> {
    let g = &**a.graph();
    if let Some(c) = g.exit_free_cycles_avoiding_y().first() {
        return Err(UniquenessError::RelativeConditionLFails {
            cycle: c.path().display(g).to_string(),
        });
    }
    let mut hypotheses = vec![graph_hypothesis(
        "relative condition (L): every exit-free cycle passes through Y",
    )];
    hypotheses.extend(g.vertices().filter(|&v| !g.in_y(v)).map(|v| vertex_hyp(g, a, v)));
    hypotheses.extend(g.y_vertices().map(|v| gap_hyp(g, a, v)));
    hypotheses.extend(g.y_vertices().map(|v| edge_sum_hyp(g, a, v)));
    Ok(Certificate {
        check: CheckKind::RelativeCuntzKrieger,
        hypotheses,
    })
}
