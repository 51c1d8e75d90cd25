//! The relative boundary path space `∂_X(E)` and the partial skew group
//! ring `D(∂_X(E)) ⋊ F`.
//!
//! `∂_X(E)` consists of the infinite paths together with the finite paths
//! ending at a sink or at a vertex of `Y`. Subsets and functions are the
//! locally constant ones, stored as canonical tries (see [`trie`]). The
//! free group `F` on the edges acts partially: `t = a b⁻¹` maps `U_{t⁻¹}`
//! onto `U_t` by replacing the prefix `b` with `a`.

mod probe;
mod skew;
mod text;
pub mod trie;
mod word;

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, Path, VertexId};

pub use probe::{
    check_partial_action, commutes_with_diagonal, max_commutativity_probe, monomial_image_rank, CommutativityVerdict, RankReport,
};
pub use skew::{skew_generators, SkewElement};
pub use text::{format_cylinder_set, format_dfunction, parse_cylinder_set, parse_dfunction, parse_skew};
pub use trie::{CylinderSet, DFunction, LocallyConstant, TrieValue};
pub use word::{FreeWord, Letter, WordShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("support is not contained in the domain U of word {word}")]
    DomainViolation { word: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// `U_v = Z(v)`: the boundary paths starting at `v`.
pub fn u_vertex(graph: &Arc<Graph>, v: VertexId) -> CylinderSet {
    CylinderSet::cylinder(graph, &Path::vertex(v))
}

/// `U_t`: everything for the identity, `Z(a)` for `t = a b⁻¹` with `a`
/// nonempty, `Z(r(b))` for `t = b⁻¹`, and empty otherwise.
pub fn u_set(graph: &Arc<Graph>, t: &FreeWord) -> CylinderSet {
    match t.shape(graph) {
        WordShape::Identity => CylinderSet::full(graph),
        WordShape::Forward { a, .. } => CylinderSet::cylinder(graph, &a),
        WordShape::Backward { b } => u_vertex(graph, b.rng(graph)),
        WordShape::Degenerate => CylinderSet::empty(graph),
    }
}

/// `f ∘ θ_{t⁻¹}`: moves a function supported in `U_{t⁻¹}` to `U_t`.
pub fn transport<V: TrieValue>(t: &FreeWord, f: &LocallyConstant<V>) -> Result<LocallyConstant<V>, BoundaryError> {
    let graph = f.graph();
    let domain = u_set(graph, &t.inverse());
    if !f.support().is_subset(&domain) {
        return Err(BoundaryError::DomainViolation {
            word: t.inverse().display(graph).to_string(),
        });
    }
    Ok(match t.shape(graph) {
        WordShape::Identity => f.clone(),
        WordShape::Forward { a, b } => LocallyConstant::graft(graph, &a, f.subtree(&b)),
        WordShape::Backward { b } => {
            LocallyConstant::graft(graph, &Path::vertex(b.rng(graph)), f.subtree(&b))
        }
        WordShape::Degenerate => LocallyConstant::zero(graph),
    })
}

/// `θ_t(A)` for `A ⊆ U_{t⁻¹}`.
pub fn act(t: &FreeWord, a: &CylinderSet) -> Result<CylinderSet, BoundaryError> {
    transport(t, a)
}

/// `α_t(f) = f ∘ θ_{t⁻¹}` for `f` supported in `U_{t⁻¹}`.
pub fn alpha<K: crate::scalar::Field>(t: &FreeWord, f: &DFunction<K>) -> Result<DFunction<K>, BoundaryError> {
    transport(t, f)
}

/// Finite boundary points of length at most `n`, in path order.
pub fn finite_boundary_points(graph: &Graph, n: usize) -> Vec<Path> {
    graph
        .paths_up_to(n)
        .into_iter()
        .filter(|p| graph.is_boundary_end(p.rng(graph)))
        .collect()
}
