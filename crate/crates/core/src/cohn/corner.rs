//! Spanning sets for corners `w C w` at exit-free cycles.

use std::sync::Arc;

use super::{AlgebraError, Element};
use crate::graph::{Cycle, Graph, Path, VertexId};
use crate::scalar::Field;

/// An exit-free cycle `c = e_1 … e_n` based at `w`, with the marker set
/// `{k : 1 ≤ k ≤ n, s(e_k) ∈ Y}`. Index `0` (`μ_0 = w`) is always used in
/// addition to the markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerDescriptor {
    base: VertexId,
    cycle: Cycle,
    markers: Vec<usize>,
}

impl CornerDescriptor {
    pub fn new(graph: &Graph, base: VertexId, cycle: Cycle) -> Result<Self, AlgebraError> {
        if cycle.base() != base {
            return Err(AlgebraError::InvalidCorner(format!(
                "cycle is not based at {}",
                graph.vertex_name(base)
            )));
        }
        if cycle.vertices(graph).iter().any(|&v| graph.out_edges(v).len() != 1) {
            return Err(AlgebraError::InvalidCorner(format!(
                "cycle {} has an exit",
                cycle.path().display(graph)
            )));
        }
        let markers = cycle
            .path()
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &e)| graph.in_y(graph.src(e)))
            .map(|(i, _)| i + 1)
            .collect();
        Ok(CornerDescriptor {
            base,
            cycle,
            markers,
        })
    }

    /// The exit-free cycle through `w`, if any.
    pub fn at(graph: &Graph, w: VertexId) -> Result<Self, AlgebraError> {
        let cycle = graph.exit_free_cycle_at(w).ok_or_else(|| {
            AlgebraError::InvalidCorner(format!(
                "no exit-free cycle through {}",
                graph.vertex_name(w)
            ))
        })?;
        Self::new(graph, w, cycle)
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn markers(&self) -> &[usize] {
        &self.markers
    }

    /// `0` followed by the markers.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = vec![0];
        out.extend(self.markers.iter().copied().filter(|&k| k != 0));
        out
    }

    /// `μ_k = e_1 … e_k`, with `μ_0 = w`.
    pub fn mu(&self, k: usize) -> Path {
        self.cycle.path().prefix(k)
    }
}

/// `c^i μ_k μ_k* (c*)^j` for `0 ≤ i ≤ imax`, `0 ≤ j ≤ jmax` and every index
/// `k` of the corner, computed by multiplication.
pub fn corner_spanning_monomials<K: Field>(
    graph: &Arc<Graph>,
    corner: &CornerDescriptor,
    imax: usize,
    jmax: usize,
) -> Result<Vec<Element<K>>, AlgebraError> {
    // Re-validate against this graph.
    let corner = CornerDescriptor::new(graph, corner.base, corner.cycle.clone())?;
    let c: Element<K> = Element::path(graph, corner.cycle.path());
    let cs = c.star();
    let w: Element<K> = Element::vertex(graph, corner.base);
    let mut left = vec![w.clone()];
    let mut right = vec![w];
    for i in 1..=imax.max(jmax) {
        if i <= imax {
            left.push(left[i - 1].mul(&c));
        }
        if i <= jmax {
            right.push(right[i - 1].mul(&cs));
        }
    }
    let mut out = Vec::new();
    for li in &left {
        for k in corner.indices() {
            let mu = corner.mu(k);
            let proj = Element::monomial(graph, mu.clone(), mu).expect("same path");
            let lp = li.mul(&proj);
            for rj in &right {
                out.push(lp.mul(rj));
            }
        }
    }
    Ok(out)
}
