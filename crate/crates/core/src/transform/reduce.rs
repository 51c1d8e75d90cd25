//! Reduction of nonzero elements to a vertex, a gap, or a corner.
//!
//! For nonzero `x` we find paths `μ, η` with `μ* x η` equal to `k·u` for a
//! vertex `u`, to `k·(v - Σ e e*)` for some `v ∈ Y`, or to a nonzero element
//! of `w C w` for `w` on an exit-free cycle.
//!
//! 1. Right-multiply by edges until no ghost edges remain. If that gets
//!    stuck at `v` the element has the form `α'·(v - Σ e e*)` with `v ∈ Y`;
//!    left-multiplying by the ghost of the longest path in `α'` isolates the
//!    gap.
//! 2. For a real element `z`, left-multiply by the ghost of its shortest
//!    path `p`; what remains is `k u + Σ k_j γ_j` with `γ_j` closed at `u`.
//!    Either `u` reaches an exit-free cycle (corner) or some path out of `u`
//!    escapes every `γ_j^∞` (vertex).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::TransformError;
use crate::cohn::{CornerDescriptor, Element};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::scalar::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    VertexForm { k: Rational, u: VertexId },
    GapForm { k: Rational, v: VertexId },
    CornerForm { corner: CornerDescriptor, element: Element },
}

/// `μ* x η` has the stated [`Shape`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub mu: Path,
    pub eta: Path,
    pub shape: Shape,
}

impl ReductionOutcome {
    /// The element the shape claims `μ* x η` equals.
    pub fn claimed(&self, graph: &Arc<Graph>) -> Element {
        match &self.shape {
            Shape::VertexForm { k, u } => Element::vertex(graph, *u).scale(k),
            Shape::GapForm { k, v } => Element::gap(graph, *v).scale(k),
            Shape::CornerForm { element, .. } => element.clone(),
        }
    }

    /// Recomputes `μ* x η` and checks it against the shape.
    pub fn verify(&self, x: &Element) -> Result<(), TransformError> {
        let g = x.graph();
        let fail = |msg: String| Err(TransformError::ReplayFailed(msg));
        let y = sandwich(x, &self.mu, &self.eta);
        let claimed = self.claimed(g);
        if y != claimed {
            return fail(format!("μ* x η = {y}, claimed {claimed}"));
        }
        if y.is_zero() {
            return fail("μ* x η is zero".into());
        }
        match &self.shape {
            Shape::GapForm { v, .. } if !g.in_y(*v) => fail("gap at a vertex outside Y".into()),
            Shape::CornerForm { corner, element } => {
                let w = Element::vertex(g, corner.base());
                if w.mul(element).mul(&w) != *element {
                    return fail("corner element is not in w C w".into());
                }
                CornerDescriptor::new(g, corner.base(), corner.cycle().clone())?;
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn report(&self, graph: &Graph) -> String {
        let mut out = String::new();
        out.push_str(&format!("mu: {}\n", self.mu.display(graph)));
        out.push_str(&format!("eta: {}\n", self.eta.display(graph)));
        match &self.shape {
            Shape::VertexForm { k, u } => {
                out.push_str(&format!("shape: vertex k={} u={}\n", fmt_rational(k), graph.vertex_name(*u)));
            }
            Shape::GapForm { k, v } => {
                out.push_str(&format!("shape: gap k={} v={}\n", fmt_rational(k), graph.vertex_name(*v)));
            }
            Shape::CornerForm { corner, element } => {
                out.push_str(&format!(
                    "shape: corner w={} c={}\nelement: {element}\n",
                    graph.vertex_name(corner.base()),
                    corner.cycle().path().display(graph)
                ));
            }
        }
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::VertexForm { k, .. } => write!(f, "VertexForm({})", fmt_rational(k)),
            Shape::GapForm { k, .. } => write!(f, "GapForm({})", fmt_rational(k)),
            Shape::CornerForm { element, .. } => write!(f, "CornerForm({element})"),
        }
    }
}

fn sandwich(x: &Element, mu: &Path, eta: &Path) -> Element {
    let g = x.graph();
    Element::ghost_path(g, mu).mul(x).mul(&Element::path(g, eta))
}

pub fn reduce(x: &Element) -> Result<ReductionOutcome, TransformError> {
    let out = reduce_unchecked(x)?;
    out.verify(x)?;
    Ok(out)
}

/// For homogeneous input the corner case cannot occur.
pub fn reduce_homogeneous(x: &Element) -> Result<ReductionOutcome, TransformError> {
    if x.is_zero() {
        return Err(TransformError::ZeroElement);
    }
    if x.homogeneous_degree().is_none() {
        return Err(TransformError::NotHomogeneous);
    }
    let out = reduce(x)?;
    if matches!(out.shape, Shape::CornerForm { .. }) {
        return Err(TransformError::ReplayFailed(
            "homogeneous element reduced to a corner".into(),
        ));
    }
    Ok(out)
}

fn reduce_unchecked(x: &Element) -> Result<ReductionOutcome, TransformError> {
    if x.is_zero() {
        return Err(TransformError::ZeroElement);
    }
    let g = Arc::clone(x.graph());
    let (v0, mut y) = g
        .vertices()
        .find_map(|v| {
            let y = x.mul(&Element::vertex(&g, v));
            (!y.is_zero()).then_some((v, y))
        })
        .expect("a nonzero element is nonzero on some vertex");
    let mut eta = Path::vertex(v0);

    // Phase 1: remove ghost edges from the right.
    while !y.is_real() {
        let here = eta.rng(&g);
        let step = g.out_edges(here).iter().find_map(|&e| {
            let ye = y.mul(&Element::edge(&g, e));
            (!ye.is_zero()).then_some((e, ye))
        });
        match step {
            Some((e, ye)) => {
                y = ye;
                eta = eta.extended(&g, e).expect("edge leaves rng(η)");
            }
            None => {
                // y = real(y)·(here - Σ e e*) with here ∈ Y.
                let real = y.real_part();
                let (p, k) = real
                    .terms()
                    .max_by(|(a, _), (b, _)| {
                        a.alpha().len().cmp(&b.alpha().len()).then_with(|| b.alpha().cmp(a.alpha()))
                    })
                    .map(|(m, k)| (m.alpha().clone(), k.clone()))
                    .ok_or_else(|| TransformError::ReplayFailed("stuck with no real part".into()))?;
                return Ok(ReductionOutcome {
                    mu: p,
                    eta,
                    shape: Shape::GapForm { k, v: here },
                });
            }
        }
    }

    // Phase 2: y is a nonzero combination of paths ending at rng(η).
    let (first, _) = y.terms().next().expect("nonzero");
    let s = first.alpha().src();
    let z = Element::vertex(&g, s).mul(&y);
    let (m, _) = z.terms().next().expect("s·y keeps the first term");
    let p = m.alpha().clone();
    let z = Element::ghost_path(&g, &p).mul(&z);
    let u = p.rng(&g);
    let k1 = z.coefficient(&crate::cohn::Monomial::vertex(u));
    let loops: Vec<Path> = z
        .terms()
        .filter(|(m, _)| !m.alpha().is_vertex())
        .map(|(m, _)| m.alpha().clone())
        .collect();
    if loops.is_empty() {
        return Ok(ReductionOutcome {
            mu: p,
            eta,
            shape: Shape::VertexForm { k: k1, u },
        });
    }
    let on_exit_free: BTreeSet<VertexId> = g
        .exit_free_cycles()
        .iter()
        .flat_map(|c| c.vertices(&g))
        .collect();
    if let Some(rho) = g.shortest_path_to(u, |v| on_exit_free.contains(&v)) {
        let w = rho.rng(&g);
        let element = Element::ghost_path(&g, &rho).mul(&z).mul(&Element::path(&g, &rho));
        let corner = CornerDescriptor::at(&g, w)?;
        return Ok(ReductionOutcome {
            mu: p.concat(&g, &rho).expect("ρ starts at rng(p)"),
            eta: eta.concat(&g, &rho).expect("ρ starts at rng(η)"),
            shape: Shape::CornerForm { corner, element },
        });
    }
    let tau = escape_path(&g, u, &loops)
        .ok_or_else(|| TransformError::ReplayFailed("no escape from the closed paths".into()))?;
    let end = tau.rng(&g);
    Ok(ReductionOutcome {
        mu: p.concat(&g, &tau).expect("τ starts at rng(p)"),
        eta: eta.concat(&g, &tau).expect("τ starts at rng(η)"),
        shape: Shape::VertexForm { k: k1, u: end },
    })
}

/// Shortest path `τ` from `u` that is a prefix of no `γ^∞`, found by
/// breadth-first search over the positions still tracking some `γ`.
fn escape_path(g: &Graph, u: VertexId, loops: &[Path]) -> Option<Path> {
    type Live = Vec<(usize, usize)>;
    let start: Live = (0..loops.len()).map(|j| (j, 0)).collect();
    let mut seen: BTreeMap<(VertexId, Live), ()> = BTreeMap::new();
    let mut queue: VecDeque<(Path, Live)> = VecDeque::new();
    seen.insert((u, start.clone()), ());
    queue.push_back((Path::vertex(u), start));
    while let Some((tau, live)) = queue.pop_front() {
        let here = tau.rng(g);
        let mut outs: Vec<EdgeId> = g.out_edges(here).to_vec();
        outs.sort();
        for e in outs {
            let next: Live = live
                .iter()
                .filter(|&&(j, pos)| loops[j].edges()[pos] == e)
                .map(|&(j, pos)| (j, (pos + 1) % loops[j].len()))
                .collect();
            let ext = tau.extended(g, e).expect("edge leaves rng(τ)");
            if next.is_empty() {
                return Some(ext);
            }
            let key = (g.rng(e), next.clone());
            if seen.insert(key, ()).is_none() {
                queue.push_back((ext, next));
            }
        }
    }
    None
}
