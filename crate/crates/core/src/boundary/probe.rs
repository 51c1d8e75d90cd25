//! Bounded computational checks on the skew ring model: the partial action
//! axioms, linear independence of monomial images, and maximal
//! commutativity of the diagonal.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{act, finite_boundary_points, skew_generators, u_set, CylinderSet, FreeWord, SkewElement};
use crate::cohn::{normal_monomials, Element};
use crate::graph::{Graph, Path};
use crate::linalg::column_rank;
use crate::scalar::Rational;
use crate::transform::TargetRing;

/// Result of [`max_commutativity_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutativityVerdict {
    /// `1_t δ_t` commutes with every diagonal generator tried.
    NotMaximal { witness: FreeWord, generators: usize },
    /// Every candidate `t` up to the bound fails to commute with some
    /// diagonal generator.
    MaximalUpToBound { bound: usize, candidates: usize },
}

impl CommutativityVerdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, CommutativityVerdict::MaximalUpToBound { .. })
    }

    pub fn describe(&self, graph: &Graph) -> String {
        match self {
            CommutativityVerdict::NotMaximal { witness, generators } => format!(
                "NOT MAXIMAL: 1_t δ_t with t = {} commutes with all {generators} diagonal generators",
                witness.display(graph)
            ),
            CommutativityVerdict::MaximalUpToBound { bound, candidates } => format!(
                "MAXIMAL UP TO BOUND {bound}: all {candidates} candidate words fail to commute"
            ),
        }
    }
}

/// `1_q δ_0` for paths `|q| ≤ bound`, plus the point indicators at
/// `Y`-vertices.
fn diagonal_generators(graph: &Arc<Graph>, bound: usize) -> Vec<SkewElement> {
    let mut out: Vec<SkewElement> = graph
        .paths_up_to(bound)
        .iter()
        .map(|q| SkewElement::projection(graph, q))
        .collect();
    for v in graph.y_vertices() {
        let p = CylinderSet::point(graph, &Path::vertex(v)).expect("Y-vertices are boundary ends");
        out.push(SkewElement::diagonal(p.indicator()));
    }
    out
}

fn commutes(x: &SkewElement, y: &SkewElement) -> bool {
    x.mul(y) == y.mul(x)
}

/// Searches words `t ≠ 0` with `|t| ≤ bound` and `U_t ∩ U_{t⁻¹} ≠ ∅` for one
/// whose `1_t δ_t` commutes with the diagonal generators.
pub fn max_commutativity_probe(graph: &Arc<Graph>, bound: usize) -> CommutativityVerdict {
    let gens = diagonal_generators(graph, bound);
    let candidates: Vec<FreeWord> = FreeWord::with_nonempty_domain(graph, bound)
        .into_iter()
        .filter(|t| !u_set(graph, t).intersect(&u_set(graph, &t.inverse())).is_empty())
        .collect();
    for t in &candidates {
        let x = SkewElement::unit_on(graph, t.clone());
        if gens.iter().all(|g| commutes(&x, g)) {
            return CommutativityVerdict::NotMaximal {
                witness: t.clone(),
                generators: gens.len(),
            };
        }
    }
    CommutativityVerdict::MaximalUpToBound {
        bound,
        candidates: candidates.len(),
    }
}

/// Checks that `1_t δ_t` commutes with all diagonal generators up to
/// `bound`.
pub fn commutes_with_diagonal(graph: &Arc<Graph>, t: &FreeWord, bound: usize) -> bool {
    let x = SkewElement::unit_on(graph, t.clone());
    diagonal_generators(graph, bound).iter().all(|g| commutes(&x, g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub monomials: usize,
    pub rank: usize,
    pub sample_points: usize,
    /// A vanishing combination of monomials, in the element DSL.
    pub kernel_witness: Option<String>,
}

impl RankReport {
    pub fn independent(&self) -> bool {
        self.rank == self.monomials
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Sample {
    Point(Path),
    Cylinder(Path),
}

/// Rank of the skew-ring images of all normal monomials with
/// `|α|, |β| ≤ max_len`, evaluating each coefficient function at the finite
/// boundary points of length `≤ depth` and on the cylinders of length
/// `depth`.
pub fn monomial_image_rank(graph: &Arc<Graph>, max_len: usize, depth: usize) -> RankReport {
    let assign = skew_generators(graph).expect("skew generators satisfy the relations");
    let monomials = normal_monomials(graph, max_len);
    let mut samples: Vec<Sample> = finite_boundary_points(graph, depth)
        .into_iter()
        .map(Sample::Point)
        .collect();
    samples.extend(
        graph
            .paths_up_to(depth)
            .into_iter()
            .filter(|p| p.len() == depth)
            .map(Sample::Cylinder),
    );
    let mut columns = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let image = assign.evaluate_monomial(m);
        let mut col: BTreeMap<(FreeWord, Sample), Rational> = BTreeMap::new();
        for (t, a) in image.terms() {
            for s in &samples {
                let value = match s {
                    Sample::Point(p) => a.value_at_point(p),
                    Sample::Cylinder(p) => a.value_on_cylinder(p),
                };
                let value = value.expect("coefficient functions are shallower than the sample depth");
                if !num_traits::Zero::is_zero(&value) {
                    col.insert((t.clone(), s.clone()), value);
                }
            }
        }
        columns.push(col);
    }
    let result = column_rank(&columns);
    let kernel_witness = result.kernel.first().map(|k| {
        let mut x = Element::zero(graph);
        for (&j, c) in k {
            x = x.add(&Element::term(graph, monomials[j].clone(), c.clone()));
        }
        x.to_string()
    });
    RankReport {
        monomials: monomials.len(),
        rank: result.rank,
        sample_points: samples.len(),
        kernel_witness,
    }
}

/// Verifies, for words up to length `max_len`:
/// `θ_0 = id`, `θ_t(U_{t⁻¹} ∩ U_s) = U_t ∩ U_{ts}`, and
/// `θ_t ∘ θ_s = θ_{ts}` on `U_{s⁻¹} ∩ U_{(ts)⁻¹}` (tested on its
/// intersections with cylinders of length ≤ 1). Returns the number of
/// checks performed.
pub fn check_partial_action(graph: &Arc<Graph>, max_len: usize) -> Result<usize, String> {
    let mut cache: HashMap<FreeWord, CylinderSet> = HashMap::new();
    let mut u = |t: &FreeWord| -> CylinderSet {
        cache
            .entry(t.clone())
            .or_insert_with(|| u_set(graph, t))
            .clone()
    };
    let show = |t: &FreeWord| t.display(graph).to_string();
    let mut checks = 0;
    let probes: Vec<CylinderSet> = graph
        .paths_up_to(1)
        .iter()
        .map(|q| CylinderSet::cylinder(graph, q))
        .collect();
    let id = FreeWord::identity();
    for a in &probes {
        checks += 1;
        if act(&id, a).map_err(|e| e.to_string())? != *a {
            return Err("θ_0 is not the identity".into());
        }
    }
    let mut active = vec![id.clone()];
    active.extend(FreeWord::with_nonempty_domain(graph, max_len));
    let mut all = vec![id];
    all.extend(FreeWord::all_up_to(graph, max_len));
    for t in &active {
        let ut = u(t);
        let ut_inv = u(&t.inverse());
        for s in &all {
            let us = u(s);
            let uts = u(&t.mul(s));
            let lhs = act(t, &ut_inv.intersect(&us)).map_err(|e| e.to_string())?;
            checks += 1;
            if lhs != ut.intersect(&uts) {
                return Err(format!(
                    "θ_t(U_t⁻¹ ∩ U_s) ≠ U_t ∩ U_ts for t = {}, s = {}",
                    show(t),
                    show(s)
                ));
            }
        }
    }
    for t in &active {
        for s in &active {
            let ts = t.mul(s);
            let domain = u(&s.inverse()).intersect(&u(&ts.inverse()));
            for probe in std::iter::once(domain.clone()).chain(probes.iter().map(|p| p.intersect(&domain))) {
                let once = act(&ts, &probe).map_err(|e| e.to_string())?;
                let twice = act(s, &probe)
                    .and_then(|x| act(t, &x))
                    .map_err(|e| format!("{e} (t = {}, s = {})", show(t), show(s)))?;
                checks += 1;
                if once != twice {
                    return Err(format!("θ_t θ_s ≠ θ_ts for t = {}, s = {}", show(t), show(s)));
                }
            }
        }
    }
    Ok(checks)
}
