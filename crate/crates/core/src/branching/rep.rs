//! The representation `π` on piecewise-constant functions, and the
//! faithfulness checks.

use std::collections::BTreeMap;
use std::fmt;

use super::{BranchingError, BranchingSystem, FixedSet, IntervalSet, ModFunction, PAMap, QuadScalar};
use crate::cohn::{normal_monomials, same_graph, Element, Monomial};
use crate::graph::{Cycle, Graph};
use crate::linalg::column_rank;
use crate::scalar::Rational;

type Q = QuadScalar;

/// `π(αβ*)φ`: apply `S_{b_1}*, …, S_{b_m}*`, then `S_{a_n}, …, S_{a_1}`,
/// after projecting onto `D_{rng}`.
pub fn apply_monomial(sys: &BranchingSystem, m: &Monomial, phi: &ModFunction) -> ModFunction {
    let mut cur = phi.restrict(sys.d(m.beta().src()));
    for &e in m.beta().edges() {
        // S_e* φ = χ_{D_rng(e)} · φ ∘ f_e
        cur = sys.f(e).pullback(&cur);
    }
    for &e in m.alpha().edges().iter().rev() {
        // S_e φ = χ_{R_e} · φ ∘ f_e⁻¹
        cur = sys.f(e).pushforward(&cur);
    }
    cur
}

/// `π(x)φ`.
pub fn rep_apply(sys: &BranchingSystem, x: &Element, phi: &ModFunction) -> Result<ModFunction, BranchingError> {
    if !same_graph(sys.graph(), x.graph()) {
        return Err(BranchingError::GraphMismatch);
    }
    let mut out = ModFunction::zero();
    for (m, c) in x.terms() {
        out = out.add(&apply_monomial(sys, m, phi).scale(c));
    }
    Ok(out)
}

/// The cycles subject to the fixed-point condition: exit-free, with every
/// edge source outside `Y`.
pub fn constrained_cycles(graph: &Graph) -> Vec<Cycle> {
    graph.exit_free_cycles_avoiding_y()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Faithfulness {
    Faithful { m_bound: usize },
    /// Some `D_v` or `R_e` is empty.
    EmptySet { name: String },
    /// `D_v = ∪ R_e` at a `Y`-vertex.
    Covered { vertex: String },
    /// `D_w ⊆ ∪_{j ≤ power} Fix(f_c^j)`.
    FixedPoints {
        cycle: String,
        power: usize,
        fixed: String,
        base: String,
    },
}

impl Faithfulness {
    pub fn is_faithful(&self) -> bool {
        matches!(self, Faithfulness::Faithful { .. })
    }

    pub fn condition(&self) -> Option<usize> {
        match self {
            Faithfulness::Faithful { .. } => None,
            Faithfulness::EmptySet { .. } => Some(1),
            Faithfulness::Covered { .. } => Some(2),
            Faithfulness::FixedPoints { .. } => Some(3),
        }
    }
}

impl fmt::Display for Faithfulness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Faithfulness::Faithful { .. } => f.write_str("FAITHFUL (conditions 1-3 hold)"),
            Faithfulness::EmptySet { name } => write!(f, "NOT FAITHFUL: condition 1 fails: {name} = ∅"),
            Faithfulness::Covered { vertex } => write!(
                f,
                "NOT FAITHFUL: condition 2 fails: D_{vertex} = ∪ R_e although {vertex} ∈ Y"
            ),
            Faithfulness::FixedPoints {
                cycle,
                power,
                fixed,
                base,
            } => write!(
                f,
                "NOT FAITHFUL: condition 3 fails for c = {cycle} at j = {power}: Fix(f_c^j) = {fixed} covers D_{base}"
            ),
        }
    }
}

/// The three conditions of the faithfulness criterion, with fixed sets of
/// the powers `f_c^j`, `1 ≤ j ≤ m_bound`.
pub fn faithfulness_conditions(sys: &BranchingSystem, m_bound: usize) -> Faithfulness {
    let g = &**sys.graph();
    for v in g.vertices() {
        if sys.d(v).is_empty() {
            return Faithfulness::EmptySet {
                name: format!("D_{}", g.vertex_name(v)),
            };
        }
    }
    for e in g.edges() {
        if sys.r(e).is_empty() {
            return Faithfulness::EmptySet {
                name: format!("R_{}", g.edge_name(e)),
            };
        }
    }
    for v in g.y_vertices() {
        let covered = g
            .out_edges(v)
            .iter()
            .fold(IntervalSet::empty(), |acc, &e| acc.union(sys.r(e)));
        if *sys.d(v) == covered {
            return Faithfulness::Covered {
                vertex: g.vertex_name(v).into(),
            };
        }
    }
    for c in constrained_cycles(g) {
        let w = c.base();
        let fc = sys.f_path(c.path().edges());
        let dw = sys.d(w);
        let mut fixed = IntervalSet::empty();
        for j in 1..=m_bound {
            let fix: FixedSet = fc.power(j).fixed_set();
            fixed = fixed.union(&fix.intervals);
            // finitely many isolated points never exhaust an interval
            if dw.subtract(&fixed).is_empty() {
                return Faithfulness::FixedPoints {
                    cycle: c.path().display(g).to_string(),
                    power: j,
                    fixed: fix.to_string(),
                    base: g.vertex_name(w).into(),
                };
            }
        }
    }
    Faithfulness::Faithful { m_bound }
}

/// Breakpoints of all `D_v`, `R_e` and map pieces, closed `rounds` times
/// under images and preimages of every `f_e`.
fn refined_breakpoints(sys: &BranchingSystem, rounds: usize) -> Vec<Q> {
    let g = &**sys.graph();
    let mut pts: Vec<Q> = Vec::new();
    let push_set = |s: &IntervalSet, pts: &mut Vec<Q>| {
        for (l, r) in s.parts() {
            pts.push(l.clone());
            pts.push(r.clone());
        }
    };
    push_set(sys.space(), &mut pts);
    for v in g.vertices() {
        push_set(sys.d(v), &mut pts);
    }
    for e in g.edges() {
        push_set(sys.r(e), &mut pts);
        for p in sys.f(e).pieces() {
            pts.push(p.l.clone());
            pts.push(p.r.clone());
        }
    }
    pts.sort();
    pts.dedup();
    let maps: Vec<PAMap> = g.edges().flat_map(|e| [sys.f(e).clone(), sys.f(e).inverse()]).collect();
    for _ in 0..rounds {
        let mut next = pts.clone();
        for f in &maps {
            for p in f.pieces() {
                for x in &pts {
                    if &p.l <= x && x <= &p.r {
                        next.push(p.apply(x));
                    }
                }
            }
        }
        next.sort();
        next.dedup();
        pts = next;
    }
    pts
}

/// Indicators of the atoms of the refined partition of the space.
pub fn test_functions(sys: &BranchingSystem, rounds: usize) -> Vec<ModFunction> {
    let pts = refined_breakpoints(sys, rounds);
    pts.windows(2)
        .filter(|w| sys.space().contains(&w[0]))
        .map(|w| ModFunction::indicator(&IntervalSet::interval(w[0].clone(), w[1].clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCheck {
    pub monomials: usize,
    pub test_functions: usize,
    pub rank: usize,
    /// A combination of monomials acting as zero.
    pub kernel_witness: Option<Element>,
    pub faithfulness: Faithfulness,
}

impl RankCheck {
    pub fn full_rank(&self) -> bool {
        self.rank == self.monomials
    }

    /// Full rank exactly when the faithfulness conditions hold.
    pub fn consistent(&self) -> bool {
        self.full_rank() == self.faithfulness.is_faithful()
    }
}

impl fmt::Display for RankCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "rank {} of {} monomials on {} test functions",
            self.rank, self.monomials, self.test_functions
        )?;
        if let Some(k) = &self.kernel_witness {
            writeln!(f, "kernel witness: {k}")?;
        }
        writeln!(f, "conditions: {}", self.faithfulness)?;
        f.write_str(match (self.full_rank(), self.consistent()) {
            (true, true) => "FULL RANK (consistent)",
            (false, true) => "RANK DEFICIENT (consistent)",
            (_, false) => "INCONSISTENT",
        })
    }
}

/// Applies `π` to every normal monomial with `|α|, |β| ≤ deg_bound` and
/// every test function, evaluates at the midpoints of the common
/// refinement of all results, and computes the exact rank.
pub fn injectivity_rank_check(sys: &BranchingSystem, deg_bound: usize, m_bound: usize) -> RankCheck {
    let g = sys.graph();
    let monomials = normal_monomials(g, deg_bound);
    let tests = test_functions(sys, deg_bound + 1);
    let images: Vec<Vec<ModFunction>> = monomials
        .iter()
        .map(|m| tests.iter().map(|phi| apply_monomial(sys, m, phi)).collect())
        .collect();
    let mut pts: Vec<Q> = images.iter().flatten().flat_map(ModFunction::breakpoints).collect();
    pts.sort();
    pts.dedup();
    let mids: Vec<Q> = pts.windows(2).map(|w| Q::midpoint(&w[0], &w[1])).collect();
    let columns: Vec<BTreeMap<(usize, usize), Rational>> = images
        .iter()
        .map(|row| {
            let mut col = BTreeMap::new();
            for (i, psi) in row.iter().enumerate() {
                for (k, x) in mids.iter().enumerate() {
                    let v = psi.eval(x);
                    if !num_traits::Zero::is_zero(&v) {
                        col.insert((i, k), v);
                    }
                }
            }
            col
        })
        .collect();
    let result = column_rank(&columns);
    let to_element = |k: &BTreeMap<usize, Rational>| {
        k.iter().fold(Element::zero(g), |acc, (&j, c)| {
            acc.add(&Element::term(g, monomials[j].clone(), c.clone()))
        })
    };
    // Prefer a relation among real paths (the `c^j − w` shape) when one exists.
    let kernel_witness = result
        .kernel
        .iter()
        .map(to_element)
        .find(|x| x.is_real())
        .or_else(|| result.kernel.first().map(to_element));
    RankCheck {
        monomials: monomials.len(),
        test_functions: tests.len(),
        rank: result.rank,
        kernel_witness,
        faithfulness: faithfulness_conditions(sys, m_bound),
    }
}

/// The standard layout with `f_e` the identity wherever `R_e = D_{rng(e)}`
/// (for a loop at an `X`-vertex with one edge, `f_c = id`).
pub fn build_identity_system(graph: &std::sync::Arc<Graph>) -> BranchingSystem {
    let mut sys = super::build_standard_system(graph);
    for e in graph.edges() {
        if sys.r(e) == sys.d(graph.rng(e)) {
            let id = PAMap::identity(sys.r(e));
            sys.set_f(e, id);
        }
    }
    sys
}

/// The standard system with `R_e` stretched over all of `D_{src(e)}` at
/// `Y`-vertices emitting a single edge, so `D_v = ∪ R_e` there.
pub fn build_covering_system(graph: &std::sync::Arc<Graph>) -> BranchingSystem {
    let mut sys = super::build_standard_system(graph);
    for v in graph.y_vertices() {
        if let [e] = graph.out_edges(v) {
            let e = *e;
            let dv = sys.d(v).clone();
            let (a, b) = sys.d(graph.rng(e)).parts()[0].clone();
            let (c, d) = dv.parts()[0].clone();
            sys.set_r(e, dv);
            sys.set_f(e, PAMap::affine(&a, &b, &c, &d));
        }
    }
    sys
}
