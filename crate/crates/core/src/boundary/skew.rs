//! The partial skew group ring: finite sums `Σ a_t δ_t` with `a_t`
//! supported in `U_t` and
//! `(a_t δ_t)(b_s δ_s) = α_t(α_{t⁻¹}(a_t) b_s) δ_{ts}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{alpha, u_set, BoundaryError, DFunction, FreeWord};
use crate::graph::{Graph, Path};
use crate::scalar::{Field, Rational};
use crate::transform::{Generator, GeneratorAssignment, TargetRing, UniquenessError};

#[derive(Clone)]
pub struct SkewElement<K: Field = Rational> {
    graph: Arc<Graph>,
    terms: BTreeMap<FreeWord, DFunction<K>>,
}

impl<K: Field> PartialEq for SkewElement<K> {
    fn eq(&self, other: &Self) -> bool {
        crate::cohn::same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl<K: Field> Eq for SkewElement<K> {}

impl<K: Field> SkewElement<K> {
    pub fn zero(graph: &Arc<Graph>) -> Self {
        SkewElement {
            graph: Arc::clone(graph),
            terms: BTreeMap::new(),
        }
    }

    /// `a δ_t`, checking `supp(a) ⊆ U_t`.
    pub fn term(t: FreeWord, a: DFunction<K>) -> Result<Self, BoundaryError> {
        let graph = Arc::clone(a.graph());
        if !a.support().is_subset(&u_set(&graph, &t)) {
            return Err(BoundaryError::DomainViolation {
                word: t.display(&graph).to_string(),
            });
        }
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(t, a);
        }
        Ok(SkewElement { graph, terms })
    }

    /// `1_{U_t} δ_t`.
    pub fn unit_on(graph: &Arc<Graph>, t: FreeWord) -> Self {
        let a = u_set(graph, &t).indicator();
        Self::term(t, a).expect("U_t is its own support")
    }

    /// `f δ_0`.
    pub fn diagonal(f: DFunction<K>) -> Self {
        Self::term(FreeWord::identity(), f).expect("U_0 is everything")
    }

    /// `1_p δ_0` for a path `p`.
    pub fn projection(graph: &Arc<Graph>, p: &Path) -> Self {
        Self::diagonal(super::CylinderSet::cylinder(graph, p).indicator())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &DFunction<K>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &FreeWord) -> DFunction<K> {
        self.terms
            .get(t)
            .cloned()
            .unwrap_or_else(|| DFunction::zero(&self.graph))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), BoundaryError> {
        if crate::cohn::same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(BoundaryError::GraphMismatch)
        }
    }

    fn insert(terms: &mut BTreeMap<FreeWord, DFunction<K>>, t: FreeWord, a: DFunction<K>) {
        if a.is_zero() {
            return;
        }
        let sum = match terms.remove(&t) {
            Some(prev) => prev.add(&a),
            None => a,
        };
        if !sum.is_zero() {
            terms.insert(t, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, BoundaryError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (t, a) in &other.terms {
            Self::insert(&mut terms, t.clone(), a.clone());
        }
        Ok(SkewElement {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut terms = BTreeMap::new();
        for (t, a) in &self.terms {
            Self::insert(&mut terms, t.clone(), a.scale(k));
        }
        SkewElement {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, BoundaryError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (t, a) in &self.terms {
            let pulled = alpha(&t.inverse(), a)?;
            for (s, b) in &other.terms {
                let inner = pulled.mul(b);
                if inner.is_zero() {
                    continue;
                }
                Self::insert(&mut terms, t.mul(s), alpha(t, &inner)?);
            }
        }
        Ok(SkewElement {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    /// `(a_t δ_t)* = α_{t⁻¹}(a_t) δ_{t⁻¹}` (scalars are fixed).
    pub fn star(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (t, a) in &self.terms {
            let inv = t.inverse();
            let moved = alpha(&inv, a).expect("a_t is supported in U_t");
            Self::insert(&mut terms, inv, moved);
        }
        SkewElement {
            graph: Arc::clone(&self.graph),
            terms,
        }
    }

    /// Components by word degree; they sum to `self`.
    pub fn degree_components(&self) -> BTreeMap<i64, SkewElement<K>> {
        let mut out: BTreeMap<i64, SkewElement<K>> = BTreeMap::new();
        for (t, a) in &self.terms {
            out.entry(t.degree())
                .or_insert_with(|| SkewElement::zero(&self.graph))
                .terms
                .insert(t.clone(), a.clone());
        }
        out
    }
}

impl<K: Field> fmt::Display for SkewElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "({}) δ_[{}]",
                super::format_dfunction(a),
                t.display(&self.graph)
            )?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for SkewElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElement({self})")
    }
}

impl TargetRing for SkewElement<Rational> {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("graph mismatch in skew addition")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("graph mismatch in skew multiplication")
    }
    fn scale(&self, k: &Rational) -> Self {
        SkewElement::scale(self, k)
    }
    fn is_zero(&self) -> bool {
        SkewElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        SkewElement::zero(&self.graph)
    }
    fn graded_components(&self) -> Option<Vec<(i64, Self)>> {
        Some(self.degree_components().into_iter().collect())
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `v ↦ 1_v δ_0`, `e ↦ 1_e δ_e`, `e* ↦ 1_{e⁻¹} δ_{e⁻¹}`; the defining
/// relations are verified in the skew ring on construction.
pub fn skew_generators(graph: &Arc<Graph>) -> Result<GeneratorAssignment<SkewElement>, UniquenessError> {
    GeneratorAssignment::from_fn(graph, SkewElement::zero(graph), |gen| match gen {
        Generator::Vertex(v) => SkewElement::projection(graph, &Path::vertex(v)),
        Generator::Edge(e) => SkewElement::unit_on(graph, FreeWord::edge(e)),
        Generator::Ghost(e) => SkewElement::unit_on(graph, FreeWord::edge_inv(e)),
    })
}
