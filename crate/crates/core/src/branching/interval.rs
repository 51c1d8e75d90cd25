//! Finite unions of half-open intervals and piecewise-constant functions
//! on them.

use std::fmt;

use super::QuadScalar;
use crate::scalar::{Field, Rational};

type Q = QuadScalar;

/// Sorted, deduplicated breakpoints of a family of intervals.
fn breakpoints<'a>(intervals: impl Iterator<Item = (&'a Q, &'a Q)>) -> Vec<Q> {
    let mut pts: Vec<Q> = intervals.flat_map(|(l, r)| [l.clone(), r.clone()]).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// `[l, r)` pairs: pairwise disjoint, sorted, nonempty and non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    parts: Vec<(Q, Q)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// `[l, r)`, empty when `l ≥ r`.
    pub fn interval(l: Q, r: Q) -> Self {
        Self::from_intervals(vec![(l, r)])
    }

    /// Normalizes an arbitrary list (overlaps and empty pieces allowed).
    pub fn from_intervals(mut parts: Vec<(Q, Q)>) -> Self {
        parts.retain(|(l, r)| l < r);
        parts.sort();
        let mut out: Vec<(Q, Q)> = Vec::new();
        for (l, r) in parts {
            match out.last_mut() {
                Some((_, pr)) if l <= *pr => {
                    if r > *pr {
                        *pr = r;
                    }
                }
                _ => out.push((l, r)),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[(Q, Q)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|(l, r)| l <= x && x < r)
    }

    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Self {
        let pts = breakpoints(self.parts.iter().chain(&other.parts).map(|(l, r)| (l, r)));
        let parts = pts
            .windows(2)
            .filter(|w| keep(self.contains(&w[0]), other.contains(&w[0])))
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::from_intervals(parts)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.subtract(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersect(other).is_empty()
    }

    /// Some point of the set (the left end of its first interval).
    pub fn witness(&self) -> Option<Q> {
        self.parts.first().map(|(l, _)| l.clone())
    }

    /// Parses `[l,r) [l,r) ...`; `∅` or nothing is the empty set.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut parts = Vec::new();
        let mut rest = text.trim();
        if rest == "∅" {
            return Ok(Self::empty());
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| format!("expected `[`, found `{rest}`"))?;
            let close = body.find(')').ok_or("unterminated interval")?;
            let (l, r) = body[..close].split_once(',').ok_or("expected `l,r`")?;
            let l = Q::parse(l).ok_or_else(|| format!("bad endpoint `{l}`"))?;
            let r = Q::parse(r).ok_or_else(|| format!("bad endpoint `{r}`"))?;
            if l >= r {
                return Err(format!("empty interval [{l},{r})"));
            }
            parts.push((l, r));
            rest = body[close + 1..].trim_start();
        }
        let set = Self::from_intervals(parts.clone());
        if set.parts.len() != parts.len() {
            return Err("intervals overlap or touch; give the merged form".into());
        }
        Ok(set)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, (l, r)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{l},{r})")?;
        }
        Ok(())
    }
}

/// A piecewise-constant function, zero off finitely many intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFunction<K: Field = Rational> {
    /// Disjoint sorted `(l, r, value)`, nonzero values, adjacent pieces
    /// with equal values merged.
    pieces: Vec<(Q, Q, K)>,
}

impl<K: Field> Default for ModFunction<K> {
    fn default() -> Self {
        ModFunction { pieces: Vec::new() }
    }
}

impl<K: Field> ModFunction<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sums possibly overlapping pieces.
    pub fn from_pieces(raw: Vec<(Q, Q, K)>) -> Self {
        let raw: Vec<(Q, Q, K)> = raw.into_iter().filter(|(l, r, c)| l < r && !c.is_zero()).collect();
        let pts = breakpoints(raw.iter().map(|(l, r, _)| (l, r)));
        let mut pieces: Vec<(Q, Q, K)> = Vec::new();
        for w in pts.windows(2) {
            let x = &w[0];
            let value = raw
                .iter()
                .filter(|(l, r, _)| l <= x && x < r)
                .fold(K::zero(), |acc, (_, _, c)| acc + c.clone());
            if value.is_zero() {
                continue;
            }
            match pieces.last_mut() {
                Some((_, pr, pc)) if *pr == w[0] && *pc == value => *pr = w[1].clone(),
                _ => pieces.push((w[0].clone(), w[1].clone(), value)),
            }
        }
        ModFunction { pieces }
    }

    pub fn indicator(set: &IntervalSet) -> Self {
        Self::from_pieces(set.parts().iter().map(|(l, r)| (l.clone(), r.clone(), K::one())).collect())
    }

    pub fn pieces(&self) -> &[(Q, Q, K)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn eval(&self, x: &Q) -> K {
        self.pieces
            .iter()
            .find(|(l, r, _)| l <= x && x < r)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    pub fn support(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|(l, r, _)| (l.clone(), r.clone())).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pieces(self.pieces.iter().chain(&other.pieces).cloned().collect())
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_pieces(self.pieces.iter().map(|(l, r, c)| (l.clone(), r.clone(), c.clone() * k.clone())).collect())
    }

    /// `χ_S · φ`.
    pub fn restrict(&self, set: &IntervalSet) -> Self {
        let mut raw = Vec::new();
        for (l, r, c) in &self.pieces {
            for (a, b) in set.parts() {
                let lo = Q::max(l, a);
                let hi = Q::min(r, b);
                if lo < hi {
                    raw.push((lo, hi, c.clone()));
                }
            }
        }
        Self::from_pieces(raw)
    }

    /// Breakpoints of the function.
    pub fn breakpoints(&self) -> Vec<Q> {
        breakpoints(self.pieces.iter().map(|(l, r, _)| (l, r)))
    }
}

impl<K: Field> fmt::Display for ModFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, r, c)) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * [{l},{r})")?;
        }
        Ok(())
    }
}
