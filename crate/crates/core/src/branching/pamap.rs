//! Piecewise-affine injections `x ↦ slope·x + offset` on half-open pieces.
//!
//! Slopes are required to be positive, so every piece maps `[l, r)` onto
//! `[f(l), f(r))` and half-open intervals stay half-open under images and
//! preimages.

use std::fmt;

use num_traits::{One, Zero};

use super::{IntervalSet, ModFunction, QuadScalar};
use crate::scalar::Field;

type Q = QuadScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub l: Q,
    pub r: Q,
    pub slope: Q,
    pub offset: Q,
}

impl AffinePiece {
    pub fn apply(&self, x: &Q) -> Q {
        self.slope.clone() * x.clone() + self.offset.clone()
    }

    /// Solves `apply(x) = y`.
    pub fn solve(&self, y: &Q) -> Q {
        (y.clone() - self.offset.clone()) / self.slope.clone()
    }

    pub fn image(&self) -> (Q, Q) {
        (self.apply(&self.l), self.apply(&self.r))
    }

    fn same_map(&self, other: &AffinePiece) -> bool {
        self.slope == other.slope && self.offset == other.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAMap {
    pieces: Vec<AffinePiece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    /// Intervals on which the map is the identity.
    pub intervals: IntervalSet,
    /// Isolated fixed points.
    pub points: Vec<Q>,
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.intervals.is_empty(), self.points.is_empty()) {
            (true, true) => f.write_str("∅"),
            (false, true) => write!(f, "{}", self.intervals),
            (intervals_empty, false) => {
                if !intervals_empty {
                    write!(f, "{} ∪ ", self.intervals)?;
                }
                let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", pts.join(", "))
            }
        }
    }
}

impl PAMap {
    /// Validates pieces (nonempty, positive slope, disjoint) and merges
    /// adjacent pieces carrying the same affine map.
    pub fn new(mut pieces: Vec<AffinePiece>) -> Result<Self, String> {
        pieces.sort_by(|a, b| a.l.cmp(&b.l));
        for p in &pieces {
            if p.l >= p.r {
                return Err(format!("empty piece [{},{})", p.l, p.r));
            }
            if p.slope <= Q::zero() {
                return Err(format!("slope {} is not positive", p.slope));
            }
        }
        for w in pieces.windows(2) {
            if w[1].l < w[0].r {
                return Err(format!("pieces [{},{}) and [{},{}) overlap", w[0].l, w[0].r, w[1].l, w[1].r));
            }
        }
        let mut out: Vec<AffinePiece> = Vec::new();
        for p in pieces {
            match out.last_mut() {
                Some(last) if last.r == p.l && last.same_map(&p) => last.r = p.r,
                _ => out.push(p),
            }
        }
        Ok(PAMap { pieces: out })
    }

    pub fn empty() -> Self {
        PAMap { pieces: Vec::new() }
    }

    pub fn identity(domain: &IntervalSet) -> Self {
        Self::new(
            domain
                .parts()
                .iter()
                .map(|(l, r)| AffinePiece {
                    l: l.clone(),
                    r: r.clone(),
                    slope: Q::one(),
                    offset: Q::zero(),
                })
                .collect(),
        )
        .expect("identity pieces are valid")
    }

    /// The increasing affine bijection `[a, b) → [c, d)`.
    pub fn affine(a: &Q, b: &Q, c: &Q, d: &Q) -> Self {
        let slope = (d.clone() - c.clone()) / (b.clone() - a.clone());
        let offset = c.clone() - slope.clone() * a.clone();
        Self::new(vec![AffinePiece {
            l: a.clone(),
            r: b.clone(),
            slope,
            offset,
        }])
        .expect("affine pieces are valid")
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|p| (p.l.clone(), p.r.clone())).collect())
    }

    pub fn range(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(AffinePiece::image).collect())
    }

    /// Whether the piece images are pairwise disjoint (each piece is
    /// injective already).
    pub fn is_injective(&self) -> bool {
        let images: Vec<IntervalSet> = self
            .pieces
            .iter()
            .map(|p| {
                let (a, b) = p.image();
                IntervalSet::interval(a, b)
            })
            .collect();
        images
            .iter()
            .enumerate()
            .all(|(i, a)| images[i + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    pub fn apply(&self, x: &Q) -> Option<Q> {
        self.pieces
            .iter()
            .find(|p| &p.l <= x && x < &p.r)
            .map(|p| p.apply(x))
    }

    /// The inverse on the range; requires injectivity.
    pub fn inverse(&self) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|p| {
                    let (l, r) = p.image();
                    let slope = Q::one() / p.slope.clone();
                    AffinePiece {
                        l,
                        r,
                        offset: -(p.offset.clone() * slope.clone()),
                        slope,
                    }
                })
                .collect(),
        )
        .expect("inverse of an injective map is valid")
    }

    /// `self ∘ inner`, defined where `inner` lands in the domain of `self`.
    pub fn compose(&self, inner: &PAMap) -> Self {
        let mut pieces = Vec::new();
        for p in &inner.pieces {
            for q in &self.pieces {
                // x ∈ [p.l, p.r) with p(x) ∈ [q.l, q.r)
                let lo = Q::max(&p.l, &p.solve(&q.l));
                let hi = Q::min(&p.r, &p.solve(&q.r));
                if lo < hi {
                    pieces.push(AffinePiece {
                        l: lo,
                        r: hi,
                        slope: q.slope.clone() * p.slope.clone(),
                        offset: q.slope.clone() * p.offset.clone() + q.offset.clone(),
                    });
                }
            }
        }
        Self::new(pieces).expect("composition of valid maps is valid")
    }

    /// `self^j` for `j ≥ 1`.
    pub fn power(&self, j: usize) -> Self {
        assert!(j >= 1, "powers start at 1");
        let mut out = self.clone();
        for _ in 1..j {
            out = self.compose(&out);
        }
        out
    }

    /// `{x : f(x) = x}`, solved piece by piece.
    pub fn fixed_set(&self) -> FixedSet {
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        for p in &self.pieces {
            if p.slope == Q::one() {
                if p.offset == Q::zero() {
                    intervals.push((p.l.clone(), p.r.clone()));
                }
            } else {
                let x = p.offset.clone() / (Q::one() - p.slope.clone());
                if p.l <= x && x < p.r {
                    points.push(x);
                }
            }
        }
        FixedSet {
            intervals: IntervalSet::from_intervals(intervals),
            points,
        }
    }

    /// `φ ∘ self` on the domain of `self`.
    pub fn pullback<K: Field>(&self, phi: &ModFunction<K>) -> ModFunction<K> {
        let mut raw = Vec::new();
        for p in &self.pieces {
            for (a, b, c) in phi.pieces() {
                let lo = Q::max(&p.l, &p.solve(a));
                let hi = Q::min(&p.r, &p.solve(b));
                if lo < hi {
                    raw.push((lo, hi, c.clone()));
                }
            }
        }
        ModFunction::from_pieces(raw)
    }

    /// `φ ∘ self⁻¹` on the range of `self` (zero elsewhere).
    pub fn pushforward<K: Field>(&self, phi: &ModFunction<K>) -> ModFunction<K> {
        let mut raw = Vec::new();
        for p in &self.pieces {
            for (a, b, c) in phi.pieces() {
                let lo = Q::max(&p.l, a);
                let hi = Q::min(&p.r, b);
                if lo < hi {
                    raw.push((p.apply(&lo), p.apply(&hi), c.clone()));
                }
            }
        }
        ModFunction::from_pieces(raw)
    }
}

impl fmt::Display for PAMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "piece [{},{}) {} {}", p.l, p.r, p.slope, p.offset)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio, Rational};

    fn q(n: i64, d: i64) -> Q {
        Q::rational(ratio(n, d))
    }

    fn rotation() -> PAMap {
        let theta = Q::sqrt2() - Q::one();
        let cut = Q::one() - theta.clone();
        PAMap::new(vec![
            AffinePiece {
                l: Q::zero(),
                r: cut.clone(),
                slope: Q::one(),
                offset: theta.clone(),
            },
            AffinePiece {
                l: cut,
                r: Q::one(),
                slope: Q::one(),
                offset: theta - Q::one(),
            },
        ])
        .unwrap()
    }

    #[test]
    fn rotation_is_a_bijection_of_the_unit_interval() {
        let h = rotation();
        let unit = IntervalSet::interval(Q::zero(), Q::one());
        assert_eq!(h.domain(), unit);
        assert_eq!(h.range(), unit);
        assert!(h.is_injective());
        assert_eq!(h.apply(&Q::zero()), Some(Q::sqrt2() - Q::one()));
        assert_eq!(h.apply(&(Q::int(2) - Q::sqrt2())), Some(Q::zero()));
        assert_eq!(h.compose(&h.inverse()), PAMap::identity(&unit));
        for j in 1..=6 {
            assert!(h.power(j).fixed_set().is_empty(), "power {j}");
        }
    }

    #[test]
    fn fixed_points_of_contractions() {
        let f = PAMap::affine(&q(0, 1), &q(1, 1), &q(1, 4), &q(3, 4));
        let fix = f.fixed_set();
        assert_eq!(fix.points, vec![q(1, 2)]);
        assert!(fix.intervals.is_empty());
        assert!(PAMap::new(vec![AffinePiece { l: q(0, 1), r: q(1, 1), slope: q(-1, 1), offset: q(1, 1) }]).is_err());
    }

    #[test]
    fn pull_and_push() {
        let f = PAMap::affine(&q(1, 1), &q(2, 1), &q(0, 1), &q(1, 2));
        let phi: ModFunction<Rational> = ModFunction::from_pieces(vec![(q(1, 1), q(3, 2), rat(5))]);
        let pushed = f.pushforward(&phi);
        assert_eq!(pushed.to_string(), "5 * [0,1/4)");
        assert_eq!(f.pullback(&pushed), phi);
    }
}
