//! The real quadratic field `Q(sqrt 2)` with exact order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{fmt_rational, parse_rational, rat, Field, Rational};

/// `a + b·√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    pub a: Rational,
    pub b: Rational,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadScalar { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn sqrt2() -> Self {
        QuadScalar {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// The conjugate `a − b·√2`.
    pub fn conjugate(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `a² − 2b²`, the field norm.
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone() - rat(2) * self.b.clone() * self.b.clone()
    }

    /// Exact sign: compares `a²` with `2b²` when `a` and `b` disagree.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (sa, _) => {
                // opposite signs: the larger of |a| and |b|·√2 wins
                let a2 = self.a.clone() * self.a.clone();
                let b2 = rat(2) * self.b.clone() * self.b.clone();
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b { a.clone() } else { b.clone() }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b { a.clone() } else { b.clone() }
    }

    /// Midpoint `(x + y) / 2`.
    pub fn midpoint(x: &Self, y: &Self) -> Self {
        (x.clone() + y.clone()) * Self::rational(crate::scalar::ratio(1, 2))
    }

    /// Parses `p/q`, `p/q*sqrt2`, `sqrt2`, `-sqrt2`, `p/q + p'/q'*sqrt2`,
    /// `p/q - p'/q'*sqrt2`; whitespace is ignored.
    pub fn parse(text: &str) -> Option<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let Some(root_at) = s.find("sqrt2") else {
            return parse_rational(&s).map(Self::rational);
        };
        if root_at + 5 != s.len() {
            return None;
        }
        let head = &s[..root_at];
        // The irrational term starts at the last sign that is not leading.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_text, b_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_text)?
        };
        let b_text = b_text.strip_suffix('*').unwrap_or(b_text);
        let b = match b_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        Some(QuadScalar { a, b })
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compact form without spaces: `2`, `sqrt2`, `-1+sqrt2`, `1/2-3*sqrt2`.
impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let mag = self.b.abs();
        let root = if mag.is_one() {
            "sqrt2".to_string()
        } else {
            format!("{}*sqrt2", fmt_rational(&mag))
        };
        let neg = Signed::is_negative(&self.b);
        if self.a.is_zero() {
            write!(f, "{}{root}", if neg { "-" } else { "" })
        } else {
            write!(f, "{}{}{root}", fmt_rational(&self.a), if neg { "-" } else { "+" })
        }
    }
}

impl Add for QuadScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadScalar {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for QuadScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadScalar {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for QuadScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        QuadScalar {
            a: self.a.clone() * o.a.clone() + rat(2) * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Neg for QuadScalar {
    type Output = Self;
    fn neg(self) -> Self {
        QuadScalar { a: -self.a, b: -self.b }
    }
}

/// Division by zero panics, as for the rationals.
impl Div for QuadScalar {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 2)");
        let num = self * o.conjugate();
        QuadScalar {
            a: num.a / n.clone(),
            b: num.b / n,
        }
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Field for QuadScalar {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }

    fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}
