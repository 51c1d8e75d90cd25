//! Seeded pseudo-random elements for property suites.
//!
//! The seed comes from `COHNPATH_SEED` when set, so failing runs can be
//! replayed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohn::{normal_monomials, Element, Monomial};
use crate::graph::Graph;
use crate::scalar::{ratio, Rational};

pub const SEED_VAR: &str = "COHNPATH_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// `COHNPATH_SEED` if it parses, otherwise [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

pub fn rng_with_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws elements with up to `max_terms` normal monomials whose paths have
/// length at most `max_len`, and small nonzero rational coefficients.
pub struct ElementSampler {
    graph: Arc<Graph>,
    monomials: Vec<Monomial>,
    max_terms: usize,
}

impl ElementSampler {
    pub fn new(graph: &Arc<Graph>, max_len: usize, max_terms: usize) -> Self {
        ElementSampler {
            graph: Arc::clone(graph),
            monomials: normal_monomials(graph, max_len),
            max_terms: max_terms.max(1),
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
        let mut num = rng.gen_range(-4i64..=4);
        if num == 0 {
            num = 1;
        }
        let den = rng.gen_range(1i64..=3);
        ratio(num, den)
    }

    /// A possibly-zero element (zero only if cancellation happens, which
    /// cannot since monomials are distinct normal ones).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Element {
        let n = rng.gen_range(1..=self.max_terms);
        let mut x = Element::zero(&self.graph);
        for _ in 0..n {
            let m = self.monomials[rng.gen_range(0..self.monomials.len())].clone();
            x = x.add(&Element::term(&self.graph, m, Self::coefficient(rng)));
        }
        x
    }

    pub fn sample_nonzero<R: Rng>(&self, rng: &mut R) -> Element {
        loop {
            let x = self.sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero element concentrated in a single degree.
    pub fn sample_homogeneous<R: Rng>(&self, rng: &mut R) -> Element {
        let x = self.sample_nonzero(rng);
        let degrees = x.degrees();
        let d = degrees[rng.gen_range(0..degrees.len())];
        x.graded_component(d)
    }
}
