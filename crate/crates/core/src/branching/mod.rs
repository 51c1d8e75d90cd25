//! Relative branching systems on finite unions of intervals with endpoints
//! in `Q(sqrt 2)`, the representation they induce on piecewise-constant
//! functions, and the faithfulness criterion.
//!
//! A system assigns half-open interval sets `D_v` to vertices and `R_e` to
//! edges, with piecewise-affine bijections `f_e : D_{rng(e)} → R_e`. The
//! operators are `P_v φ = χ_{D_v} φ`, `S_e φ = χ_{R_e} · φ∘f_e⁻¹` and
//! `S_e* φ = χ_{D_{rng(e)}} · φ∘f_e`.

mod interval;
mod pamap;
mod quad;
mod rep;
mod system;

use thiserror::Error;

pub use interval::{IntervalSet, ModFunction};
pub use pamap::{AffinePiece, FixedSet, PAMap};
pub use quad::QuadScalar;
pub use rep::{
    apply_monomial, build_covering_system, build_identity_system, constrained_cycles, faithfulness_conditions,
    injectivity_rank_check, rep_apply, test_functions, Faithfulness, RankCheck,
};
pub use system::{
    build_rotation_system, build_standard_system, check_axioms, parse_system, theta, AxiomReport, AxiomViolation,
    BranchingSystem,
};

/// Default power bound for the fixed-point condition.
pub const DEFAULT_M_BOUND: usize = 10;
/// Default degree bound for the rank check.
pub const DEFAULT_DEG_BOUND: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchingError {
    #[error("element and system live over different graphs")]
    GraphMismatch,
    #[error("wrong number of vertex or edge entries for the graph")]
    Shape,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[cfg(test)]
mod tests;
