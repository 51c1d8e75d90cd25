//! Exact computer algebra for relative Cohn path algebras of finite
//! directed graphs.
//!
//! * [`graph`] — finite graphs with a distinguished set `X` of regular
//!   vertices, path and cycle combinatorics, and the extended graph `E(X)`.
//! * [`cohn`] — normal forms, product, involution and grading in
//!   `C_K^X(E)`, plus the element DSL.
//! * [`transform`] — the isomorphism with the Leavitt path algebra of
//!   `E(X)`, the reduction algorithm and injectivity certificates.
//! * [`boundary`] — the relative boundary path space, the partial action of
//!   the free group on edges and the partial skew group ring model.
//! * [`branching`] — branching systems on intervals with endpoints in
//!   `Q(sqrt 2)` and their faithfulness checks.
//! * [`cli`] — the command-line front end used by the `cohnpath` binary.

pub mod boundary;
pub mod branching;
pub mod cli;
pub mod cohn;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod transform;

pub use cohn::Element;
pub use graph::{Graph, Path};
pub use scalar::{Field, Rational};
