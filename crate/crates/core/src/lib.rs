//! Digraph algebras, their ideals, and the groupoid picture of limit
//! algebras, at desk scale.
//!
//! * [`relation`]: support relations, ideal sets, generators and
//!   invariant projections as bit matrices.
//! * [`matrix`]: dense matrices over any [`Scalar`] for numeric checks.
//! * [`tower`]: refinement and standard embeddings and what survives them.
//! * [`groupoid`]: the truncated spectrum and its dyadic generators.
//! * [`io`]: JSON, DOT and CSV formats used by the `groupoidal` binary.

pub mod error;
pub mod groupoid;
pub mod io;
pub mod limits;
pub mod matrix;
pub mod relation;
pub mod scalar;
pub mod tower;

pub use error::{Error, Result};
pub use limits::Limits;
pub use matrix::Matrix;
pub use relation::{IdealSet, PairSet, ProjectionSet, SupportRelation};
pub use scalar::{ComplexRational, Dyadic, Scalar};

/// Exact complex-rational matrices.
pub type RationalMatrix = Matrix<ComplexRational>;
/// Floating-point matrices for quick experiments.
pub type FloatMatrix = Matrix<f64>;
/// Exact functions on the truncated groupoid.
pub type RationalFunction = groupoid::GroupoidFunction<ComplexRational>;
pub use groupoid::DyadicFunction;
