//! Exact piecewise-linear topological graphs over finite one-dimensional complexes.
//!
//! Vertex and edge spaces are finite cell complexes with rational coordinates.
//! Every subset is a canonical semilinear set and every structure map is
//! cellwise affine, so the vertex stratification, factor-map conditions and
//! gluing hypotheses are decided exactly.

pub mod error;
pub mod discrete;
pub mod glue;
pub mod morphism;
pub mod plcore;
pub mod rational;
pub mod suspend;
pub mod topograph;

pub use error::{Error, Result};
pub use rational::Q;

#[cfg(any(test, feature = "testkit"))]
pub mod testkit;
