//! Seeded generators and randomized checks shared by the test suites.

pub mod fixtures;
pub mod gen;
pub mod oracle;
pub mod suites;

pub use gen::{rng, Rng, Shape};
