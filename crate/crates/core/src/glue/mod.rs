//! Adjunction spaces and graphs, regularity of gluings, and pullback certificates.

pub mod adjunction;
pub mod certificate;
pub mod graph;

pub use adjunction::{adjunction_along, adjunction_space, Adjunction, Origin};
pub use certificate::{check_main_theorem, Certificate, Corners, GraphNames, Hypothesis, Verdict};
pub use graph::{
    adjunction_graph, check_boundcond, check_regular_adjunction, union_graph, AdjunctionResult, GlueSpec,
    RegularAdjunctionReport,
};
