//! Finite one-dimensional cell complexes, semilinear subsets and cellwise-affine maps.

pub mod cellmap;
pub mod complex;
pub mod interval;
pub mod semiset;
pub mod subdivide;

pub use cellmap::{Action, CellMap, LhMode, Piece, Violation};
pub use complex::{ArcCell, ArcId, Attach, Chart, Complex, Direction, Host, NodeId, Side};
pub use interval::{Interval, IntervalSet};
pub use semiset::{locate, point_name, same_host, End, Loc, Point, SemiSet, SetOp};
pub use subdivide::{refine, refine_params, sub_complex, subdivide, transport_map, Subdivision, Subspace};
