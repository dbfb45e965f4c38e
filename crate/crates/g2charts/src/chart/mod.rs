//! Charts: planar graphs whose vertices realize the defining relations of MC.

pub mod basics;
pub mod convert;
pub mod derive;
pub mod format;
pub mod model;
pub mod monoid;
pub mod moves;
pub mod movie;
pub mod pattern;
pub mod render;
pub(crate) mod surgery;
pub mod validate;

pub use convert::{from_hurwitz, to_hurwitz, ConvertError};
pub use format::{parse_chart, print_chart, ParseChartError};
pub use model::{Chart, ChartError, Edge, EdgeId, End, FaceRef, HalfEdge, Placement, Region, Side, Vertex, VertexId, VertexKind};
pub use validate::{validate, ValidationReport, Violation};
pub use basics::{basic_chart, BasicChart};
pub use moves::{admissible_sites, apply_move, pass_component, MoveError, MoveInstance, Site, CATALOG};
