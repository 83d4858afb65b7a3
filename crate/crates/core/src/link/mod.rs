//! Oriented link diagrams in PD notation, their planar faces and resolutions.

mod braid;
mod diagram;
mod planar;
mod resolve;

pub use braid::braid_closure;
pub use diagram::{ArcLabel, LinkDiagram, Slot};
pub use planar::PlanarStructure;
pub use resolve::{circle_map, resolve, ArcIndex, CircleMap, Smoothing, VertexLengthError, SMOOTHING_PAIRS};

