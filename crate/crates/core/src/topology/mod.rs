//! Planar diagrams, the HOMFLY-PT polynomial and knot-type identification.

pub mod homfly;
pub mod identify;
pub mod pd;
pub mod poly;
pub mod standard;

pub use homfly::{homfly, HomflyEngine};
pub use identify::{identify, identify_with, Identification, KnotType};
pub use pd::{to_planar_diagram, Crossing, PlanarDiagram};
pub use poly::Poly;
