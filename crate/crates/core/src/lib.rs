//! Legendrian knot mosaics.
//!
//! A mosaic is a square (or rectangular) grid of the ten Legendrian tiles. This
//! crate validates and encodes mosaics, traces their strands, computes
//! Thurston-Bennequin and rotation numbers, counts and enumerates suitably
//! connected mosaics, identifies smooth knot types through the HOMFLY-PT
//! polynomial, evaluates mosaic-number bounds, builds explicit families and runs
//! minimal-mosaic censuses.

pub mod bounds;
pub mod census;
pub mod cli;
pub mod constructions;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod invariants;
pub mod render;
pub mod topology;
pub mod tile;

pub use error::Error;
pub use tile::{decode, encode, parse_mosaic, Edge, Mosaic, MosaicEncoding, Tile};
