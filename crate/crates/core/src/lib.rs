//! Exact computation with finite marked simplicial sets.

pub mod anodyne;
pub mod category;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod homspace;
pub mod iso;
pub mod json;
pub mod lifting;
pub mod levelwise;
pub mod map;
pub mod necklace;
pub mod simplex;
pub mod sset;
pub mod standard;
pub mod straighten;
pub mod suite;

pub use error::{Error, Result};
pub use map::{MarkedMap, MarkedSet, SimplicialMap};
pub use simplex::{CellId, DegeneracyWord, Simplex};
pub use sset::{Builder, SimplicialSet};
