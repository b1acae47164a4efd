//! Covers of the three dodecahedral 3-manifolds, their cubulations and
//! canonical surfaces.

// index loops read better than zipped iterators in the table code
#![allow(clippy::needless_range_loop)]

pub mod cosets;
pub mod cubecomplex;
pub mod dodecomplex;
pub mod error;
pub mod fpgroup;
pub mod homology;
pub mod hypersurface;
pub mod pipeline;
pub mod unionfind;

pub use error::{Error, Result};
