//! Exact spectral-sequence engine for a filtered complex of differential
//! operators on a three-dimensional Lie group.

pub mod contraction;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod opalg;
pub mod params;
pub mod reduce;
pub mod run;
pub mod specseq;

pub use error::{Error, Result};
