//! Spectral sequences of filtered complexes: a generic engine for fully
//! specified complexes and a page ledger for the operator complex.

mod filtered;
mod ledger;

pub use filtered::*;
pub use ledger::*;
