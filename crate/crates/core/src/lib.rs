//! Matroids represented over small finite fields, and the chordality
//! characterizations of binary and GF(q)-represented matroids: forbidden
//! induced minors and restrictions, perfect elimination orderings of
//! cocircuits, and decompositions by generalized parallel connection.

pub mod bitset;
pub mod catalog;
pub mod constructions;
pub mod decompose;
pub mod detect;
pub mod error;
pub mod gfq;
pub mod matroid;
pub mod peo;

#[cfg(test)]
mod testutil;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use gfq::{Field, Vector};
pub use matroid::RepMatroid;
