//! Arithmetic and dense linear algebra over GF(q), q ≤ 9.

mod field;
mod linalg;

pub use field::{Elem, Field, SUPPORTED_ORDERS};
pub use linalg::{in_span, normalize, Matrix, Rref, Subspace, Vector};
