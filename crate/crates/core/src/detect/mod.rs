//! Recognition of named flats and the exclusion-style characterizations of
//! chordality and GF(q)-chordality.

mod chordal;
mod family;
mod induced;
mod methods;

pub use chordal::{is_chordal, is_chordal_circuitsplit, ChordalReport};
pub use family::{forbidden_family, Family, FamilyMember, Route};
pub use induced::{
    has_induced_minor, has_induced_restriction, induced_minors, induced_restrictions, largest_circuit_induced_minor,
    largest_circuit_induced_restriction, Witness, WitnessKind,
};
pub use methods::{
    is_gfq_chordal, method, methods, Certificate, ChordalityMethod, DecomposeMethod, MinorMethod, PeoMethod,
    RestrictionMethod, Verdict,
};

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::constructions::dual_k33;
use crate::error::{Error, Result};
use crate::matroid::RepMatroid;

/// Type of a flat, decided in the order documented on [`recognize_flat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Classification {
    /// PG(k-1, q), carried as its rank `k`.
    ProjectiveGeometry { rank: usize },
    /// M(C_n) ≅ U_{n-1,n}.
    Circuit { n: usize },
    GraphicK4,
    DualK33,
    Uniform { r: usize, n: usize },
    Other,
}

impl Classification {
    /// `(r, n)` when the classified matroid is uniform `U_{r,n}`, including
    /// projective geometries of rank at most 2.
    pub fn uniform_params(&self, q: usize) -> Option<(usize, usize)> {
        match *self {
            Classification::ProjectiveGeometry { rank } if rank <= 2 => {
                Some((rank, [0, 1, q + 1][rank]))
            }
            Classification::Circuit { n } => Some((n - 1, n)),
            Classification::Uniform { r, n } => Some((r, n)),
            _ => None,
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::ProjectiveGeometry { rank } => write!(f, "ProjectiveGeometry({rank})"),
            Classification::Circuit { n } => write!(f, "Circuit({n})"),
            Classification::GraphicK4 => write!(f, "GraphicK4"),
            Classification::DualK33 => write!(f, "DualK33"),
            Classification::Uniform { r, n } => write!(f, "Uniform({r},{n})"),
            Classification::Other => write!(f, "Other"),
        }
    }
}

/// Classifies the restriction of `m` to the flat `f`.
///
/// Decision order: (1) ProjectiveGeometry if `|F| = (q^{r(F)} - 1)/(q - 1)`;
/// (2) Circuit(n) if `F` is a circuit; (3) Uniform(r, n) if every
/// `r(F)`-subset is independent; (4) GraphicK4 if `q = 2`, `r(F) = 3`,
/// `|F| = 6`; (5) DualK33 if `q = 2`, `r(F) = 4`, `|F| = 9` and `M|F` is
/// projectively equivalent to the fixture; otherwise Other.
pub fn recognize_flat(m: &RepMatroid, f: &ElemSet) -> Result<Classification> {
    if !m.is_flat(f) {
        return Err(Error::NotAFlat);
    }
    Ok(classify(m, f))
}

/// [`recognize_flat`] without the flat check.
pub(crate) fn classify(m: &RepMatroid, f: &ElemSet) -> Classification {
    let r = m.rank_of(f);
    let n = f.len();
    if n == m.field().projective_points(r) {
        return Classification::ProjectiveGeometry { rank: r };
    }
    if m.is_circuit(f) {
        return Classification::Circuit { n };
    }
    let sub = m.restrict(f);
    if sub.circuits(Some(r)).is_empty() {
        return Classification::Uniform { r, n };
    }
    if m.q() == 2 && r == 3 && n == 6 {
        return Classification::GraphicK4;
    }
    if m.q() == 2 && r == 4 && n == 9 && sub.proj_equivalent(&dual_k33()).map_or(false, |x| x.is_some()) {
        return Classification::DualK33;
    }
    Classification::Other
}

/// Classifies a whole matroid (its ground set is always a flat).
pub fn classify_matroid(m: &RepMatroid) -> Classification {
    classify(m, &m.ground())
}
