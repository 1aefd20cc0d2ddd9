//! Registry of GF(q)-chordality deciders, one per characterization.

use serde::Serialize;

use super::{forbidden_family, has_induced_minor, has_induced_restriction, Route, Witness};
use crate::decompose::{try_decompose, DecompMode, DecompTree};
use crate::error::{Error, Result};
use crate::matroid::RepMatroid;
use crate::peo::{find_peo, PeoCertificate, PeoStats};

/// Evidence behind a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A forbidden induced minor or restriction (negative verdicts).
    Witness(Witness),
    /// Perfect elimination ordering found (positive), with search effort.
    Peo {
        certificate: PeoCertificate,
        stats: PeoStats,
    },
    /// Exhausted PEO search (negative).
    PeoExhausted { stats: PeoStats },
    /// Decomposition into projective geometries (positive).
    Tree(DecompTree),
    /// No split available for a piece that is not a projective geometry.
    NoSplit,
    /// No forbidden member found (positive verdicts of exclusion routes).
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub chordal: bool,
    pub certificate: Certificate,
}

/// One characterization of GF(q)-chordality.
pub trait ChordalityMethod: Send + Sync {
    fn id(&self) -> &'static str;
    fn decide(&self, m: &RepMatroid) -> Result<Verdict>;
}

/// Theorems 1.1(ii) / 3.5(ii): no forbidden induced minor.
pub struct MinorMethod;
/// Theorems 1.1(iii) / 3.5(iii): no forbidden induced restriction.
pub struct RestrictionMethod;
/// Theorem 1.4: a perfect elimination ordering of cocircuits exists.
pub struct PeoMethod;
/// Definition: a decomposition into projective geometries by generalized
/// parallel connections across projective geometries.
pub struct DecomposeMethod;

fn exclusion(found: Option<Witness>) -> Verdict {
    match found {
        Some(w) => Verdict {
            chordal: false,
            certificate: Certificate::Witness(w),
        },
        None => Verdict {
            chordal: true,
            certificate: Certificate::None,
        },
    }
}

impl ChordalityMethod for MinorMethod {
    fn id(&self) -> &'static str {
        "minor"
    }

    fn decide(&self, m: &RepMatroid) -> Result<Verdict> {
        let family = forbidden_family(m.q(), Route::Minor)?;
        Ok(exclusion(has_induced_minor(m, &family)))
    }
}

impl ChordalityMethod for RestrictionMethod {
    fn id(&self) -> &'static str {
        "restriction"
    }

    fn decide(&self, m: &RepMatroid) -> Result<Verdict> {
        let family = forbidden_family(m.q(), Route::Restriction)?;
        Ok(exclusion(has_induced_restriction(m, &family)))
    }
}

impl ChordalityMethod for PeoMethod {
    fn id(&self) -> &'static str {
        "peo"
    }

    fn decide(&self, m: &RepMatroid) -> Result<Verdict> {
        let out = find_peo(m);
        Ok(match out.certificate {
            Some(certificate) => Verdict {
                chordal: true,
                certificate: Certificate::Peo {
                    certificate,
                    stats: out.stats,
                },
            },
            None => Verdict {
                chordal: false,
                certificate: Certificate::PeoExhausted { stats: out.stats },
            },
        })
    }
}

impl ChordalityMethod for DecomposeMethod {
    fn id(&self) -> &'static str {
        "decompose"
    }

    fn decide(&self, m: &RepMatroid) -> Result<Verdict> {
        Ok(match try_decompose(m, DecompMode::GfqProjective)? {
            Some(tree) => Verdict {
                chordal: true,
                certificate: Certificate::Tree(tree),
            },
            None => Verdict {
                chordal: false,
                certificate: Certificate::NoSplit,
            },
        })
    }
}

/// All registered methods, in a fixed order.
pub fn methods() -> Vec<Box<dyn ChordalityMethod>> {
    vec![
        Box::new(MinorMethod),
        Box::new(RestrictionMethod),
        Box::new(PeoMethod),
        Box::new(DecomposeMethod),
    ]
}

/// Looks a method up by id.
pub fn method(id: &str) -> Result<Box<dyn ChordalityMethod>> {
    methods()
        .into_iter()
        .find(|m| m.id() == id)
        .ok_or_else(|| Error::UnknownMethod(id.to_string()))
}

/// GF(q)-chordality of `m` by the named characterization.
pub fn is_gfq_chordal(m: &RepMatroid, method_id: &str) -> Result<Verdict> {
    method(method_id)?.decide(m)
}
