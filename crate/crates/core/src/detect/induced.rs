//! Induced restrictions (flats) and induced minors (flats of `si(M/I)`).

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{classify, Classification, Family, FamilyMember};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::RepMatroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    InducedRestriction,
    InducedMinor,
}

/// A located forbidden matroid: contract `contracted`, simplify, restrict to
/// `flat`. Flat labels are those of the contraction, i.e. the lowest-indexed
/// label of each merged parallel class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub contracted: Vec<String>,
    pub flat: Vec<String>,
    pub classification: Classification,
}

impl Witness {
    /// Rebuilds the witnessed matroid from `m`, checking that `contracted` is
    /// independent and `flat` is a flat of the contraction.
    pub fn replay(&self, m: &RepMatroid) -> Result<RepMatroid> {
        let i = m.set_of(&self.contracted)?;
        let c = m.contract_simplify(&i)?.matroid;
        let f = c.set_of(&self.flat)?;
        if !c.is_flat(&f) {
            return Err(Error::NotAFlat);
        }
        Ok(c.restrict(&f))
    }
}

/// Visits `(I, si(M/I), flat, classification)` for one independent set `I`
/// per flat of `M` of rank at most `max_contract`, and every flat of the
/// contraction with rank in `flat_ranks`. Contractions are visited in order of
/// increasing `r(I)`, flats in order of increasing rank.
fn scan<B>(
    m: &RepMatroid,
    max_contract: usize,
    flat_ranks: (usize, Option<usize>),
    mut visit: impl FnMut(&ElemSet, &RepMatroid, &ElemSet, Classification) -> ControlFlow<B>,
) -> Option<B> {
    let r = m.rank();
    let lattice = m.flat_lattice_up_to(max_contract.min(r));
    for level in &lattice {
        for flat in level {
            let i = m.basis_of(flat);
            let c = m.contract_simplify(&i).expect("a basis is independent").matroid;
            let top = flat_ranks.1.map_or(c.rank(), |x| x.min(c.rank()));
            if flat_ranks.0 > top {
                continue;
            }
            let sub = c.flat_lattice_up_to(top);
            for g in sub[flat_ranks.0..=top].iter().flatten() {
                if let ControlFlow::Break(b) = visit(&i, &c, g, classify(&c, g)) {
                    return Some(b);
                }
            }
        }
    }
    None
}

fn witness(m: &RepMatroid, i: &ElemSet, c: &RepMatroid, g: &ElemSet, cls: Classification) -> Witness {
    Witness {
        kind: if i.is_empty() {
            WitnessKind::InducedRestriction
        } else {
            WitnessKind::InducedMinor
        },
        contracted: m.labels_of(i),
        flat: c.labels_of(g),
        classification: cls,
    }
}

/// Every flat of `m` whose classification belongs to `family`.
pub fn induced_restrictions(m: &RepMatroid, family: &Family) -> Vec<Witness> {
    let mut out = Vec::new();
    let ranks = (family.min_rank(), family.max_rank());
    scan::<()>(m, 0, ranks, |i, c, g, cls| {
        if family.matches(&cls, m.q()) {
            out.push(witness(m, i, c, g, cls));
        }
        ControlFlow::Continue(())
    });
    out
}

/// First flat of `m` (in order of increasing rank) whose classification
/// belongs to `family`.
pub fn has_induced_restriction(m: &RepMatroid, family: &Family) -> Option<Witness> {
    let ranks = (family.min_rank(), family.max_rank());
    scan(m, 0, ranks, |i, c, g, cls| {
        if family.matches(&cls, m.q()) {
            ControlFlow::Break(witness(m, i, c, g, cls))
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// First induced minor of `m` in `family`, searching contractions by
/// increasing rank (so induced restrictions are found first).
pub fn has_induced_minor(m: &RepMatroid, family: &Family) -> Option<Witness> {
    let ranks = (family.min_rank(), family.max_rank());
    let max_contract = m.rank().saturating_sub(family.min_rank());
    scan(m, max_contract, ranks, |i, c, g, cls| {
        if family.matches(&cls, m.q()) {
            ControlFlow::Break(witness(m, i, c, g, cls))
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// Every induced minor of `m` in `family` (one per contracted flat and
/// flat of the contraction).
pub fn induced_minors(m: &RepMatroid, family: &Family) -> Vec<Witness> {
    let mut out = Vec::new();
    let ranks = (family.min_rank(), family.max_rank());
    let max_contract = m.rank().saturating_sub(family.min_rank());
    scan::<()>(m, max_contract, ranks, |i, c, g, cls| {
        if family.matches(&cls, m.q()) {
            out.push(witness(m, i, c, g, cls));
        }
        ControlFlow::Continue(())
    });
    out
}

fn circuit_size(c: &Classification, q: usize) -> usize {
    match c.uniform_params(q) {
        Some((r, n)) if n == r + 1 && n >= 4 => n,
        _ => 0,
    }
}

/// Size of a largest circuit that is an induced minor; circuits with fewer
/// than four elements are not counted (0 if there is none).
pub fn largest_circuit_induced_minor(m: &RepMatroid) -> usize {
    let family = Family::new(vec![FamilyMember::CircuitsFrom { min: 4 }]);
    induced_minors(m, &family)
        .iter()
        .map(|w| circuit_size(&w.classification, m.q()))
        .max()
        .unwrap_or(0)
}

/// Size of a largest circuit flat with at least four elements (0 if none).
pub fn largest_circuit_induced_restriction(m: &RepMatroid) -> usize {
    let family = Family::new(vec![FamilyMember::CircuitsFrom { min: 4 }]);
    induced_restrictions(m, &family)
        .iter()
        .map(|w| circuit_size(&w.classification, m.q()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        affine_geometry, circuit_matroid, complete_graph, dual, gpc, graphic, pg, s8, wheel, GlueMode, GluePairing,
    };
    use crate::detect::{forbidden_family, Route};

    fn c4_family() -> Family {
        Family::new(vec![FamilyMember::Circuit { n: 4 }])
    }

    fn fano_fano_line() -> RepMatroid {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats(Some(2)).into_iter().next().unwrap().elements;
        gpc(&fano, &fano, &GluePairing::identity(&fano.labels_of(&line)), GlueMode::ProjectiveGuts).unwrap()
    }

    #[test]
    fn lemma_3_2_fixtures_have_c4_flats() {
        let k5e = {
            let mut e = complete_graph(5);
            e.pop();
            graphic(&e).unwrap()
        };
        assert!(!induced_restrictions(&k5e, &Family::new(vec![FamilyMember::GraphicK4])).is_empty());
        for m in [dual(&pg(3, 2).unwrap()).unwrap(), affine_geometry(4, 2).unwrap(), s8(), graphic(&wheel(4)).unwrap()] {
            let ws = induced_restrictions(&m, &c4_family());
            assert!(!ws.is_empty(), "{m:?}");
            for w in ws {
                assert_eq!(w.kind, WitnessKind::InducedRestriction);
                let replayed = w.replay(&m).unwrap();
                assert_eq!(super::super::classify_matroid(&replayed), w.classification);
            }
        }
    }

    #[test]
    fn projective_geometries_avoid_forbidden_families() {
        for r in 1..=4 {
            let p = pg(r, 2).unwrap();
            assert!(induced_restrictions(&p, &forbidden_family(2, Route::Restriction).unwrap()).is_empty());
            assert!(has_induced_minor(&p, &forbidden_family(2, Route::Minor).unwrap()).is_none());
        }
    }

    #[test]
    fn wheel_minor_is_a_restriction() {
        let w4 = graphic(&wheel(4)).unwrap();
        let w = has_induced_minor(&w4, &c4_family()).unwrap();
        assert!(w.contracted.is_empty());
    }

    #[test]
    fn fano_fano_line_has_no_k4_element_contraction() {
        let m = fano_fano_line();
        let k4 = Family::new(vec![FamilyMember::GraphicK4]);
        for e in 0..m.len() {
            let c = m.contract_simplify(&ElemSet::singleton(e)).unwrap().matroid;
            assert!(super::super::classify_matroid(&c) != Classification::GraphicK4);
        }
        assert!(has_induced_minor(&m, &k4).is_none());
        assert!(has_induced_minor(&m, &forbidden_family(2, Route::Minor).unwrap()).is_none());
    }

    #[test]
    fn k4_inside_k5() {
        // K4 subgraphs of K5 are induced, so their cycle matroids are flats
        let k5 = graphic(&complete_graph(5)).unwrap();
        let w = has_induced_minor(&k5, &Family::new(vec![FamilyMember::GraphicK4])).unwrap();
        assert!(w.contracted.is_empty());
        let replayed = w.replay(&k5).unwrap();
        assert_eq!((replayed.len(), replayed.rank()), (6, 3));
    }

    #[test]
    fn induced_minor_after_contraction_replays() {
        // C4 is an induced minor of C5 only after contracting one element
        let c5 = circuit_matroid(5, 2).unwrap();
        let ws = induced_minors(&c5, &c4_family());
        assert!(!ws.is_empty());
        assert!(ws.iter().all(|w| w.kind == WitnessKind::InducedMinor));
        for w in &ws {
            let replayed = w.replay(&c5).unwrap();
            assert_eq!(super::super::classify_matroid(&replayed), Classification::Circuit { n: 4 });
        }
    }

    #[test]
    fn largest_circuits() {
        let c5 = circuit_matroid(5, 2).unwrap();
        assert_eq!(largest_circuit_induced_minor(&c5), 5);
        assert_eq!(largest_circuit_induced_restriction(&c5), 5);
        let fano = pg(3, 2).unwrap();
        assert_eq!(largest_circuit_induced_minor(&fano), 0);
        assert_eq!(largest_circuit_induced_restriction(&fano), 0);
    }

    #[test]
    fn replay_rejects_bad_witnesses() {
        let fano = pg(3, 2).unwrap();
        let w = Witness {
            kind: WitnessKind::InducedRestriction,
            contracted: vec![],
            flat: fano.labels()[..2].to_vec(),
            classification: Classification::Other,
        };
        assert_eq!(w.replay(&fano), Err(Error::NotAFlat));
        let dep = Witness {
            contracted: fano.labels_of(&fano.flats(Some(2))[0].elements),
            ..w
        };
        assert_eq!(dep.replay(&fano), Err(Error::DependentContractionSet));
    }
}
