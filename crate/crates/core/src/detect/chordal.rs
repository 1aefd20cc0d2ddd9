//! Chordality: every circuit with at least four elements splits.

use serde::{Deserialize, Serialize};

use super::{induced_restrictions, Family, FamilyMember};
use crate::bitset::ElemSet;
use crate::matroid::RepMatroid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalReport {
    pub chordal: bool,
    /// A circuit flat (flat route) or unsplittable circuit (split route).
    pub witness: Option<Vec<String>>,
}

/// Chordality of `m`.
///
/// Binary matroids use Theorem 2.2: chordal iff no flat is a circuit with at
/// least four elements. Other fields fall back to the circuit-split
/// definition, for which no flat characterization is claimed.
pub fn is_chordal(m: &RepMatroid) -> ChordalReport {
    if m.q() != 2 {
        return is_chordal_circuitsplit(m);
    }
    let family = Family::new(vec![FamilyMember::CircuitsFrom { min: 4 }]);
    let bad = induced_restrictions(m, &family).into_iter().next();
    ChordalReport {
        chordal: bad.is_none(),
        witness: bad.map(|w| w.flat),
    }
}

/// Chordality straight from the definition: every circuit `D` with
/// `|D| >= 4` is `(D1 ∪ D2) - e` for circuits `D1`, `D2` with
/// `D1 ∩ D2 = {e}`.
///
/// Over GF(2) the partner of `D1` is forced to be `(D △ D1) ∪ {e}`, so
/// only circuits `D1` with `D1 - D = {e}` are scanned. Over larger fields
/// every split `D = A ⊔ B` and every `e ∈ cl(D) - D` are tried.
pub fn is_chordal_circuitsplit(m: &RepMatroid) -> ChordalReport {
    let circuits = m.circuits(None);
    let bad = if m.q() == 2 {
        binary_unsplit(m, &circuits)
    } else {
        circuits.iter().find(|d| d.len() >= 4 && !splits_generic(m, d)).cloned()
    };
    ChordalReport {
        chordal: bad.is_none(),
        witness: bad.map(|d| m.labels_of(&d)),
    }
}

fn binary_unsplit(m: &RepMatroid, circuits: &[ElemSet]) -> Option<ElemSet> {
    let set: std::collections::HashSet<&ElemSet> = circuits.iter().collect();
    circuits
        .iter()
        .filter(|d| d.len() >= 4)
        .find(|d| {
            !circuits.iter().any(|d1| {
                let outside = d1.difference(d);
                if outside.len() != 1 || d1.len() < 3 {
                    return false;
                }
                let mut d2 = d.symmetric_difference(d1);
                d2.insert(outside.first().unwrap());
                d2.len() >= 3 && set.contains(&d2)
            })
        })
        .map(|d| {
            debug_assert!(m.is_circuit(d));
            d.clone()
        })
}

fn splits_generic(m: &RepMatroid, d: &ElemSet) -> bool {
    let elems: Vec<usize> = d.iter().collect();
    let outside = m.closure(d).difference(d);
    let n = elems.len();
    let found = outside.iter().any(|e| {
        // A contains elems[0] to visit each unordered split once
        (0u64..1 << (n - 1)).any(|mask| {
            let a: ElemSet = std::iter::once(elems[0])
                .chain((1..n).filter(|i| mask & (1 << (i - 1)) != 0).map(|i| elems[i]))
                .collect();
            let b = d.difference(&a);
            if a.len() < 2 || b.len() < 2 {
                return false;
            }
            let mut d1 = a;
            d1.insert(e);
            let mut d2 = b;
            d2.insert(e);
            m.is_circuit(&d1) && m.is_circuit(&d2)
        })
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circuit_matroid, complete_graph, graphic, pg, wheel};
    use crate::ElemSet;

    #[test]
    fn examples() {
        assert!(is_chordal(&pg(3, 2).unwrap()).chordal);
        let c4 = circuit_matroid(4, 2).unwrap();
        let r = is_chordal(&c4);
        assert!(!r.chordal);
        assert_eq!(r.witness.unwrap().len(), 4);
        assert!(!is_chordal(&graphic(&wheel(4)).unwrap()).chordal);
        assert!(!is_chordal_circuitsplit(&c4).chordal);
        assert!(is_chordal_circuitsplit(&pg(4, 2).unwrap()).chordal);
        assert!(is_chordal_circuitsplit(&graphic(&complete_graph(4)).unwrap()).chordal);
    }

    #[test]
    fn generic_route_agrees_with_binary_route() {
        let p = pg(4, 2).unwrap();
        for mask in [0x7fffu32, 0x1234, 0x0f0f, 0x7a5b, 0x3ffe, 0x00ff] {
            let s: ElemSet = (0..15).filter(|i| mask & (1 << i) != 0).collect();
            let m = p.restrict(&s);
            let circuits = m.circuits(None);
            let generic = circuits.iter().find(|d| d.len() >= 4 && !splits_generic(&m, d)).cloned();
            assert_eq!(binary_unsplit(&m, &circuits).is_none(), generic.is_none());
            assert_eq!(is_chordal(&m).chordal, generic.is_none());
        }
    }

    #[test]
    fn ternary_circuits() {
        // every 4-circuit in PG(2,3) splits through a point of the plane
        assert!(is_chordal(&pg(3, 3).unwrap()).chordal);
        assert!(!is_chordal(&circuit_matroid(4, 3).unwrap()).chordal);
    }
}
