use std::collections::HashSet;

use super::RepMatroid;
use crate::bitset::ElemSet;

/// A flat together with its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatRecord {
    pub rank: usize,
    pub elements: ElemSet,
}

impl RepMatroid {
    /// Flats grouped by rank: `lattice[k]` holds every rank-`k` flat once,
    /// sorted. Built upward from `cl(∅)` by taking covers `cl(F ∪ e)`.
    pub fn flat_lattice(&self) -> Vec<Vec<ElemSet>> {
        self.flat_lattice_up_to(usize::MAX)
    }

    pub(crate) fn flat_lattice_up_to(&self, max_rank: usize) -> Vec<Vec<ElemSet>> {
        let mut levels = vec![vec![self.closure(&ElemSet::new())]];
        let top = self.rank().min(max_rank);
        for _ in 0..top {
            let mut seen: HashSet<ElemSet> = HashSet::new();
            let mut next = Vec::new();
            for flat in levels.last().unwrap() {
                let span = self.span(flat);
                let mut covered = flat.clone();
                for e in 0..self.len() {
                    if covered.contains(e) {
                        continue;
                    }
                    let mut s = span.clone();
                    s.insert(&self.points[e]);
                    let cover = self.closure_of_span(&s);
                    covered = covered.union(&cover);
                    if seen.insert(cover.clone()) {
                        next.push(cover);
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        levels
    }

    /// All flats (optionally only those of one rank), each exactly once.
    pub fn flats(&self, rank_filter: Option<usize>) -> Vec<FlatRecord> {
        match rank_filter {
            Some(k) if k > self.rank() => Vec::new(),
            Some(k) => self.flat_lattice_up_to(k)[k]
                .iter()
                .map(|f| FlatRecord {
                    rank: k,
                    elements: f.clone(),
                })
                .collect(),
            None => self
                .flat_lattice()
                .into_iter()
                .enumerate()
                .flat_map(|(k, fs)| fs.into_iter().map(move |f| FlatRecord { rank: k, elements: f }))
                .collect(),
        }
    }

    /// A flat `H` with `r(F) + r(H) != r(F ∩ H) + r(F ∪ H)`, if any; `None`
    /// means `f` is modular.
    pub fn modular_violation(&self, f: &ElemSet) -> Option<ElemSet> {
        let rf = self.rank_of(f);
        self.flat_lattice().into_iter().flatten().find(|h| {
            rf + self.rank_of(h) != self.rank_of(&f.intersection(h)) + self.rank_of(&f.union(h))
        })
    }

    /// Flats of rank `rank() - 1`.
    pub fn hyperplanes(&self) -> Vec<ElemSet> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        self.flat_lattice_up_to(r - 1).pop().unwrap()
    }
}
