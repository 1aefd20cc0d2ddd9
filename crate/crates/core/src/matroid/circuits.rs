use super::RepMatroid;
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::gfq::Subspace;

impl RepMatroid {
    /// Dependent, and every set obtained by dropping one element is independent.
    pub fn is_circuit(&self, s: &ElemSet) -> bool {
        if s.is_empty() || self.rank_of(s) != s.len() - 1 {
            return false;
        }
        s.iter().all(|e| {
            let mut t = s.clone();
            t.remove(e);
            self.is_independent(&t)
        })
    }

    /// Minimal dependent sets, optionally capped by size, sorted by size then
    /// lexicographically.
    ///
    /// Every circuit `C` is `I + e` with `I = C - max(C)` independent and all
    /// elements of `I` below `e`, so a depth-first walk over increasing
    /// independent sets reaches each circuit once.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<ElemSet> {
        let cap = max_size.unwrap_or(usize::MAX);
        let mut out = Vec::new();
        let span = Subspace::new(self.field, self.ambient);
        self.circuit_walk(&ElemSet::new(), &span, 0, cap, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn circuit_walk(&self, indep: &ElemSet, span: &Subspace, from: usize, cap: usize, out: &mut Vec<ElemSet>) {
        if indep.len() + 1 > cap {
            return;
        }
        for e in from..self.len() {
            let p = &self.points[e];
            if span.contains(p) {
                let mut c = indep.clone();
                c.insert(e);
                if self.is_circuit(&c) {
                    out.push(c);
                }
            } else {
                let mut next = indep.clone();
                next.insert(e);
                let mut s = span.clone();
                s.insert(p);
                self.circuit_walk(&next, &s, e + 1, cap, out);
            }
        }
    }

    /// Complements of hyperplanes.
    pub fn cocircuits(&self) -> Result<Vec<ElemSet>> {
        if self.rank() == 0 {
            return Err(Error::RankZero);
        }
        let ground = self.ground();
        let mut out: Vec<ElemSet> = self.hyperplanes().iter().map(|h| ground.difference(h)).collect();
        out.sort();
        Ok(out)
    }

    /// Greedy basis in index order.
    pub fn basis_of(&self, s: &ElemSet) -> ElemSet {
        let mut span = Subspace::new(self.field, self.ambient);
        s.iter().filter(|&i| span.insert(&self.points[i])).collect()
    }
}
