//! Bounded search for representations of uniform matroids.

use std::collections::HashSet;

use super::pg_points;
use crate::error::{Error, Result};
use crate::gfq::{Field, Vector};
use crate::matroid::{projective_points_of, RepMatroid};

/// Default node budget for [`uniform`]; large enough to exhaust every
/// instance the crate's checks rely on.
pub const DEFAULT_UNIFORM_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformOutcome {
    Found(RepMatroid),
    /// The whole (symmetry-reduced) search space was exhausted.
    NotRepresentable,
}

impl UniformOutcome {
    pub fn found(self) -> Option<RepMatroid> {
        match self {
            UniformOutcome::Found(m) => Some(m),
            UniformOutcome::NotRepresentable => None,
        }
    }
}

/// Searches for `n` points of PG(r-1, q) with every `r`-subset independent.
///
/// Up to projective equivalence the first `r` points are the unit vectors
/// and the next is the all-ones vector; the remaining points are chosen in
/// increasing lexicographic order. Each placement is one node; exceeding
/// `budget` nodes yields [`Error::BudgetExceeded`].
pub fn uniform(r: usize, n: usize, q: usize, budget: u64) -> Result<UniformOutcome> {
    let f = Field::shared(q)?;
    if r > n {
        return Err(Error::InvalidMatroid(format!("U({r},{n}) needs r <= n")));
    }
    if (r == 0 && n > 0) || (r == 1 && n > 1) {
        return Ok(UniformOutcome::NotRepresentable);
    }
    let mut chosen: Vec<Vector> = (0..r).map(|i| Vector::unit(r, i)).collect();
    if n > r && r >= 2 {
        chosen.push(Vector(vec![1; r]));
    }
    chosen.truncate(n);
    let mut forbidden = HashSet::new();
    for (i, p) in chosen.iter().enumerate() {
        extend_forbidden(f, r, &chosen[..i], p, &mut forbidden);
    }
    let candidates = pg_points(f, r);
    let mut search = Search {
        f,
        r,
        n,
        budget,
        nodes: 0,
        candidates: &candidates,
    };
    match search.extend(&mut chosen, &forbidden, 0)? {
        true => {
            let m = RepMatroid::from_vectors(f, r, &chosen)?;
            Ok(UniformOutcome::Found(m))
        }
        false => Ok(UniformOutcome::NotRepresentable),
    }
}

/// Adds to `forbidden` every point spanned by `p` together with an
/// `(r-2)`-subset of `before`: a later point there would make some `r`-subset
/// dependent.
fn extend_forbidden(f: &'static Field, r: usize, before: &[Vector], p: &Vector, forbidden: &mut HashSet<Vector>) {
    if r == 0 {
        return;
    }
    let k = r - 1; // size of the spanning subsets that include p
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        f: &'static Field,
        r: usize,
        before: &[Vector],
        p: &Vector,
        k: usize,
        from: usize,
        idx: &mut Vec<usize>,
        out: &mut HashSet<Vector>,
    ) {
        if idx.len() + 1 == k || k == 0 {
            let mut basis: Vec<Vector> = idx.iter().map(|&i| before[i].clone()).collect();
            if k > 0 {
                basis.push(p.clone());
            }
            out.extend(projective_points_of(f, &basis, r));
            return;
        }
        for i in from..before.len() {
            idx.push(i);
            rec(f, r, before, p, k, i + 1, idx, out);
            idx.pop();
        }
    }
    if before.len() + 1 < k {
        // not enough points yet for a full (r-1)-subset; forbid the spans of
        // all smaller subsets containing p, which is what a later completion
        // would have to avoid anyway.
        let mut basis: Vec<Vector> = before.to_vec();
        basis.push(p.clone());
        forbidden.extend(projective_points_of(f, &basis, r));
        return;
    }
    rec(f, r, before, p, k, 0, &mut idx, forbidden);
}

struct Search<'a> {
    f: &'static Field,
    r: usize,
    n: usize,
    budget: u64,
    nodes: u64,
    candidates: &'a [Vector],
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<Vector>, forbidden: &HashSet<Vector>, from: usize) -> Result<bool> {
        if chosen.len() == self.n {
            return Ok(true);
        }
        for (ci, c) in self.candidates.iter().enumerate().skip(from) {
            if forbidden.contains(c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let mut next = forbidden.clone();
            extend_forbidden(self.f, self.r, chosen, c, &mut next);
            chosen.push(c.clone());
            if self.extend(chosen, &next, ci + 1)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_uniform(m: &RepMatroid, r: usize) -> bool {
        fn rec(m: &RepMatroid, r: usize, from: usize, cur: &mut Vec<usize>) -> bool {
            if cur.len() == r {
                return m.is_independent(&cur.iter().copied().collect());
            }
            (from..m.len()).all(|i| {
                cur.push(i);
                let ok = rec(m, r, i + 1, cur);
                cur.pop();
                ok
            })
        }
        rec(m, r, 0, &mut Vec::new())
    }

    fn find(r: usize, n: usize, q: usize) -> Option<RepMatroid> {
        uniform(r, n, q, DEFAULT_UNIFORM_BUDGET).unwrap().found()
    }

    #[test]
    fn line_over_gf3() {
        let m = find(2, 4, 3).unwrap();
        assert_eq!(m.len(), 4);
        let mut pts = m.points().to_vec();
        pts.sort();
        assert_eq!(pts, pg_points(Field::shared(3).unwrap(), 2));
    }

    #[test]
    fn too_many_points_on_a_line() {
        assert_eq!(uniform(2, 4, 2, DEFAULT_UNIFORM_BUDGET).unwrap(), UniformOutcome::NotRepresentable);
        assert_eq!(uniform(2, 5, 3, DEFAULT_UNIFORM_BUDGET).unwrap(), UniformOutcome::NotRepresentable);
        for q in [4, 5, 7, 8, 9] {
            assert!(find(2, q + 1, q).is_some());
            assert!(find(2, q + 2, q).is_none());
        }
    }

    #[test]
    fn hyperovals_exist_only_in_even_characteristic() {
        let m = find(3, 6, 4).unwrap();
        assert!(is_uniform(&m, 3));
        assert!(find(3, 5, 3).is_none());
        assert!(find(3, 4, 3).is_some());
        assert!(find(3, 4, 2).is_some());
        assert!(find(3, 5, 2).is_none());
        assert!(find(3, 6, 5).is_some());
        assert!(find(3, 7, 5).is_none());
    }

    #[test]
    fn found_matroids_are_uniform() {
        for (r, n, q) in [(3, 5, 4), (4, 5, 4), (4, 5, 2), (3, 4, 3), (1, 1, 2), (0, 0, 3), (3, 3, 2)] {
            let m = find(r, n, q).unwrap();
            assert_eq!((m.len(), m.rank()), (n, r));
            assert!(is_uniform(&m, r));
        }
    }

    #[test]
    fn degenerate_ranks() {
        assert!(find(1, 2, 5).is_none());
        assert!(find(0, 1, 2).is_none());
        assert!(matches!(uniform(3, 2, 2, 10), Err(Error::InvalidMatroid(_))));
        assert!(matches!(uniform(2, 3, 6, 10), Err(Error::UnsupportedOrder(6))));
    }

    #[test]
    fn budget_is_distinct_from_exhaustion() {
        assert!(matches!(uniform(3, 7, 5, 1), Err(Error::BudgetExceeded(1))));
    }
}
