//! Exhaustive catalogs of simple restrictions of projective geometries up to
//! projective equivalence, the theorem-verification harness, and the text
//! file format.

mod checks;
mod io;

pub use checks::{check, checks, verify, Check, Counterexample, Outcome, ReportLine, VerificationReport};
pub use io::{format_canonical, format_matroid, parse_matroid, read_matroid, write_matroid};

use std::collections::BTreeMap;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::pg_points;
use crate::decompose::is_round;
use crate::detect::{classify_matroid, is_chordal, methods, Classification};
use crate::error::{Error, Result};
use crate::gfq::{normalize, Field, Matrix, Subspace, Vector};
use crate::matroid::RepMatroid;

/// SHA-256 of the `chordalm-core` sources this binary was built from.
pub const CODE_HASH: &str = env!("CHORDALM_CODE_HASH");

/// Environment variable capping catalog parallelism.
pub const THREADS_ENV: &str = "CHORDALM_THREADS";

/// Thread count from `CHORDALM_THREADS` (default 1; unparsable or zero
/// values fall back to 1).
pub fn configured_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(1)
}

/// Runs `f` on a rayon pool sized by [`configured_threads`].
pub fn with_configured_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(configured_threads())
        .build()
        .expect("thread pool")
        .install(f)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOptions {
    /// Only classes of full rank `r`.
    pub spanning: bool,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
}

impl EnumerateOptions {
    pub fn spanning() -> Self {
        EnumerateOptions {
            spanning: true,
            ..Default::default()
        }
    }

    fn admits(&self, n: usize) -> bool {
        self.min_size.map_or(true, |a| n >= a) && self.max_size.map_or(true, |b| n <= b)
    }
}

/// Whether the orbit computation for subsets of `PG(r-1, q)` is in scope.
pub fn feasible(r: usize, q: usize) -> bool {
    Field::shared(q).is_ok() && r >= 1 && (r <= 2 || (q == 2 && r <= 4) || (q == 3 && r <= 3))
}

/// Permutations of the points of `PG(r-1, q)` induced by a generating set
/// of `GL(r, q)`: the transvections `x_i += a x_j` and a primitive scaling of
/// the first coordinate.
fn generator_permutations(field: &'static Field, points: &[Vector]) -> Vec<Vec<usize>> {
    let r = points.first().map_or(0, Vector::len);
    let index: HashMap<&Vector, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut gens = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            for a in field.nonzero() {
                let mut g = Matrix::identity(field, r);
                g.set(i, j, a);
                gens.push(g);
            }
        }
    }
    let mut d = Matrix::identity(field, r);
    d.set(0, 0, field.primitive());
    gens.push(d);
    gens.iter()
        .map(|g| {
            points
                .iter()
                .map(|p| index[&normalize(field, &g.mul_vec(p)).expect("invertible maps keep points nonzero")])
                .collect()
        })
        .collect()
}

/// Least member (as a bitmask over the sorted points) and size of every
/// orbit of subsets of the points under the permutation group `gens`.
fn orbit_representatives(n: usize, gens: &[Vec<usize>]) -> Vec<(u32, u64)> {
    assert!(n < 32, "orbit enumeration is limited to 31 points");
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        // every mask below `start` is already in a closed orbit, so `start`
        // is the least member of its own
        seen[start] = true;
        stack.push(start as u32);
        let mut size = 0u64;
        while let Some(mask) = stack.pop() {
            size += 1;
            for g in gens {
                let mut image = 0u32;
                let mut bits = mask;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    image |= 1 << g[i];
                    bits &= bits - 1;
                }
                if !seen[image as usize] {
                    seen[image as usize] = true;
                    stack.push(image);
                }
            }
        }
        out.push((start as u32, size));
    }
    out
}

/// One projective-equivalence class as a canonical matroid, with the size
/// of its orbit among subsets of the ambient geometry.
#[derive(Debug, Clone)]
pub struct CatalogClass {
    pub matroid: RepMatroid,
    pub orbit_size: u64,
}

/// The classes of nonempty simple restrictions of `PG(r-1, q)` meeting
/// `opts`, each in canonical form (ambient dimension = its rank), ordered by
/// rank, size, then canonical points.
pub fn enumerate_classes(r: usize, q: usize, opts: &EnumerateOptions) -> Result<Vec<CatalogClass>> {
    if !feasible(r, q) {
        return Err(Error::InfeasibleUniverse { r, q });
    }
    let field = Field::shared(q)?;
    let points = pg_points(field, r);
    let gens = generator_permutations(field, &points);
    let reps: Vec<(Vec<Vector>, u64)> = orbit_representatives(points.len(), &gens)
        .into_iter()
        .filter(|&(mask, _)| mask != 0 && opts.admits(mask.count_ones() as usize))
        .map(|(mask, size)| {
            let pts: Vec<Vector> = (0..points.len()).filter(|i| mask >> i & 1 == 1).map(|i| points[i].clone()).collect();
            (pts, size)
        })
        .filter(|(pts, _)| !opts.spanning || Subspace::spanned_by(field, r, pts.iter()).rank() == r)
        .collect();
    let mut classes: Vec<CatalogClass> = reps
        .into_par_iter()
        .map(|(pts, orbit_size)| CatalogClass {
            matroid: RepMatroid::from_vectors(field, r, &pts).expect("distinct normalized points").canonical(),
            orbit_size,
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.matroid.rank(), a.matroid.len(), a.matroid.points()).cmp(&(b.matroid.rank(), b.matroid.len(), b.matroid.points()))
    });
    Ok(classes)
}

/// Precomputed predicates of a catalog member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    /// Circuit-split chordality (Theorem 2.2).
    pub chordal: bool,
    /// GF(q)-chordality by each registered method.
    pub gfq_chordal: BTreeMap<String, bool>,
    pub round: bool,
    pub peo_exists: bool,
}

impl Predicates {
    pub fn compute(m: &RepMatroid) -> Result<Self> {
        let mut gfq_chordal = BTreeMap::new();
        for method in methods() {
            gfq_chordal.insert(method.id().to_string(), method.decide(m)?.chordal);
        }
        Ok(Predicates {
            chordal: is_chordal(m).chordal,
            peo_exists: gfq_chordal["peo"],
            gfq_chordal,
            round: is_round(m),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub q: usize,
    pub r: usize,
    pub n: usize,
    /// Canonical points as digit strings, sorted.
    pub points: Vec<String>,
    pub orbit_size: u64,
    pub classification: Classification,
    pub predicates: Predicates,
    pub provenance: String,
}

impl CatalogRecord {
    pub fn from_class(c: &CatalogClass) -> Result<Self> {
        let m = &c.matroid;
        Ok(CatalogRecord {
            q: m.q(),
            r: m.rank(),
            n: m.len(),
            points: m.points().iter().map(Vector::digits).collect(),
            orbit_size: c.orbit_size,
            classification: classify_matroid(m),
            predicates: Predicates::compute(m)?,
            provenance: CODE_HASH.to_string(),
        })
    }

    pub fn matroid(&self) -> Result<RepMatroid> {
        let field = Field::shared(self.q)?;
        let pts: Vec<Vector> = self
            .points
            .iter()
            .map(|d| Vector::from_digits(d, self.q).ok_or_else(|| Error::InvalidMatroid(format!("bad digits `{d}`"))))
            .collect::<Result<_>>()?;
        RepMatroid::from_vectors(field, self.r, &pts)
    }
}

/// Catalog records with predicates, computed in parallel on the current
/// rayon pool.
pub fn enumerate(r: usize, q: usize, opts: &EnumerateOptions) -> Result<Vec<CatalogRecord>> {
    enumerate_classes(r, q, opts)?.par_iter().map(CatalogRecord::from_class).collect()
}

/// A named list of matroids that a check ranges over.
#[derive(Debug, Clone)]
pub struct Universe {
    pub description: String,
    pub members: Vec<RepMatroid>,
}

impl Universe {
    pub fn new(description: impl Into<String>, members: Vec<RepMatroid>) -> Self {
        Universe {
            description: description.into(),
            members,
        }
    }

    /// Union of spanning catalogs of ranks `1..=r` over each listed field.
    pub fn spanning_catalog(parts: &[(usize, usize)]) -> Result<Self> {
        let mut members = Vec::new();
        let mut desc = Vec::new();
        for &(r, q) in parts {
            for rank in 1..=r {
                members.extend(enumerate_classes(rank, q, &EnumerateOptions::spanning())?.into_iter().map(|c| c.matroid));
            }
            desc.push(format!("GF({q}) rank<={r}"));
        }
        Ok(Universe::new(
            format!("simple spanning classes, {}", desc.join(" + ")),
            members,
        ))
    }

    pub fn extend(mut self, other: Universe) -> Self {
        self.description = format!("{} + {}", self.description, other.description);
        self.members.extend(other.members);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn count(r: usize, q: usize) -> usize {
        enumerate_classes(r, q, &EnumerateOptions::spanning()).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(1, 2), 1);
        assert_eq!(count(2, 2), 2);
        // U_{2,2}, U_{2,3}, U_{2,4} over GF(3)
        assert_eq!(count(2, 3), 3);
        // rank-3 binary, by complement in the Fano plane: any 4 points, a
        // line or a triangle, any 3 points, any 2, any 1, nothing
        let classes = enumerate_classes(3, 2, &EnumerateOptions::spanning()).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.matroid.len()).collect();
        assert_eq!(sizes, vec![3, 4, 4, 5, 6, 7]);
        let total: u64 = classes.iter().map(|c| c.orbit_size).sum();
        // 128 subsets minus those of rank <= 2: empty, 7 points, 21 pairs, 7 lines
        assert_eq!(total, 128 - 1 - 7 - 21 - 7);
    }

    #[test]
    fn orbit_sizes_partition_all_subsets() {
        for (r, q) in [(3, 2), (4, 2), (2, 5), (3, 3)] {
            let classes = enumerate_classes(r, q, &EnumerateOptions::default()).unwrap();
            let total: u64 = classes.iter().map(|c| c.orbit_size).sum();
            let n = Field::shared(q).unwrap().projective_points(r);
            assert_eq!(total, (1u64 << n) - 1, "r={r} q={q}");
        }
    }

    #[test]
    fn records_are_canonical_and_distinct() {
        for (r, q) in [(3, 2), (4, 2), (3, 3), (2, 4)] {
            let classes = enumerate_classes(r, q, &EnumerateOptions::spanning()).unwrap();
            let mut keys = std::collections::HashSet::new();
            for c in &classes {
                assert_eq!(c.matroid.canonical_form(), c.matroid.points(), "fixed point");
                assert!(keys.insert(c.matroid.points().to_vec()));
            }
        }
    }

    #[test]
    fn random_subsets_hit_exactly_one_record() {
        let classes = enumerate_classes(4, 2, &EnumerateOptions::spanning()).unwrap();
        let index: HashMap<Vec<Vector>, usize> =
            classes.iter().enumerate().map(|(i, c)| (c.matroid.points().to_vec(), i)).collect();
        let p = pg(4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut hits = 0;
        for _ in 0..300 {
            let s: crate::ElemSet = (0..15).filter(|_| rng.gen_bool(0.5)).collect();
            let sub = p.restrict(&s);
            if sub.rank() < 4 {
                continue;
            }
            assert!(index.contains_key(&sub.canonical_form()));
            hits += 1;
        }
        assert!(hits > 200);
    }

    #[test]
    fn canonical_form_agrees_with_equivalence_on_rank_three() {
        let classes = enumerate_classes(3, 2, &EnumerateOptions::spanning()).unwrap();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                let eq = a.matroid.proj_equivalent(&b.matroid).unwrap().is_some();
                assert_eq!(eq, i == j);
            }
        }
    }

    #[test]
    fn infeasible_universes() {
        assert_eq!(
            enumerate_classes(5, 2, &EnumerateOptions::default()).unwrap_err(),
            Error::InfeasibleUniverse { r: 5, q: 2 }
        );
        assert!(enumerate_classes(3, 4, &EnumerateOptions::default()).is_err());
        assert!(enumerate_classes(2, 9, &EnumerateOptions::default()).is_ok());
    }

    #[test]
    fn size_filters_and_records() {
        let opts = EnumerateOptions {
            spanning: true,
            min_size: Some(10),
            max_size: Some(15),
        };
        let classes = enumerate_classes(4, 2, &opts).unwrap();
        assert!(classes.iter().all(|c| (10..=15).contains(&c.matroid.len())));
        // one class per complement of size 0..=5 with 5-element complements
        // in several shapes; at least the full geometry is present
        assert_eq!(classes.last().unwrap().matroid.len(), 15);
        let recs = enumerate(2, 2, &EnumerateOptions::spanning()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].points, vec!["01", "10", "11"]);
        assert!(recs[1].predicates.peo_exists);
        assert_eq!(recs[1].provenance.len(), 64);
        assert_eq!(recs[1].matroid().unwrap().points(), classes_of(2, 2)[1].points());
    }

    fn classes_of(r: usize, q: usize) -> Vec<RepMatroid> {
        enumerate_classes(r, q, &EnumerateOptions::spanning()).unwrap().into_iter().map(|c| c.matroid).collect()
    }
}
