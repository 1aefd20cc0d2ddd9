//! Perfect elimination orderings of cocircuits (Theorem 1.4).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::RepMatroid;

/// One step `C_i*` of an ordering, with the closure `cl_{M_i}(C_i*)` and the
/// rank of `M_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoStep {
    pub cocircuit: Vec<String>,
    pub closure: Vec<String>,
    pub closure_rank: usize,
    pub remaining_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoCertificate {
    pub steps: Vec<PeoStep>,
}

impl PeoCertificate {
    pub fn sizes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.cocircuit.len()).collect()
    }

    /// Certificate from bare cocircuit label lists; closures and ranks are
    /// left empty and filled in by [`verify_peo`]'s checks only.
    pub fn from_cocircuits(cs: Vec<Vec<String>>) -> Self {
        PeoCertificate {
            steps: cs
                .into_iter()
                .map(|c| PeoStep {
                    cocircuit: c,
                    closure: Vec::new(),
                    closure_rank: 0,
                    remaining_rank: 0,
                })
                .collect(),
        }
    }
}

/// Search effort, recorded to inform the open question of whether the
/// greedy choice of a first cocircuit is confluent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoStats {
    /// Cocircuits tried.
    pub nodes: u64,
    /// Tried cocircuits that did not extend to a full ordering.
    pub backtracks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoOutcome {
    pub certificate: Option<PeoCertificate>,
    pub stats: PeoStats,
}

/// `|F| = (q^{r(F)} - 1)/(q - 1)`.
pub fn is_projective_flat(m: &RepMatroid, f: &ElemSet) -> Result<bool> {
    if !m.is_flat(f) {
        return Err(Error::NotAFlat);
    }
    Ok(f.len() == m.field().projective_points(m.rank_of(f)))
}

/// Backtracking search for a perfect elimination ordering of cocircuits.
///
/// At each step the candidates are the cocircuits `C*` of the current
/// matroid `M_i` whose closure in `M_i` restricts to a projective geometry,
/// tried by decreasing closure rank (then lexicographically); the search
/// recurses on `M_i \ C*`, remembering remaining ground sets that failed.
pub fn find_peo(m: &RepMatroid) -> PeoOutcome {
    let mut search = Search {
        m,
        failed: HashSet::new(),
        stats: PeoStats::default(),
    };
    let mut steps = Vec::new();
    let found = search.go(&m.ground(), &mut steps);
    PeoOutcome {
        certificate: found.then_some(PeoCertificate { steps }),
        stats: search.stats,
    }
}

struct Search<'a> {
    m: &'a RepMatroid,
    failed: HashSet<ElemSet>,
    stats: PeoStats,
}

impl Search<'_> {
    fn go(&mut self, rem: &ElemSet, steps: &mut Vec<PeoStep>) -> bool {
        let m = self.m;
        let r = m.rank_of(rem);
        if r == 0 {
            return rem.is_empty();
        }
        if self.failed.contains(rem) {
            return false;
        }
        let sub = m.restrict(rem);
        let mut candidates: Vec<(usize, ElemSet, ElemSet)> = sub
            .hyperplanes()
            .into_iter()
            .filter_map(|h| {
                let c = sub.ground().difference(&h);
                let cl = sub.closure(&c);
                let k = sub.rank_of(&cl);
                (cl.len() == m.field().projective_points(k)).then(|| (k, c.expand(rem), cl.expand(rem)))
            })
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        for (k, c, cl) in candidates {
            self.stats.nodes += 1;
            steps.push(PeoStep {
                cocircuit: m.labels_of(&c),
                closure: m.labels_of(&cl),
                closure_rank: k,
                remaining_rank: r,
            });
            if self.go(&rem.difference(&c), steps) {
                return true;
            }
            steps.pop();
            self.stats.backtracks += 1;
        }
        self.failed.insert(rem.clone());
        false
    }
}

/// Outcome of [`verify_peo`]: `failing_step` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoVerdict {
    pub valid: bool,
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl PeoVerdict {
    fn fail(step: usize, reason: impl Into<String>) -> Self {
        PeoVerdict {
            valid: false,
            failing_step: Some(step),
            reason: Some(reason.into()),
        }
    }
}

/// Checks a certificate against the definition: the steps partition `E(M)`,
/// there are `r(M)` of them, and for each `i` with
/// `M_i = M \ (C_1* ∪ … ∪ C_{i-1}*)`:
/// `E(M_i)` is a flat of `M` of rank `r(M) - i + 1`, `C_i*` is a cocircuit of
/// `M_i`, `cl_M(C_i*) ⊆ E(M_i)`, and `M|cl_{M_i}(C_i*)` is a projective
/// geometry. Recorded closures and ranks, when present, must match.
pub fn verify_peo(m: &RepMatroid, cert: &PeoCertificate) -> Result<PeoVerdict> {
    let malformed = |s: String| Error::MalformedCertificate(s);
    if cert.steps.len() != m.rank() {
        return Err(malformed(format!(
            "{} steps for a matroid of rank {}",
            cert.steps.len(),
            m.rank()
        )));
    }
    let mut sets = Vec::with_capacity(cert.steps.len());
    let mut union = ElemSet::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let c = m
            .set_of(&step.cocircuit)
            .map_err(|e| malformed(format!("step {i}: {e}")))?;
        if c.len() != step.cocircuit.len() {
            return Err(malformed(format!("step {i} repeats a label")));
        }
        if !union.is_disjoint(&c) {
            return Err(malformed(format!("step {i} overlaps an earlier step")));
        }
        union = union.union(&c);
        sets.push(c);
    }
    if union != m.ground() {
        return Err(malformed("steps do not cover the ground set".into()));
    }
    let r = m.rank();
    let mut rem = m.ground();
    for (i, (c, step)) in sets.iter().zip(&cert.steps).enumerate() {
        if !m.is_flat(&rem) || m.rank_of(&rem) != r - i {
            return Ok(PeoVerdict::fail(i, format!("E(M_{}) is not a flat of rank {}", i + 1, r - i)));
        }
        let h = rem.difference(c);
        if m.rank_of(&h) + 1 != r - i || m.closure(&h).intersection(&rem) != h {
            return Ok(PeoVerdict::fail(i, "not a cocircuit of M_i"));
        }
        let cl_m = m.closure(c);
        if !cl_m.is_subset(&rem) {
            return Ok(PeoVerdict::fail(i, "cl_M(C*) leaves E(M_i)"));
        }
        let k = m.rank_of(&cl_m);
        if cl_m.len() != m.field().projective_points(k) {
            return Ok(PeoVerdict::fail(i, "closure is not a projective geometry"));
        }
        let recorded_ok = step.closure.is_empty()
            || (m.set_of(&step.closure).ok() == Some(cl_m.clone())
                && step.closure_rank == k
                && step.remaining_rank == r - i);
        if !recorded_ok {
            return Ok(PeoVerdict::fail(i, "recorded closure or ranks disagree"));
        }
        rem = h;
    }
    Ok(PeoVerdict {
        valid: true,
        failing_step: None,
        reason: None,
    })
}
