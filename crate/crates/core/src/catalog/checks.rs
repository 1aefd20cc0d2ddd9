//! Registry of theorem checks run over catalog universes.
//!
//! Each check states one result of the paper as a per-matroid predicate
//! that either passes, fails with a JSON witness, or is vacuous (the
//! hypothesis never fires on that member).

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{enumerate_classes, EnumerateOptions, Universe, CODE_HASH};
use crate::bitset::ElemSet;
use crate::constructions::{dual_k33, pg, uniform, DEFAULT_UNIFORM_BUDGET};
use crate::decompose::{
    check_guts_rank, decompose_tree, modular_side, vertical_separations, DecompMode, Side,
};
use crate::detect::{
    classify_matroid, forbidden_family, has_induced_minor, has_induced_restriction, is_chordal,
    is_chordal_circuitsplit, largest_circuit_induced_minor, largest_circuit_induced_restriction, methods, Family,
    FamilyMember, Route, Witness,
};
use crate::error::{Error, Result};
use crate::gfq::{Field, Vector};
use crate::matroid::RepMatroid;
use crate::peo::{find_peo, verify_peo};

/// Result of a check on one matroid.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    /// The implication's hypothesis does not apply.
    Vacuous,
    Fail(Value),
}

/// One result of the paper as a per-matroid check over a default universe.
pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    /// Alternative ids accepted by [`check`].
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }
    fn statement(&self) -> &'static str;
    fn universe(&self) -> Result<Universe>;
    fn check(&self, m: &RepMatroid) -> Result<Outcome>;
}

struct FnCheck {
    id: &'static str,
    aliases: &'static [&'static str],
    statement: &'static str,
    universe: fn() -> Result<Universe>,
    check: fn(&RepMatroid) -> Result<Outcome>,
}

impl Check for FnCheck {
    fn id(&self) -> &'static str {
        self.id
    }

    fn aliases(&self) -> &'static [&'static str] {
        self.aliases
    }

    fn statement(&self) -> &'static str {
        self.statement
    }

    fn universe(&self) -> Result<Universe> {
        (self.universe)()
    }

    fn check(&self, m: &RepMatroid) -> Result<Outcome> {
        (self.check)(m)
    }
}

/// Every registered check, in paper order.
pub fn checks() -> Vec<Box<dyn Check>> {
    let c = |id, aliases, statement, universe, check| -> Box<dyn Check> {
        Box::new(FnCheck {
            id,
            aliases,
            statement,
            universe,
            check,
        })
    };
    vec![
        c(
            "thm-1.1",
            &[],
            "binary: GF(2)-chordal (decompose) <=> no {M(C4), M(K4)} induced minor <=> no {M(Cn): n>=4} u {M(K4), M*(K33)} induced restriction",
            binary4,
            thm_1_1,
        ),
        c(
            "thm-1.4",
            &["cor-4.2"],
            "GF(q)-chordal <=> a perfect elimination ordering of cocircuits exists (found orderings verify)",
            binary4_and_small_q,
            thm_1_4,
        ),
        c(
            "thm-2.2",
            &[],
            "binary: chordal <=> circuit-split chordal <=> no M(C4) induced minor <=> no M(Cn), n>=4, induced restriction",
            binary4,
            thm_2_2,
        ),
        c(
            "lemma-2.1",
            &[],
            "binary: a largest induced-minor circuit (n>=4) also occurs as an induced restriction",
            binary4,
            lemma_2_1,
        ),
        c(
            "lemma-2.3",
            &[],
            "binary: an exact vertical k-separation with empty guts forces an M(C4) induced minor",
            binary4,
            lemma_2_3,
        ),
        c(
            "lemma-2.4",
            &[],
            "binary chordal: every exact vertical k-separation has r(G) = k-1",
            binary4,
            lemma_2_4,
        ),
        c(
            "lemma-2.6",
            &[],
            "binary chordal: the guts of an exact vertical separation is modular in M|cl(X) or M|cl(Y)",
            binary4,
            lemma_2_6,
        ),
        c(
            "thm-2.7",
            &[],
            "binary chordal: generalized parallel connections across one-side-modular flats of round pieces",
            binary4,
            thm_2_7,
        ),
        c(
            "lemma-3.1",
            &[],
            "binary, r=4, |E|>9: an M(C4)/M(K4) induced restriction, or no M(K4) induced minor",
            rank4_large,
            lemma_3_1,
        ),
        c(
            "lemma-3.2",
            &[],
            "binary: M/f with an M(K4) induced restriction forces an M(C4), M(K4) or M*(K33) induced restriction",
            binary4,
            lemma_3_2,
        ),
        c(
            "lemma-3.3",
            &[],
            "binary: M/e with an M*(K33) induced minor forces an M(C4), M(K4) or M*(K33) induced restriction (rank-5 lifts, exhaustive plus sampled noise)",
            k33_lifts,
            lemma_3_3,
        ),
        c(
            "lemma-3.4",
            &[],
            "instance of ir=im: the forbidden restriction family is closed under single-element lifts, and excluding its induced-minor-minimal members as induced minors equals excluding it as induced restrictions",
            binary4_and_ternary3,
            lemma_3_4,
        ),
        c(
            "thm-3.5",
            &["thm-1.2"],
            "q>2: GF(q)-chordal <=> no member of the minor family <=> no member of the restriction family (all methods agree)",
            small_q_gt2,
            thm_3_5,
        ),
        c(
            "cor-gf3",
            &[],
            "ternary: GF(3)-chordal (peo) <=> no U23 induced minor <=> no M(Cn), n>=3, induced restriction",
            ternary3,
            cor_gf3,
        ),
        c(
            "cor-gf4",
            &[],
            "GF(4): GF(4)-chordal (peo) <=> no {U23, U24, U36} induced minor <=> no {U(n,n+1): n>=2} u {U24, U35, U36} induced restriction (rank 3 sampled)",
            gf4_universe,
            cor_gf4,
        ),
        c(
            "lemma-3.6",
            &[],
            "q>2: M/e with a U(2,n) induced minor (3<=n<=q) forces a {U(2,k): 3<=k<=q} u {U(3,n+1)} induced restriction",
            ternary3_and_gf4_sample,
            lemma_3_6,
        ),
        c(
            "lemma-3.7",
            &[],
            "q>2: M/e = U(r,n) with 2<r<n forces a {U(2+t,k+t): 3<=k<=q, 0<=t<=q-3} u {U(r,n), U(r+1,n+1)} induced restriction (sampled lifts)",
            uniform_lifts,
            lemma_3_7,
        ),
    ]
}

/// Looks a check up by id or alias.
pub fn check(id: &str) -> Result<Box<dyn Check>> {
    checks()
        .into_iter()
        .find(|c| c.id() == id || c.aliases().contains(&id))
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub q: usize,
    /// Canonical points as digit strings.
    pub points: Vec<String>,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub universe: String,
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    /// Passing members on which the hypothesis never applied.
    pub vacuous: usize,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
    pub provenance: String,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    pub fn line(&self) -> ReportLine {
        ReportLine {
            check: self.check.clone(),
            input: self.universe.clone(),
            result: json!({
                "ok": self.ok(),
                "total": self.total,
                "pass": self.pass,
                "fail": self.fail,
                "vacuous": self.vacuous,
                "provenance": self.provenance,
            }),
            witness: (!self.counterexamples.is_empty()).then(|| json!(self.counterexamples)),
            elapsed_ms: self.elapsed_ms,
        }
    }
}

/// One JSON-lines report record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub check: String,
    pub input: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub elapsed_ms: u128,
}

/// Runs a check over `universe` (its default universe when `None`), in
/// parallel on the current rayon pool. Member order, and hence the report,
/// is deterministic.
pub fn verify(check_id: &str, universe: Option<Universe>) -> Result<VerificationReport> {
    let c = check(check_id)?;
    let start = Instant::now();
    let universe = match universe {
        Some(u) => u,
        None => c.universe()?,
    };
    let outcomes: Vec<Outcome> = universe.members.par_iter().map(|m| c.check(m)).collect::<Result<_>>()?;
    let mut report = VerificationReport {
        check: c.id().to_string(),
        universe: universe.description.clone(),
        total: outcomes.len(),
        pass: 0,
        fail: 0,
        vacuous: 0,
        counterexamples: Vec::new(),
        elapsed_ms: 0,
        provenance: CODE_HASH.to_string(),
    };
    for (m, o) in universe.members.iter().zip(outcomes) {
        match o {
            Outcome::Pass => report.pass += 1,
            Outcome::Vacuous => {
                report.pass += 1;
                report.vacuous += 1;
            }
            Outcome::Fail(detail) => {
                report.fail += 1;
                report.counterexamples.push(Counterexample {
                    q: m.q(),
                    points: m.canonical_form().iter().map(Vector::digits).collect(),
                    detail,
                });
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

// ---------------------------------------------------------------- universes

/// Seed of every sampled universe.
pub const SAMPLE_SEED: u64 = 0x5eed_c40d;
/// Rank-3 GF(4) matroids sampled for `cor-gf4`, `thm-3.5` and `lemma-3.6`.
pub const GF4_SAMPLES: usize = 200;
/// Rank-5 lifts of M*(K33) sampled for `lemma-3.3`.
pub const K33_LIFT_SAMPLES: usize = 400;
/// Lifts sampled per uniform arc for `lemma-3.7`.
pub const UNIFORM_LIFT_SAMPLES: usize = 40;

fn binary4() -> Result<Universe> {
    Universe::spanning_catalog(&[(4, 2)])
}

fn ternary3() -> Result<Universe> {
    Universe::spanning_catalog(&[(3, 3)])
}

fn binary4_and_ternary3() -> Result<Universe> {
    Universe::spanning_catalog(&[(4, 2), (3, 3)])
}

fn small_q_gt2_catalog() -> Result<Universe> {
    Universe::spanning_catalog(&[(3, 3), (2, 4), (2, 5), (2, 7), (2, 8), (2, 9)])
}

fn small_q_gt2() -> Result<Universe> {
    Ok(small_q_gt2_catalog()?.extend(gf4_sample()?))
}

fn binary4_and_small_q() -> Result<Universe> {
    Ok(binary4()?.extend(small_q_gt2()?))
}

fn rank4_large() -> Result<Universe> {
    let opts = EnumerateOptions {
        spanning: true,
        min_size: Some(10),
        max_size: Some(15),
    };
    let members = enumerate_classes(4, 2, &opts)?.into_iter().map(|c| c.matroid).collect();
    Ok(Universe::new("simple spanning classes, GF(2) rank 4, 10<=|E|<=15", members))
}

/// Distinct random rank-3 restrictions of PG(2,4), up to projective
/// equivalence.
fn gf4_sample() -> Result<Universe> {
    let p = pg(3, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut seen = HashSet::new();
    let mut members = Vec::new();
    for _ in 0..GF4_SAMPLES {
        let density = rng.gen_range(0.15..0.9);
        let s: ElemSet = (0..p.len()).filter(|_| rng.gen_bool(density)).collect();
        let sub = p.restrict(&s);
        if sub.rank() < 3 {
            continue;
        }
        let c = sub.canonical();
        if seen.insert(c.points().to_vec()) {
            members.push(c);
        }
    }
    Ok(Universe::new(
        format!("{GF4_SAMPLES} seeded samples of rank-3 GF(4) restrictions (seed {SAMPLE_SEED:#x}), deduplicated"),
        members,
    ))
}

fn gf4_universe() -> Result<Universe> {
    Ok(Universe::spanning_catalog(&[(2, 4)])?.extend(gf4_sample()?))
}

fn ternary3_and_gf4_sample() -> Result<Universe> {
    Ok(ternary3()?.extend(gf4_sample()?))
}

/// `M` in `PG(4,2)` with cone point `e = e5`, built from the listing of
/// `M*(K33)` in the proof of Lemma 3.3: for each point `z` of the listing,
/// `M` holds `z`, `e+z`, or both. All `3^9` such lifts are included (the
/// exact setting of the proof), followed by [`K33_LIFT_SAMPLES`] seeded
/// lifts with one or two further points of `PG(4,2)` added as noise.
fn k33_lifts() -> Result<Universe> {
    let f = Field::shared(2)?;
    let z: Vec<Vector> = dual_k33().points().iter().map(|p| pad(p, 1)).collect();
    let e = Vector::unit(5, 4);
    let lift = |choice: &mut dyn FnMut() -> usize| -> Vec<Vector> {
        let mut pts = vec![e.clone()];
        for p in &z {
            match choice() {
                0 => pts.push(p.clone()),
                1 => pts.push(p.plus(f, &e)),
                _ => pts.extend([p.clone(), p.plus(f, &e)]),
            }
        }
        pts
    };
    let mut members = Vec::new();
    for code in 0..3usize.pow(z.len() as u32) {
        let mut rest = code;
        let pts = lift(&mut || {
            let d = rest % 3;
            rest /= 3;
            d
        });
        members.push(RepMatroid::from_vectors(f, 5, &pts)?);
    }
    let all = crate::constructions::pg_points(f, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..K33_LIFT_SAMPLES {
        let mut pts = lift(&mut || rng.gen_range(0..3));
        for _ in 0..rng.gen_range(1..=2) {
            pts.push(all.choose(&mut rng).expect("nonempty geometry").clone());
        }
        members.push(RepMatroid::from_vectors(f, 5, &pts)?);
    }
    Ok(Universe::new(
        format!(
            "all 19683 rank-5 lifts of M*(K33) + {K33_LIFT_SAMPLES} seeded lifts with noise points (seed {SAMPLE_SEED:#x})"
        ),
        members,
    ))
}

fn pad(p: &Vector, extra: usize) -> Vector {
    let mut c = p.coords().to_vec();
    c.extend(std::iter::repeat(0).take(extra));
    Vector(c)
}

/// `M` with cone point `e` and `M/e ≅ U(r,n)`: each point `x` of a uniform
/// arc is replaced by a nonempty random subset of its lifts `x + c e`.
fn uniform_lifts() -> Result<Universe> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut members = Vec::new();
    let arcs = [(3, 4, 3), (4, 5, 3), (3, 4, 4), (3, 5, 4), (3, 6, 4)];
    for (r, n, q) in arcs {
        let f = Field::shared(q)?;
        let Some(arc) = uniform(r, n, q, DEFAULT_UNIFORM_BUDGET)?.found() else {
            continue;
        };
        let e = Vector::unit(r + 1, r);
        for _ in 0..UNIFORM_LIFT_SAMPLES {
            let mut pts = vec![e.clone()];
            for x in arc.points() {
                let lifts: Vec<Vector> = f.elements().map(|c| pad(x, 1).plus(f, &e.scaled(f, c))).collect();
                let k = rng.gen_range(1..=lifts.len());
                pts.extend(lifts.choose_multiple(&mut rng, k).cloned());
            }
            members.push(RepMatroid::from_vectors(f, r + 1, &pts)?);
        }
    }
    Ok(Universe::new(
        format!(
            "{UNIFORM_LIFT_SAMPLES} seeded lifts per arc U(3,4), U(4,5) over GF(3) and U(3,4), U(3,5), U(3,6) over GF(4) (seed {SAMPLE_SEED:#x})"
        ),
        members,
    ))
}

// ------------------------------------------------------------------ checks

fn family(s: &str, q: usize) -> Family {
    Family::parse(s, q).expect("valid family id")
}

fn witness_json(w: &Option<Witness>) -> Value {
    json!(w)
}

fn agree(values: &BTreeMap<&str, bool>) -> Outcome {
    let mut it = values.values();
    let first = it.next().copied();
    if it.all(|v| Some(*v) == first) {
        Outcome::Pass
    } else {
        Outcome::Fail(json!(values))
    }
}

fn verdicts(m: &RepMatroid, ids: &[&str]) -> Result<BTreeMap<&'static str, bool>> {
    let mut out = BTreeMap::new();
    for method in methods() {
        if ids.contains(&method.id()) {
            out.insert(method.id(), method.decide(m)?.chordal);
        }
    }
    Ok(out)
}

fn singles(m: &RepMatroid) -> impl Iterator<Item = (usize, RepMatroid)> + '_ {
    (0..m.len()).map(move |e| {
        let c = m.contract_simplify(&ElemSet::singleton(e)).expect("a point is independent");
        (e, c.matroid)
    })
}

fn thm_1_1(m: &RepMatroid) -> Result<Outcome> {
    Ok(agree(&verdicts(m, &["minor", "restriction", "decompose"])?))
}

fn thm_1_4(m: &RepMatroid) -> Result<Outcome> {
    let minor = has_induced_minor(m, &forbidden_family(m.q(), Route::Minor)?).is_none();
    let peo = find_peo(m);
    let valid = match &peo.certificate {
        Some(c) => verify_peo(m, c)?.valid,
        None => true,
    };
    Ok(if valid && peo.certificate.is_some() == minor {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({"gfq_chordal": minor, "peo": peo.certificate, "certificate_valid": valid}))
    })
}

fn thm_2_2(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    let values = BTreeMap::from([
        ("chordal", is_chordal(m).chordal),
        ("circuit_split", is_chordal_circuitsplit(m).chordal),
        ("no_c4_minor", has_induced_minor(m, &family("c4", q)).is_none()),
        ("no_circuit_restriction", has_induced_restriction(m, &family("c4+", q)).is_none()),
    ]);
    Ok(agree(&values))
}

fn lemma_2_1(m: &RepMatroid) -> Result<Outcome> {
    let n = largest_circuit_induced_minor(m);
    if n < 4 {
        return Ok(Outcome::Vacuous);
    }
    let k = largest_circuit_induced_restriction(m);
    Ok(if k == n {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({"largest_minor_circuit": n, "largest_restriction_circuit": k}))
    })
}

fn lemma_2_3(m: &RepMatroid) -> Result<Outcome> {
    let empty: Vec<_> = vertical_separations(m, None).into_iter().filter(|s| s.k >= 2 && s.guts.is_empty()).collect();
    if empty.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    Ok(match has_induced_minor(m, &family("c4", m.q())) {
        Some(_) => Outcome::Pass,
        None => Outcome::Fail(json!({"separation": empty[0].labels(m)})),
    })
}

fn lemma_2_4(m: &RepMatroid) -> Result<Outcome> {
    if !is_chordal(m).chordal {
        return Ok(Outcome::Vacuous);
    }
    let report = check_guts_rank(m);
    Ok(match report.violations.first() {
        None if report.separations == 0 => Outcome::Vacuous,
        None => Outcome::Pass,
        Some(s) => Outcome::Fail(json!({"separation": s.labels(m), "guts_rank": m.rank_of(&s.guts)})),
    })
}

fn lemma_2_6(m: &RepMatroid) -> Result<Outcome> {
    if !is_chordal(m).chordal {
        return Ok(Outcome::Vacuous);
    }
    let seps = vertical_separations(m, None);
    if seps.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    for s in &seps {
        if modular_side(m, s)? == Side::Neither {
            return Ok(Outcome::Fail(json!({"separation": s.labels(m)})));
        }
    }
    Ok(Outcome::Pass)
}

fn thm_2_7(m: &RepMatroid) -> Result<Outcome> {
    if !is_chordal(m).chordal {
        return Ok(Outcome::Vacuous);
    }
    Ok(match decompose_tree(m, DecompMode::ChordalModular) {
        Ok(t) if t.leaves().iter().all(|l| crate::decompose::is_round(l)) => Outcome::Pass,
        Ok(_) => Outcome::Fail(json!({"error": "a leaf is not round"})),
        Err(e @ (Error::NoValidSplit(_) | Error::GutsLeak(_))) => Outcome::Fail(json!({"error": e.to_string()})),
        Err(e) => return Err(e),
    })
}

fn lemma_3_1(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    if has_induced_restriction(m, &family("c4,k4", q)).is_some() {
        return Ok(Outcome::Pass);
    }
    Ok(match has_induced_minor(m, &family("k4", q)) {
        None => Outcome::Vacuous,
        Some(w) => Outcome::Fail(json!({"k4_minor": w})),
    })
}

fn lemma_3_2(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    if has_induced_restriction(m, &family("c4,k4,k33-dual", q)).is_some() {
        return Ok(Outcome::Pass);
    }
    let k4 = family("k4", q);
    for (f, c) in singles(m) {
        let w = has_induced_restriction(&c, &k4);
        if w.is_some() {
            return Ok(Outcome::Fail(json!({"f": m.label(f), "k4_in_contraction": witness_json(&w)})));
        }
    }
    Ok(Outcome::Vacuous)
}

fn lemma_3_3(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    if has_induced_restriction(m, &family("c4,k4,k33-dual", q)).is_some() {
        return Ok(Outcome::Pass);
    }
    let k33 = family("k33-dual", q);
    for (e, c) in singles(m) {
        let w = has_induced_minor(&c, &k33);
        if w.is_some() {
            return Ok(Outcome::Fail(json!({"e": m.label(e), "k33_in_contraction": witness_json(&w)})));
        }
    }
    Ok(Outcome::Vacuous)
}

fn lemma_3_4(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    let n = forbidden_family(q, Route::Restriction)?;
    let n_min = forbidden_family(q, Route::Minor)?;
    let restriction = has_induced_restriction(m, &n);
    let minor = has_induced_minor(m, &n_min);
    if restriction.is_some() != minor.is_some() {
        return Ok(Outcome::Fail(json!({"restriction": restriction, "minor": minor})));
    }
    if restriction.is_none() {
        for (e, c) in singles(m) {
            let cls = classify_matroid(&c);
            if n.matches(&cls, q) {
                return Ok(Outcome::Fail(json!({"e": m.label(e), "contraction": cls})));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn thm_3_5(m: &RepMatroid) -> Result<Outcome> {
    Ok(agree(&verdicts(m, &["minor", "restriction", "peo", "decompose"])?))
}

fn three_routes(m: &RepMatroid, minor: &str, restriction: &str) -> Result<Outcome> {
    let q = m.q();
    let values = BTreeMap::from([
        ("peo", find_peo(m).certificate.is_some()),
        ("no_minor", has_induced_minor(m, &family(minor, q)).is_none()),
        ("no_restriction", has_induced_restriction(m, &family(restriction, q)).is_none()),
    ]);
    Ok(agree(&values))
}

fn cor_gf3(m: &RepMatroid) -> Result<Outcome> {
    three_routes(m, "u2-3", "c3+")
}

fn cor_gf4(m: &RepMatroid) -> Result<Outcome> {
    three_routes(m, "u2-3,u2-4,u3-6", "c3+,u2-4,u3-5,u3-6")
}

fn lemma_3_6(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    if q == 2 {
        return Ok(Outcome::Vacuous);
    }
    let lines = Family::new((3..=q).map(|k| FamilyMember::Uniform { r: 2, n: k }).collect());
    if has_induced_restriction(m, &lines).is_some() {
        return Ok(Outcome::Pass);
    }
    let mut fired = false;
    for (e, c) in singles(m) {
        for n in 3..=q {
            if has_induced_minor(&c, &Family::new(vec![FamilyMember::Uniform { r: 2, n }])).is_none() {
                continue;
            }
            fired = true;
            let arc = Family::new(vec![FamilyMember::Uniform { r: 3, n: n + 1 }]);
            if has_induced_restriction(m, &arc).is_none() {
                return Ok(Outcome::Fail(json!({"e": m.label(e), "n": n})));
            }
        }
    }
    Ok(if fired { Outcome::Pass } else { Outcome::Vacuous })
}

fn lemma_3_7(m: &RepMatroid) -> Result<Outcome> {
    let q = m.q();
    if q == 2 {
        return Ok(Outcome::Vacuous);
    }
    let mut fired = false;
    for (e, c) in singles(m) {
        let Some((r, n)) = classify_matroid(&c).uniform_params(q) else {
            continue;
        };
        if !(2 < r && r < n) {
            continue;
        }
        fired = true;
        let mut members = vec![FamilyMember::Uniform { r, n }, FamilyMember::Uniform { r: r + 1, n: n + 1 }];
        for t in 0..=q - 3 {
            for k in 3..=q {
                members.push(FamilyMember::Uniform { r: 2 + t, n: k + t });
            }
        }
        if has_induced_restriction(m, &Family::new(members)).is_none() {
            return Ok(Outcome::Fail(json!({"e": m.label(e), "contraction": [r, n]})));
        }
    }
    Ok(if fired { Outcome::Pass } else { Outcome::Vacuous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circuit_matroid, complete_graph, graphic};

    #[test]
    fn registry() {
        let ids: Vec<&str> = checks().iter().map(|c| c.id()).collect();
        assert_eq!(ids.len(), 17);
        let unique: HashSet<_> = ids.iter().collect();
        assert_eq!(unique.len(), ids.len());
        assert_eq!(check("cor-4.2").unwrap().id(), "thm-1.4");
        assert!(matches!(check("lemma-9.9"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn gf4_families_match_the_corollary() {
        assert_eq!(forbidden_family(4, Route::Minor).unwrap(), family("u2-3,u2-4,u3-6", 4));
        let mut r = forbidden_family(4, Route::Restriction).unwrap().members;
        let mut want = family("c3+,u2-4,u3-5,u3-6", 4).members;
        r.sort_by_key(|m| m.to_string());
        want.sort_by_key(|m| m.to_string());
        assert_eq!(r, want);
    }

    #[test]
    fn fixture_universe_reports_counterexamples() {
        // thm-2.2 on a handful of fixtures passes; a deliberately wrong
        // universe check (lemma-2.4 is vacuous off the chordal class) too
        let u = Universe::new(
            "fixtures",
            vec![
                circuit_matroid(4, 2).unwrap(),
                graphic(&complete_graph(4)).unwrap(),
                pg(3, 2).unwrap(),
            ],
        );
        let rep = verify("thm-2.2", Some(u.clone())).unwrap();
        assert_eq!((rep.total, rep.pass, rep.fail), (3, 3, 0));
        let rep = verify("lemma-2.4", Some(u)).unwrap();
        assert_eq!(rep.vacuous, 3);
        let line = serde_json::to_value(rep.line()).unwrap();
        assert_eq!(line["check"], "lemma-2.4");
        assert_eq!(line["result"]["ok"], true);
        assert!(line.get("witness").is_none());
    }

    #[test]
    fn failing_members_are_reported() {
        // a check whose predicate fails on every member
        struct Never;
        impl Check for Never {
            fn id(&self) -> &'static str {
                "never"
            }
            fn statement(&self) -> &'static str {
                ""
            }
            fn universe(&self) -> Result<Universe> {
                Ok(Universe::new("one", vec![pg(2, 2).unwrap()]))
            }
            fn check(&self, _: &RepMatroid) -> Result<Outcome> {
                Ok(Outcome::Fail(json!("no")))
            }
        }
        let c = Never;
        let u = c.universe().unwrap();
        let outcomes: Vec<_> = u.members.iter().map(|m| c.check(m).unwrap()).collect();
        assert_eq!(outcomes, vec![Outcome::Fail(json!("no"))]);
    }

    #[test]
    fn sampled_universes_are_reproducible() {
        let a = k33_lifts().unwrap();
        let b = k33_lifts().unwrap();
        assert_eq!(a.members.len(), 19683 + K33_LIFT_SAMPLES);
        assert!(a.members.iter().zip(&b.members).all(|(x, y)| x.points() == y.points()));
        let u = uniform_lifts().unwrap();
        assert_eq!(u.members.len(), 5 * UNIFORM_LIFT_SAMPLES);
    }

    #[test]
    fn quick_checks_pass_on_rank_three() {
        let u = Universe::spanning_catalog(&[(3, 2)]).unwrap();
        for c in checks() {
            let rep = verify(c.id(), Some(u.clone())).unwrap();
            // q>2-only checks simply see binary members; those that are
            // binary-specific must pass outright
            if ["thm-1.1", "thm-1.4", "thm-2.2", "lemma-2.1", "lemma-2.3", "lemma-2.4", "lemma-2.6", "thm-2.7", "lemma-3.2", "lemma-3.4"].contains(&c.id()) {
                assert!(rep.ok(), "{}: {:?}", c.id(), rep.counterexamples);
            }
        }
    }
}
