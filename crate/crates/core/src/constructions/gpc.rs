//! Generalized parallel connection by coordinate alignment.

use std::collections::HashSet;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::gfq::{normalize, Elem, Field, Vector};
use crate::matroid::{combine, coords_in, RepMatroid};

/// Identification of a flat `N1` of `M1` with a flat `N2` of `M2`, given as
/// `(label in M1, label in M2)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GluePairing {
    pub pairs: Vec<(String, String)>,
}

impl GluePairing {
    pub fn new<A: Into<String>, B: Into<String>>(pairs: impl IntoIterator<Item = (A, B)>) -> Self {
        GluePairing {
            pairs: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    /// Pairs every label with itself.
    pub fn identity<S: AsRef<str>>(labels: &[S]) -> Self {
        Self::new(labels.iter().map(|l| (l.as_ref().to_string(), l.as_ref().to_string())))
    }

    /// Parses `a:b,c:d,…`; a bare `a` pairs `a` with itself.
    pub fn parse(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (a, b) = match item.split_once(':') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (item, item),
            };
            if a.is_empty() || b.is_empty() {
                return Err(Error::IncompatiblePairing(format!("malformed pair `{item}`")));
            }
            pairs.push((a.to_string(), b.to_string()));
        }
        Ok(GluePairing { pairs })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlueMode {
    /// `M1|N1` must be a projective geometry.
    ProjectiveGuts,
    /// `N1` must be modular in `M1` or `N2` modular in `M2`.
    ModularGuts,
}

/// The generalized parallel connection `P_N(M1, M2)`.
///
/// Both matroids are respanned, then re-coordinatized so that the glued flat
/// spans the first `r(N)` coordinates of both and corresponding points
/// agree: `M1` lives in `[c, d, 0]` and `M2` in `[c, 0, e]` inside rank
/// `r(M1) + r(M2) - r(N)`. The ground set is `E(M1) ∪ (E(M2) - N2)`; labels
/// of `M2` that clash with `M1` get a trailing `'`.
pub fn gpc(m1: &RepMatroid, m2: &RepMatroid, glue: &GluePairing, mode: GlueMode) -> Result<RepMatroid> {
    if m1.q() != m2.q() {
        return Err(Error::FieldMismatch(m1.q(), m2.q()));
    }
    let f = m1.field();
    let m1 = m1.respan();
    let m2 = m2.respan();
    let mut left = Vec::with_capacity(glue.pairs.len());
    let mut right = Vec::with_capacity(glue.pairs.len());
    for (a, b) in &glue.pairs {
        left.push(m1.index_of(a)?);
        right.push(m2.index_of(b)?);
    }
    let n1: ElemSet = left.iter().copied().collect();
    let n2: ElemSet = right.iter().copied().collect();
    if n1.len() != left.len() || n2.len() != right.len() {
        return Err(Error::IncompatiblePairing("pairing is not a bijection".into()));
    }
    if !m1.is_flat(&n1) || !m2.is_flat(&n2) {
        return Err(Error::NotAFlat);
    }
    let k = m1.rank_of(&n1);
    if k != m2.rank_of(&n2) {
        return Err(Error::IncompatiblePairing("glued flats have different ranks".into()));
    }
    match mode {
        GlueMode::ProjectiveGuts => {
            if n1.len() != f.projective_points(k) {
                return Err(Error::NotProjectiveGuts);
            }
        }
        GlueMode::ModularGuts => {
            if m1.modular_violation(&n1).is_some() && m2.modular_violation(&n2).is_some() {
                return Err(Error::NotModularGuts);
            }
        }
    }

    // Bases of span(N1) and span(N2) that correspond under the pairing.
    let b1_idx: Vec<usize> = m1.basis_of(&n1).iter().collect();
    let b1: Vec<Vector> = b1_idx.iter().map(|&i| m1.point(i).clone()).collect();
    let partner = |i: usize| right[left.iter().position(|&l| l == i).unwrap()];
    let targets: Vec<Vector> = b1_idx.iter().map(|&i| m2.point(partner(i)).clone()).collect();
    let b2 = align_scalars(f, &m1, &m2, &left, &right, &b1, &targets).ok_or_else(|| {
        Error::IncompatiblePairing("pairing does not extend to a linear isomorphism".into())
    })?;

    let r1 = m1.ambient_rank();
    let r2 = m2.ambient_rank();
    let full1 = extend_to_basis(f, &b1, r1);
    let full2 = extend_to_basis(f, &b2, r2);
    let ambient = r1 + r2 - k;

    let mut points = Vec::with_capacity(m1.len() + m2.len() - n2.len());
    let mut labels = Vec::with_capacity(points.capacity());
    for (i, p) in m1.points().iter().enumerate() {
        let c = coords_in(f, &full1, p).expect("full basis spans");
        let mut v = c;
        v.resize(ambient, 0);
        points.push(normalize(f, &Vector(v))?);
        labels.push(m1.label(i).to_string());
    }
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    let mut e2_image: Vec<usize> = left.clone();
    for (i, p) in m2.points().iter().enumerate() {
        if n2.contains(i) {
            continue;
        }
        let c = coords_in(f, &full2, p).expect("full basis spans");
        let mut v: Vec<Elem> = c[..k].to_vec();
        v.resize(r1, 0);
        v.extend_from_slice(&c[k..]);
        points.push(normalize(f, &Vector(v))?);
        let mut l = m2.label(i).to_string();
        while !taken.insert(l.clone()) {
            l.push('\'');
        }
        labels.push(l);
        e2_image.push(points.len() - 1);
    }
    let out = RepMatroid::new(f, ambient, points, labels).map_err(|e| Error::GutsLeak(e.to_string()))?;

    let e1: ElemSet = (0..m1.len()).collect();
    let e2: ElemSet = e2_image.iter().copied().collect();
    let cl1 = out.closure(&e1);
    let cl2 = out.closure(&e2);
    if cl1 != e1 || cl2 != e2 {
        return Err(Error::GutsLeak("a side is not a flat of the connection".into()));
    }
    if cl1.intersection(&cl2) != n1 {
        return Err(Error::GutsLeak("the sides meet outside the glued flat".into()));
    }
    if out.restrict(&e1).proj_equivalent(&m1)?.is_none() || out.restrict(&e2).proj_equivalent(&m2)?.is_none() {
        return Err(Error::GutsLeak("a side is not preserved".into()));
    }
    Ok(out)
}

/// Scalars `λ` (with `λ_1 = 1`) such that `b1_i ↦ λ_i · target_i` carries
/// every paired point of `N1` onto its partner up to scale; returns the
/// scaled targets.
fn align_scalars(
    f: &'static Field,
    m1: &RepMatroid,
    m2: &RepMatroid,
    left: &[usize],
    right: &[usize],
    b1: &[Vector],
    targets: &[Vector],
) -> Option<Vec<Vector>> {
    let k = b1.len();
    let coeffs: Vec<Vec<Elem>> = left
        .iter()
        .map(|&i| coords_in(f, b1, m1.point(i)).expect("point of N1 lies in span(N1)"))
        .collect();
    let nonzero: Vec<Elem> = f.nonzero().collect();
    let mut lambda = vec![1 as Elem; k];
    let total = if k == 0 { 1 } else { nonzero.len().pow(k as u32 - 1) };
    for code in 0..total {
        let mut x = code;
        for l in lambda.iter_mut().skip(1) {
            *l = nonzero[x % nonzero.len()];
            x /= nonzero.len();
        }
        let scaled: Vec<Vector> = targets.iter().zip(&lambda).map(|(t, &l)| t.scaled(f, l)).collect();
        let ok = coeffs.iter().zip(right).all(|(c, &j)| {
            let img = combine(f, &scaled, c, m2.ambient_rank());
            normalize(f, &img).map_or(false, |p| p == *m2.point(j))
        });
        if ok {
            return Some(scaled);
        }
    }
    None
}

/// `basis` followed by the unit vectors needed to reach rank `n`.
fn extend_to_basis(f: &'static Field, basis: &[Vector], n: usize) -> Vec<Vector> {
    let mut span = crate::gfq::Subspace::new(f, n);
    let mut out = Vec::with_capacity(n);
    for b in basis.iter().cloned().chain((0..n).map(|i| Vector::unit(n, i))) {
        if span.insert(&b) {
            out.push(b);
        }
    }
    out
}
