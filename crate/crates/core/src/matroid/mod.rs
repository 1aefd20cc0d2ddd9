//! Simple matroids represented as point sets in PG(r-1, q).
//!
//! A [`RepMatroid`] carries an explicit coordinate representation: every
//! element is a normalized nonzero vector, no two elements are parallel, and
//! rank, closure and flats are computed by linear algebra over the carried
//! field. Subsets of the ground set are [`ElemSet`]s of element indices;
//! label-based lookups go through [`RepMatroid::set_of`].

mod circuits;
mod equivalence;
mod flats;

use std::collections::HashMap;
use std::fmt;

pub use equivalence::LinMap;
pub(crate) use equivalence::{combine, coords_in};
pub use flats::FlatRecord;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::gfq::{normalize, Field, Matrix, Subspace, Vector};

#[derive(Clone)]
pub struct RepMatroid {
    field: &'static Field,
    ambient: usize,
    points: Vec<Vector>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// Outcome of [`RepMatroid::contract_simplify`].
#[derive(Debug, Clone)]
pub struct Contraction {
    pub matroid: RepMatroid,
    /// For each element of the original matroid, its image in `matroid`;
    /// `None` for elements in the closure of the contracted set.
    pub image: Vec<Option<usize>>,
}

impl RepMatroid {
    /// Validates and builds a matroid: every point must have length
    /// `ambient`, be normalized and nonzero, and appear once; labels must be
    /// unique.
    pub fn new(
        field: &'static Field,
        ambient: usize,
        points: Vec<Vector>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::InvalidMatroid(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.len(),
                });
            }
            if p.is_zero() {
                return Err(Error::InvalidMatroid("zero vector (loop)".into()));
            }
            if normalize(field, p)? != *p {
                return Err(Error::InvalidMatroid(format!("point {p} is not normalized")));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidMatroid(format!("duplicate point {p}")));
            }
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidMatroid(format!("duplicate label `{l}`")));
            }
        }
        Ok(RepMatroid {
            field,
            ambient,
            points,
            labels,
            index,
        })
    }

    /// Normalizes the given vectors and labels each point by its digit string.
    /// Zero vectors are rejected and parallel copies are dropped.
    pub fn from_vectors(field: &'static Field, ambient: usize, vs: &[Vector]) -> Result<Self> {
        let mut points: Vec<Vector> = Vec::new();
        for v in vs {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            let p = normalize(field, v)?;
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let labels = points.iter().map(Vector::digits).collect();
        Self::new(field, ambient, points, labels)
    }

    pub fn empty(field: &'static Field, ambient: usize) -> Self {
        Self::new(field, ambient, Vec::new(), Vec::new()).unwrap()
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vector {
        &self.points[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index of the element carrying point `p`, if any.
    pub fn index_of_point(&self, p: &Vector) -> Option<usize> {
        self.points.iter().position(|x| x == p)
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn labels_of(&self, s: &ElemSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn span(&self, s: &ElemSet) -> Subspace {
        Subspace::spanned_by(self.field, self.ambient, s.iter().map(|i| &self.points[i]))
    }

    pub fn rank_of(&self, s: &ElemSet) -> usize {
        self.span(s).rank()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&self.ground())
    }

    pub fn is_independent(&self, s: &ElemSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_spanning(&self) -> bool {
        self.rank() == self.ambient
    }

    /// Elements whose point lies in the span of `s`.
    pub fn closure(&self, s: &ElemSet) -> ElemSet {
        let span = self.span(s);
        self.closure_of_span(&span)
    }

    pub(crate) fn closure_of_span(&self, span: &Subspace) -> ElemSet {
        (0..self.len())
            .filter(|&i| span.contains(&self.points[i]))
            .collect()
    }

    pub fn is_flat(&self, s: &ElemSet) -> bool {
        self.closure(s) == *s
    }

    /// Every projective point spanned by `s`, inside or outside the ground set,
    /// in lexicographic order.
    pub fn pg_closure(&self, s: &ElemSet) -> Vec<Vector> {
        let span = self.span(s);
        projective_points_of(self.field, &span.basis().collect::<Vec<_>>(), self.ambient)
    }

    pub fn restrict(&self, s: &ElemSet) -> RepMatroid {
        let points = s.iter().map(|i| self.points[i].clone()).collect();
        let labels = s.iter().map(|i| self.labels[i].clone()).collect();
        RepMatroid::new(self.field, self.ambient, points, labels)
            .expect("restriction of a valid matroid is valid")
    }

    pub fn delete(&self, s: &ElemSet) -> RepMatroid {
        self.restrict(&self.ground().difference(s))
    }

    /// Changes coordinates so the ambient rank equals the matroid rank.
    /// Spanning matroids are returned unchanged.
    pub fn respan(&self) -> RepMatroid {
        let r = self.rank();
        if r == self.ambient {
            return self.clone();
        }
        let cols: Vec<&Vector> = self.points.iter().collect();
        let reduced = Matrix::from_columns(self.field, self.ambient, &cols)
            .expect("points have ambient length")
            .rref()
            .reduced;
        let points = (0..self.len())
            .map(|j| {
                let v = Vector((0..r).map(|i| reduced.get(i, j)).collect());
                normalize(self.field, &v).expect("nonzero column stays nonzero")
            })
            .collect();
        RepMatroid::new(self.field, r, points, self.labels.clone())
            .expect("injective linear image of a simple matroid is simple")
    }

    /// Contracts an independent set and simplifies.
    ///
    /// Points outside `cl(i)` are projected along `span(i)` onto the
    /// coordinate subspace spanned by the non-pivot positions of the reduced
    /// echelon basis of `span(i)`. Parallel images are merged; each merged
    /// class keeps the label of its lowest-indexed member.
    pub fn contract_simplify(&self, i: &ElemSet) -> Result<Contraction> {
        if !self.is_independent(i) {
            return Err(Error::DependentContractionSet);
        }
        let span = self.span(i);
        let mut points: Vec<Vector> = Vec::new();
        let mut labels = Vec::new();
        let mut slot: HashMap<Vector, usize> = HashMap::new();
        let mut image = vec![None; self.len()];
        for (e, p) in self.points.iter().enumerate() {
            if span.contains(p) {
                continue;
            }
            let v = normalize(self.field, &span.quotient_coords(p))?;
            let k = *slot.entry(v.clone()).or_insert_with(|| {
                points.push(v);
                labels.push(self.labels[e].clone());
                points.len() - 1
            });
            image[e] = Some(k);
        }
        let matroid = RepMatroid::new(self.field, self.ambient - span.rank(), points, labels)?;
        Ok(Contraction { matroid, image })
    }

    /// Matrix whose columns are the points.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<&Vector> = self.points.iter().collect();
        Matrix::from_columns(self.field, self.ambient, &cols).expect("points have ambient length")
    }

    /// Projectively equivalent copy with shuffled labels removed: points in
    /// lexicographic order, labelled by their digit strings.
    pub fn canonical_labels(&self) -> RepMatroid {
        let mut pts = self.points.clone();
        pts.sort();
        RepMatroid::from_vectors(self.field, self.ambient, &pts).unwrap()
    }
}

/// All normalized points in the span of `basis`, sorted.
pub(crate) fn projective_points_of(field: &'static Field, basis: &[Vector], ambient: usize) -> Vec<Vector> {
    let k = basis.len();
    let q = field.order();
    let mut out = Vec::new();
    let total = q.pow(k as u32);
    let mut coeffs = vec![0u8; k];
    for n in 1..total {
        let mut x = n;
        for c in coeffs.iter_mut() {
            *c = (x % q) as u8;
            x /= q;
        }
        // leading nonzero coefficient = 1 keeps one representative per point
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = Vector::zero(ambient);
        for (b, &c) in basis.iter().zip(&coeffs) {
            if c != 0 {
                v = v.plus(field, &b.scaled(field, c));
            }
        }
        out.push(normalize(field, &v).expect("independent basis"));
    }
    out.sort();
    out.dedup();
    out
}

impl PartialEq for RepMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
            && self.ambient == other.ambient
            && self.points == other.points
            && self.labels == other.labels
    }
}

impl Eq for RepMatroid {}

impl fmt::Debug for RepMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMatroid(GF({}), r={}, [", self.q(), self.ambient)?;
        for (i, (l, p)) in self.labels.iter().zip(&self.points).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *l == p.digits() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{l}:{p}")?;
            }
        }
        f.write_str("])")
    }
}

/// Serialized as `{"q", "r", "points": [{"label", "digits"}, …]}`.
impl serde::Serialize for RepMatroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(serde::Serialize)]
        struct Point<'a> {
            label: &'a str,
            digits: String,
        }
        let points: Vec<Point> = self
            .labels
            .iter()
            .zip(&self.points)
            .map(|(l, p)| Point {
                label: l,
                digits: p.digits(),
            })
            .collect();
        let mut st = s.serialize_struct("RepMatroid", 3)?;
        st.serialize_field("q", &self.q())?;
        st.serialize_field("r", &self.ambient)?;
        st.serialize_field("points", &points)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circuit_matroid, dual_k33, graphic, pg};
    use crate::testutil::{labels, set};
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        let p4 = pg(4, 2).unwrap();
        assert_eq!(p4.rank_of(&ElemSet::new()), 0);
        assert_eq!(p4.rank(), 4);
        let k33 = dual_k33();
        assert_eq!(k33.len(), 9);
        assert_eq!(k33.rank(), 4);
    }

    #[test]
    fn unknown_label() {
        let m = pg(3, 2).unwrap();
        assert_eq!(m.set_of(&["nope"]), Err(Error::UnknownLabel("nope".into())));
    }

    #[test]
    fn closure_examples() {
        let k33 = dual_k33();
        assert!(k33.closure(&ElemSet::new()).is_empty());
        let s = set(&k33, &["1000", "0100"]);
        assert_eq!(labels(&k33, &k33.closure(&s)), ["1000", "0100", "1100"].map(String::from).into_iter().collect());
    }

    #[test]
    fn pg_closure_examples() {
        let m = pg(3, 2).unwrap();
        let line = set(&m, &["100", "010"]);
        let pts: Vec<String> = m.pg_closure(&line).iter().map(Vector::digits).collect();
        assert_eq!(pts, vec!["010", "100", "110"]);
        let one = set(&m, &["101"]);
        assert_eq!(m.pg_closure(&one).len(), 1);
        let k33 = dual_k33();
        // a 9-point rank-4 matroid spans all of PG(3,2)
        assert_eq!(k33.pg_closure(&k33.ground()).len(), 15);
        let m3 = pg(3, 3).unwrap();
        let plane = m3.ground();
        assert_eq!(m3.pg_closure(&plane).len(), 13);
    }

    #[test]
    fn restrict_and_delete_identities() {
        let m = pg(3, 2).unwrap();
        assert_eq!(m.restrict(&m.ground()), m);
        assert_eq!(m.delete(&ElemSet::new()), m);
    }

    #[test]
    fn restriction_to_plane_is_fano() {
        let m = pg(4, 2).unwrap();
        let plane = m.closure(&set(&m, &["1000", "0100", "0010"]));
        let r = m.restrict(&plane).respan();
        assert_eq!(r.ambient_rank(), 3);
        assert_eq!(r.len(), 7);
        assert!(r.proj_equivalent(&pg(3, 2).unwrap()).unwrap().is_some());
    }

    #[test]
    fn respan_is_idempotent_and_identity_on_spanning() {
        let m = pg(3, 2).unwrap();
        assert_eq!(m.respan(), m);
        let p4 = pg(4, 2).unwrap();
        let plane = p4.closure(&set(&p4, &["0100", "0010", "1001"]));
        let r = p4.restrict(&plane).respan();
        assert_eq!(r.ambient_rank(), 3);
        assert_eq!(r.respan(), r);
    }

    #[test]
    fn contraction_examples() {
        let fano = pg(3, 2).unwrap();
        assert_eq!(fano.contract_simplify(&ElemSet::new()).unwrap().matroid, fano);
        let c = fano.contract_simplify(&set(&fano, &["001"])).unwrap();
        assert_eq!(c.matroid.len(), 3);
        assert_eq!(c.matroid.rank(), 2);
        let k4 = graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ck = k4.contract_simplify(&ElemSet::singleton(0)).unwrap().matroid;
        assert_eq!((ck.len(), ck.rank()), (3, 2));
        let u23 = circuit_matroid(3, 2).unwrap();
        assert!(ck.respan().proj_equivalent(&u23).unwrap().is_some());
        assert_eq!(
            fano.contract_simplify(&set(&fano, &["100", "010", "110"])).unwrap_err(),
            Error::DependentContractionSet
        );
    }

    #[test]
    fn contraction_of_k4_matches_brute_force_parallel_classes() {
        // Oracle: in M(K4)/e the parallel classes are pairs of edges forming
        // a triangle with e; the remaining edge is the edge opposite e.
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let k4 = graphic(&edges).unwrap();
        for e in 0..6 {
            let c = k4.contract_simplify(&ElemSet::singleton(e)).unwrap();
            let (a, b) = edges[e];
            for f in 0..6 {
                for g in 0..6 {
                    if f == e || g == e || f == g {
                        continue;
                    }
                    let verts = [edges[f].0, edges[f].1, edges[g].0, edges[g].1, a, b];
                    let mut vs: Vec<_> = verts.to_vec();
                    vs.sort();
                    vs.dedup();
                    let triangle = vs.len() == 3;
                    assert_eq!(c.image[f] == c.image[g], triangle, "e={e} f={f} g={g}");
                }
            }
        }
    }

    fn random_subset(n: usize) -> impl Strategy<Value = ElemSet> {
        prop::collection::vec(any::<bool>(), n)
            .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }

    proptest! {
        #[test]
        fn rank_axioms(a in random_subset(15), b in random_subset(15)) {
            let m = pg(4, 2).unwrap();
            let (ra, rb) = (m.rank_of(&a), m.rank_of(&b));
            prop_assert!(ra <= a.len());
            prop_assert!(ra <= 4);
            let u = a.union(&b);
            let i = a.intersection(&b);
            prop_assert!(m.rank_of(&u) + m.rank_of(&i) <= ra + rb);
            if a.is_subset(&b) {
                prop_assert!(ra <= rb);
            }
        }

        #[test]
        fn closure_axioms(a in random_subset(13), b in random_subset(13)) {
            let m = pg(3, 3).unwrap();
            let ca = m.closure(&a);
            prop_assert!(a.is_subset(&ca));
            prop_assert_eq!(m.closure(&ca), ca.clone());
            prop_assert!(m.is_flat(&ca));
            if a.is_subset(&b) {
                prop_assert!(ca.is_subset(&m.closure(&b)));
            }
            let f = m.field();
            prop_assert_eq!(m.pg_closure(&a).len(), f.projective_points(m.rank_of(&a)));
        }
    }
}
