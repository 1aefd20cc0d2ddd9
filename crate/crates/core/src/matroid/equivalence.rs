use std::collections::HashSet;

use super::RepMatroid;
use crate::error::{Error, Result};
use crate::gfq::{normalize, Elem, Field, Matrix, Subspace, Vector};

/// An invertible linear map of the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    matrix: Matrix,
}

impl LinMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rank() != matrix.rows() {
            return Err(Error::InvalidMatroid("linear map is not invertible".into()));
        }
        Ok(LinMap { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Image of a projective point, normalized.
    pub fn apply(&self, p: &Vector) -> Vector {
        normalize(self.matrix.field(), &self.matrix.mul_vec(p)).expect("invertible map")
    }
}

/// Coefficients of `p` in terms of `basis`, if `p` lies in its span.
pub(crate) fn coords_in(f: &'static Field, basis: &[Vector], p: &Vector) -> Option<Vec<Elem>> {
    let n = p.len();
    let k = basis.len();
    let mut aug = Matrix::zeros(f, n, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            aug.set(i, j, b.0[i]);
        }
    }
    for i in 0..n {
        aug.set(i, k, p.0[i]);
    }
    let r = aug.rref();
    if r.pivot_cols.contains(&k) {
        return None;
    }
    let mut c = vec![0; k];
    for (row, &col) in r.pivot_cols.iter().enumerate() {
        c[col] = r.reduced.get(row, k);
    }
    Some(c)
}

pub(crate) fn combine(f: &Field, vs: &[Vector], coeffs: &[Elem], len: usize) -> Vector {
    let mut out = Vector::zero(len);
    for (v, &c) in vs.iter().zip(coeffs) {
        if c != 0 {
            out = out.plus(f, &v.scaled(f, c));
        }
    }
    out
}

impl RepMatroid {
    /// Searches for an invertible linear map carrying the points of `self`
    /// onto those of `other` up to scalars. Both sides are respanned first;
    /// the map acts on the respanned coordinates.
    ///
    /// Backtracks over images of a greedy basis of `self`: once the images
    /// of the first `k` basis points are fixed, every point in their span
    /// has a determined image that must land on a point of `other`.
    pub fn proj_equivalent(&self, other: &RepMatroid) -> Result<Option<LinMap>> {
        if self.q() != other.q() {
            return Err(Error::FieldMismatch(self.q(), other.q()));
        }
        let a = self.respan();
        let b = other.respan();
        if a.ambient != b.ambient || a.len() != b.len() {
            return Ok(None);
        }
        let r = a.ambient;
        let f = a.field;
        if r == 0 {
            return Ok(Some(LinMap { matrix: Matrix::identity(f, 0) }));
        }
        let basis_idx: Vec<usize> = a.basis_of(&a.ground()).iter().collect();
        let basis: Vec<Vector> = basis_idx.iter().map(|&i| a.points[i].clone()).collect();
        // level[k]: points whose last nonzero basis coefficient is at k
        let mut level: Vec<Vec<Vec<Elem>>> = vec![Vec::new(); r];
        for p in &a.points {
            let c = coords_in(f, &basis, p).expect("basis spans");
            let top = c.iter().rposition(|&x| x != 0).unwrap();
            level[top].push(c);
        }
        let targets: HashSet<&Vector> = b.points.iter().collect();

        struct Search<'a> {
            f: &'static Field,
            r: usize,
            level: &'a [Vec<Vec<Elem>>],
            targets: &'a HashSet<&'a Vector>,
            candidates: &'a [Vector],
        }
        impl Search<'_> {
            fn go(&self, images: &mut Vec<Vector>, span: &Subspace) -> bool {
                let k = images.len();
                if k == self.r {
                    return true;
                }
                let scalars: Vec<Elem> = if k == 0 { vec![1] } else { self.f.nonzero().collect() };
                for y in self.candidates {
                    let mut next = span.clone();
                    if !next.insert(y) {
                        continue;
                    }
                    for &lambda in &scalars {
                        images.push(y.scaled(self.f, lambda));
                        let ok = self.level[k].iter().all(|c| {
                            let v = combine(self.f, images, c, y.len());
                            !v.is_zero() && self.targets.contains(&normalize(self.f, &v).unwrap())
                        });
                        if ok && self.go(images, &next) {
                            return true;
                        }
                        images.pop();
                    }
                }
                false
            }
        }
        let search = Search {
            f,
            r,
            level: &level,
            targets: &targets,
            candidates: &b.points,
        };
        let mut images = Vec::with_capacity(r);
        if !search.go(&mut images, &Subspace::new(f, r)) {
            return Ok(None);
        }
        let bmat = Matrix::from_columns(f, r, &basis.iter().collect::<Vec<_>>())?;
        let wmat = Matrix::from_columns(f, r, &images.iter().collect::<Vec<_>>())?;
        let g = wmat.mul(&bmat.inverse().expect("basis is invertible"))?;
        Ok(Some(LinMap::new(g)?))
    }

    /// The lexicographically least sorted image of the point set over all
    /// invertible linear maps (computed on the respanned matroid).
    ///
    /// In a least image `L`, the smallest member of `L` in each coordinate
    /// level `span(e_k, ..., e_r)` minus `span(e_{k+1}, ..., e_r)` is `e_k`
    /// itself, so every candidate map sends some point of the matroid to each
    /// unit vector. The search assigns preimages of `e_r, e_{r-1}, ...` in
    /// turn and prunes on the partial sorted prefix.
    pub fn canonical_form(&self) -> Vec<Vector> {
        let a = self.respan();
        let r = a.ambient;
        if r == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<Vector>> = None;
        let mut chosen: Vec<Vector> = Vec::with_capacity(r);
        canon_search(&a, &mut chosen, &mut best);
        best.expect("a spanning matroid has a basis")
    }

    /// Copy with canonical coordinates and digit-string labels.
    pub fn canonical(&self) -> RepMatroid {
        let pts = self.canonical_form();
        let r = self.rank();
        RepMatroid::from_vectors(self.field, r, &pts).expect("canonical points are valid")
    }
}

/// Images of all points lying in `span(chosen)`, where `chosen[j]` is the
/// preimage of `e_{r-1-j}`; sorted.
fn partial_images(m: &RepMatroid, chosen: &[Vector]) -> Vec<Vector> {
    let r = m.ambient;
    let f = m.field;
    let k = chosen.len();
    let mut out = Vec::new();
    for p in &m.points {
        if let Some(c) = coords_in(f, chosen, p) {
            let mut v = Vector::zero(r);
            for (j, x) in c.into_iter().enumerate() {
                v.0[r - 1 - j] = x;
            }
            debug_assert!(v.0[..r - k].iter().all(|&x| x == 0));
            out.push(normalize(f, &v).unwrap());
        }
    }
    out.sort();
    out
}

enum Cmp {
    Better,
    Tie,
    Worse,
}

/// Compares a partial prefix against the best complete list restricted to
/// the same level subspace.
fn compare_prefix(prefix: &[Vector], best: &[Vector], level: usize) -> Cmp {
    let best_prefix: Vec<&Vector> = best
        .iter()
        .take_while(|v| v.0[..v.len() - level].iter().all(|&x| x == 0))
        .collect();
    for (p, b) in prefix.iter().zip(&best_prefix) {
        match p.cmp(b) {
            std::cmp::Ordering::Less => return Cmp::Better,
            std::cmp::Ordering::Greater => return Cmp::Worse,
            std::cmp::Ordering::Equal => {}
        }
    }
    match prefix.len().cmp(&best_prefix.len()) {
        std::cmp::Ordering::Less => Cmp::Worse,
        std::cmp::Ordering::Greater => Cmp::Better,
        std::cmp::Ordering::Equal => Cmp::Tie,
    }
}

fn canon_search(m: &RepMatroid, chosen: &mut Vec<Vector>, best: &mut Option<Vec<Vector>>) {
    let r = m.ambient;
    let f = m.field;
    let k = chosen.len();
    if k > 0 {
        let prefix = partial_images(m, chosen);
        if let Some(b) = best.as_ref() {
            match compare_prefix(&prefix, b, k) {
                Cmp::Worse => return,
                Cmp::Better if k == r => {
                    *best = Some(prefix);
                    return;
                }
                _ if k == r => return,
                _ => {}
            }
        } else if k == r {
            *best = Some(prefix);
            return;
        }
    }
    let span = crate::gfq::Subspace::spanned_by(f, r, chosen.iter());
    let scalars: Vec<Elem> = if k == 0 { vec![1] } else { f.nonzero().collect() };
    for p in &m.points {
        if span.contains(p) {
            continue;
        }
        for &lambda in &scalars {
            chosen.push(p.scaled(f, lambda));
            canon_search(m, chosen, best);
            chosen.pop();
        }
    }
}
