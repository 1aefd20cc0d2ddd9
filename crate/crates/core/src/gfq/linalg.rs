use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// A coordinate vector over GF(q), most significant coordinate first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector(pub Vec<Elem>);

impl Vector {
    pub fn zero(len: usize) -> Self {
        Vector(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Vector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    /// Parses a digit string such as `0112`; every digit must be below `q`.
    pub fn from_digits(s: &str, q: usize) -> Option<Self> {
        s.chars()
            .map(|c| c.to_digit(10).filter(|&d| (d as usize) < q).map(|d| d as Elem))
            .collect::<Option<Vec<_>>>()
            .map(Vector)
    }

    pub fn digits(&self) -> String {
        self.0.iter().map(|&c| char::from(b'0' + c)).collect()
    }

    pub fn scaled(&self, f: &Field, c: Elem) -> Vector {
        Vector(self.0.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn plus(&self, f: &Field, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f.add(a, b)).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize(f: &Field, v: &Vector) -> Result<Vector> {
    let lead = v.0.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroVector)?;
    Ok(v.scaled(f, f.inv(lead).unwrap()))
}

/// Dense matrix over GF(q), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub reduced: Matrix,
}

impl Matrix {
    pub fn zeros(field: &'static Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &'static Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &'static Field, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &'static Field, height: usize, cols: &[&Vector]) -> Result<Self> {
        let mut m = Self::zeros(field, height, cols.len());
        for (j, v) in cols.iter().enumerate() {
            if v.len() != height {
                return Err(Error::DimensionMismatch {
                    expected: height,
                    found: v.len(),
                });
            }
            for i in 0..height {
                m.set(i, j, v.0[i]);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        let f = self.field;
        Vector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                })
                .collect(),
        )
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            rank: r,
            pivot_cols,
            reduced: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let x = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, x);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        if r.pivot_cols.len() < n || r.pivot_cols[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// A subspace kept as a reduced echelon basis; supports incremental growth
/// and membership by reduction.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: &'static Field,
    dim: usize,
    /// Basis rows; `rows[i]` has a 1 at `pivots[i]` and zeros at every other pivot.
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &'static Field, ambient: usize) -> Self {
        Subspace {
            field,
            dim: ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: &'static Field,
        ambient: usize,
        vs: impl IntoIterator<Item = &'a Vector>,
    ) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> impl Iterator<Item = Vector> + '_ {
        self.rows.iter().map(|r| Vector(r.clone()))
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(&v.0).iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let f = self.field;
        let mut w = self.reduce(&v.0);
        let Some(p) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of the residue of `v` on the non-pivot positions: a linear
    /// projection along this subspace onto the complementary coordinate subspace.
    pub fn quotient_coords(&self, v: &Vector) -> Vector {
        let w = self.reduce(&v.0);
        Vector(
            w.into_iter()
                .enumerate()
                .filter(|(i, _)| self.pivots.binary_search(i).is_err())
                .map(|(_, c)| c)
                .collect(),
        )
    }
}

/// Whether `v` is a linear combination of `span`.
pub fn in_span(field: &'static Field, v: &Vector, span: &[Vector]) -> Result<bool> {
    for s in span {
        if s.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                found: s.len(),
            });
        }
    }
    Ok(Subspace::spanned_by(field, v.len(), span).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: usize) -> &'static Field {
        Field::shared(q).unwrap()
    }

    fn v(s: &str, q: usize) -> Vector {
        Vector::from_digits(s, q).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        assert_eq!(Matrix::identity(f, 3).rref().rank, 3);
        assert_eq!(Matrix::zeros(f, 2, 4).rref().rank, 0);
        let cols = [v("110", 2), v("011", 2), v("101", 2)];
        let m = Matrix::from_columns(f, 3, &cols.iter().collect::<Vec<_>>()).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(Matrix::zeros(f, 0, 0).rref().rank, 0);
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(3);
        let m = Matrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        let singular = Matrix::from_rows(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn in_span_examples() {
        assert!(in_span(gf(2), &v("000", 2), &[]).unwrap());
        assert!(in_span(gf(2), &v("101", 2), &[v("110", 2), v("011", 2)]).unwrap());
        assert!(!in_span(gf(3), &v("100", 3), &[v("010", 3), v("001", 3)]).unwrap());
        assert!(matches!(
            in_span(gf(2), &v("10", 2), &[v("110", 2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(gf(2), &v("0110", 2)).unwrap(), v("0110", 2));
        assert_eq!(normalize(gf(3), &v("022", 3)).unwrap(), v("011", 3));
        assert_eq!(normalize(gf(3), &v("000", 3)), Err(Error::ZeroVector));
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let f = gf(3);
        let s = Subspace::spanned_by(f, 3, &[v("120", 3)]);
        assert!(s.quotient_coords(&v("120", 3)).is_zero());
        assert!(s.quotient_coords(&v("210", 3)).is_zero());
        assert_eq!(s.quotient_coords(&v("001", 3)).len(), 2);
    }

    fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
        (prop::sample::select(vec![2usize, 3, 4, 5, 7, 8, 9]), 1usize..5, 1usize..6).prop_flat_map(
            |(q, r, c)| {
                (
                    Just(q),
                    prop::collection::vec(prop::collection::vec(0..q as u8, c), r),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((q, rows) in matrix_strategy()) {
            let m = Matrix::from_rows(gf(q), &rows).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn normalize_is_idempotent_and_scalar_invariant(
            q in prop::sample::select(vec![2usize, 3, 4, 5, 7, 8, 9]),
            raw in prop::collection::vec(0u8..9, 1..6),
        ) {
            let f = gf(q);
            let w = Vector(raw.iter().map(|&x| x % q as u8).collect());
            prop_assume!(!w.is_zero());
            let n = normalize(f, &w).unwrap();
            prop_assert_eq!(normalize(f, &n).unwrap(), n.clone());
            for c in f.nonzero() {
                prop_assert_eq!(normalize(f, &w.scaled(f, c)).unwrap(), n.clone());
            }
        }

        #[test]
        fn subspace_rank_matches_rref((q, rows) in matrix_strategy()) {
            let f = gf(q);
            let vs: Vec<Vector> = rows.iter().cloned().map(Vector).collect();
            let s = Subspace::spanned_by(f, vs[0].len(), &vs);
            prop_assert_eq!(s.rank(), Matrix::from_rows(f, &rows).unwrap().rank());
            for w in &vs {
                prop_assert!(s.contains(w));
            }
        }
    }
}
