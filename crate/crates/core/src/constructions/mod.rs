//! Builders for the named matroids used throughout the crate, plus the
//! generalized parallel connection.

mod gpc;
mod uniform;

pub use gpc::{gpc, GlueMode, GluePairing};
pub use uniform::{uniform, UniformOutcome, DEFAULT_UNIFORM_BUDGET};

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::gfq::{normalize, Elem, Field, Vector};
use crate::matroid::RepMatroid;

/// All normalized nonzero vectors of length `r`, in lexicographic order.
pub(crate) fn pg_points(field: &Field, r: usize) -> Vec<Vector> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut v = vec![0 as Elem; r];
            v[lead] = 1;
            let mut x = code;
            for c in v[lead + 1..].iter_mut().rev() {
                *c = (x % q) as Elem;
                x /= q;
            }
            out.push(Vector(v));
        }
    }
    out.sort();
    out
}

/// The projective geometry PG(r-1, q): every point of GF(q)^r, labelled by
/// its digit string.
pub fn pg(r: usize, q: usize) -> Result<RepMatroid> {
    let f = Field::shared(q)?;
    let pts = pg_points(f, r);
    let labels = pts.iter().map(Vector::digits).collect();
    RepMatroid::new(f, r, pts, labels)
}

/// M(C_n) ≅ U_{n-1,n}: the unit vectors e_1..e_{n-1} and -(e_1 + ... + e_{n-1}).
pub fn circuit_matroid(n: usize, q: usize) -> Result<RepMatroid> {
    let f = Field::shared(q)?;
    if n < 3 {
        return Err(Error::InvalidMatroid(format!(
            "a simple circuit needs at least 3 elements, got {n}"
        )));
    }
    let r = n - 1;
    let mut vs: Vec<Vector> = (0..r).map(|i| Vector::unit(r, i)).collect();
    vs.push(Vector(vec![f.neg(1); r]));
    RepMatroid::from_vectors(f, r, &vs)
}

/// Cycle matroid of a connected simple graph over GF(2); edge `uv` is
/// `χ_u + χ_v`, respanned to rank `|V| - 1`. Edges are labelled `u-v`.
pub fn graphic(edges: &[(usize, usize)]) -> Result<RepMatroid> {
    let f = Field::shared(2)?;
    let nv = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::NonSimpleGraph(format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::NonSimpleGraph(format!("parallel edges {u}-{v}")));
        }
    }
    // connectivity over vertices 0..nv
    let mut comp: Vec<usize> = (0..nv).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a] = b;
    }
    let roots: BTreeSet<usize> = (0..nv).map(|x| find(&mut comp, x)).collect();
    if roots.len() > 1 {
        return Err(Error::NonSimpleGraph("graph is not connected".into()));
    }
    let points = edges
        .iter()
        .map(|&(u, v)| {
            let mut x = Vector::zero(nv);
            x.0[u] = 1;
            x.0[v] = 1;
            x
        })
        .collect();
    let labels = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    Ok(RepMatroid::new(f, nv, points, labels)?.respan())
}

/// Complete graph K_n as an edge list.
pub fn complete_graph(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Wheel with hub 0 and rim 1..=n.
pub fn wheel(n: usize) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    e.extend((1..=n).map(|i| (i, i % n + 1)));
    e
}

/// K_{3,3} with parts {0,1,2} and {3,4,5}.
pub fn k33() -> Vec<(usize, usize)> {
    (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect()
}

/// M*(K_{3,3}) on
/// `{e1, e2, e3, e4, e1+e2, e2+e3, e3+e4, e1+e4, e1+e2+e3+e4}`.
pub fn dual_k33() -> RepMatroid {
    let f = Field::shared(2).unwrap();
    let pts = [
        "1000", "0100", "0010", "0001", "1100", "0110", "0011", "1001", "1111",
    ];
    let vs: Vec<Vector> = pts.iter().map(|s| Vector::from_digits(s, 2).unwrap()).collect();
    RepMatroid::from_vectors(f, 4, &vs).unwrap()
}

/// Dual via standard form: with the points row-reduced to `[I | A]` (up to
/// column order), the dual is represented by `[-Aᵀ | I]`. Labels are kept.
pub fn dual(m: &RepMatroid) -> Result<RepMatroid> {
    let m = m.respan();
    let f = m.field();
    let n = m.len();
    let rref = m.matrix().rref();
    let r = rref.rank;
    let nonpivots: Vec<usize> = (0..n).filter(|j| !rref.pivot_cols.contains(j)).collect();
    let d = n - r;
    let mut vs = Vec::with_capacity(n);
    for j in 0..n {
        let v = if let Some(i) = rref.pivot_cols.iter().position(|&p| p == j) {
            Vector(nonpivots.iter().map(|&c| f.neg(rref.reduced.get(i, c))).collect())
        } else {
            let c = nonpivots.iter().position(|&c| c == j).unwrap();
            Vector::unit(d, c)
        };
        vs.push(v);
    }
    let mut pts = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    for (j, v) in vs.iter().enumerate() {
        let p = normalize(f, v)
            .map_err(|_| Error::DualNotSimple(format!("`{}` is a coloop", m.label(j))))?;
        if !seen.insert(p.clone()) {
            return Err(Error::DualNotSimple(format!("`{}` is in a series pair", m.label(j))));
        }
        pts.push(p);
    }
    RepMatroid::new(f, d, pts, m.labels().to_vec())
}

/// AG(r-1, q): the points of PG(r-1, q) off the hyperplane `x_1 = 0`.
pub fn affine_geometry(r: usize, q: usize) -> Result<RepMatroid> {
    if r == 0 {
        return Err(Error::InvalidMatroid("affine geometry needs rank at least 1".into()));
    }
    let f = Field::shared(q)?;
    let pts: Vec<Vector> = pg_points(f, r).into_iter().filter(|p| p.0[0] != 0).collect();
    RepMatroid::from_vectors(f, r, &pts)
}

/// S_8, the rank-4 binary matroid represented by `[I_4 | A]` with
///
/// ```text
/// A = 0 1 1 1
///     1 0 1 1
///     1 1 0 1
///     1 1 1 1
/// ```
///
/// Its complement in PG(3,2) is M(K_4) ⊕ U_{1,1}.
pub fn s8() -> RepMatroid {
    let f = Field::shared(2).unwrap();
    let pts = ["1000", "0100", "0010", "0001", "0111", "1011", "1101", "1111"];
    let vs: Vec<Vector> = pts.iter().map(|s| Vector::from_digits(s, 2).unwrap()).collect();
    RepMatroid::from_vectors(f, 4, &vs).unwrap()
}

/// Restriction of PG(r(M)-1, q) to the points not in `m` (after respanning).
pub fn complement_in_pg(m: &RepMatroid) -> RepMatroid {
    let m = m.respan();
    let present: HashSet<&Vector> = m.points().iter().collect();
    let pts: Vec<Vector> = pg_points(m.field(), m.ambient_rank())
        .into_iter()
        .filter(|p| !present.contains(p))
        .collect();
    RepMatroid::from_vectors(m.field(), m.ambient_rank(), &pts).unwrap()
}

/// `M + X`: adds the projective points `xs` to `m` in its ambient space.
pub fn add_points(m: &RepMatroid, xs: &[Vector]) -> Result<RepMatroid> {
    let f = m.field();
    let mut points = m.points().to_vec();
    let mut labels = m.labels().to_vec();
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    for x in xs {
        if x.len() != m.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: m.ambient_rank(),
                found: x.len(),
            });
        }
        let p = normalize(f, x)?;
        if points.contains(&p) {
            return Err(Error::PointCollision(p.digits()));
        }
        let mut l = p.digits();
        while !taken.insert(l.clone()) {
            l.push('\'');
        }
        points.push(p);
        labels.push(l);
    }
    RepMatroid::new(f, m.ambient_rank(), points, labels)
}
