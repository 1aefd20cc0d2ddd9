use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Element code of a small finite field.
///
/// Codes `0..q` read as base-`p` digit strings of polynomial coefficients,
/// lowest degree first: over GF(4) the codes `0, 1, 2, 3` are `0, 1, ω, ω+1`.
pub type Elem = u8;

/// Orders supported by [`Field::new`].
pub const SUPPORTED_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Arithmetic tables for GF(q), q ≤ 9.
///
/// Extension fields use fixed reduction polynomials so that element codes
/// are unambiguous in files:
///
/// * GF(4): x² + x + 1
/// * GF(8): x³ + x + 1
/// * GF(9): x² + 1
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: usize,
    p: usize,
    k: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    primitive: Elem,
}

/// Lower coefficients `m_0..m_{k-1}` of the monic reduction polynomial.
fn reduction_poly(q: usize) -> Option<(usize, usize, &'static [usize])> {
    match q {
        2 => Some((2, 1, &[])),
        3 => Some((3, 1, &[])),
        5 => Some((5, 1, &[])),
        7 => Some((7, 1, &[])),
        4 => Some((2, 2, &[1, 1])),
        8 => Some((2, 3, &[1, 1, 0])),
        9 => Some((3, 2, &[1, 0])),
        _ => None,
    }
}

fn digits(mut code: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k, modulus) = reduction_poly(q).ok_or(Error::UnsupportedOrder(q))?;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as Elem;

                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let t = prod[deg - k + i] + (p - (c * m) % p);
                        prod[deg - k + i] = t % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k], p) as Elem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elem
                }
            })
            .collect();
        let primitive = (1..q)
            .find(|&g| {
                let mut x = 1usize;
                let mut order = 0;
                loop {
                    x = mul[x * q + g] as usize;
                    order += 1;
                    if x == 1 {
                        break;
                    }
                }
                order == q - 1
            })
            .unwrap() as Elem;
        Ok(Field {
            q,
            p,
            k,
            add,
            mul,
            neg,
            inv,
            primitive,
        })
    }

    /// Process-wide shared instance; matroids hold `&'static Field`.
    pub fn shared(q: usize) -> Result<&'static Field> {
        static CACHE: [OnceLock<Field>; 10] = [const { OnceLock::new() }; 10];
        if q >= CACHE.len() {
            return Err(Error::UnsupportedOrder(q));
        }
        if let Some(f) = CACHE[q].get() {
            return Ok(f);
        }
        let f = Field::new(q)?;
        Ok(CACHE[q].get_or_init(|| f))
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.inv[a as usize])
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }

    /// Number of points of PG(r-1, q).
    pub fn projective_points(&self, rank: usize) -> usize {
        if rank == 0 {
            0
        } else {
            (self.q.pow(rank as u32) - 1) / (self.q - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Field) {
        let q = f.order() as Elem;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_every_supported_order() {
        for q in SUPPORTED_ORDERS {
            check_axioms(&Field::new(q).unwrap());
        }
    }

    #[test]
    fn binary_characteristic() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_omega_squared() {
        // ω = 2, ω + 1 = 3
        let f = Field::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
    }

    #[test]
    fn gf8_and_gf9_reduction() {
        let f8 = Field::new(8).unwrap();
        // x * x^2 = x^3 = x + 1
        assert_eq!(f8.mul(2, 4), 3);
        let f9 = Field::new(9).unwrap();
        // x * x = -1 = 2
        assert_eq!(f9.mul(3, 3), 2);
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 16] {
            assert_eq!(Field::new(q), Err(Error::UnsupportedOrder(q)));
        }
        assert!(Field::shared(6).is_err());
        assert!(Field::shared(12).is_err());
    }

    #[test]
    fn primitive_generates() {
        for q in SUPPORTED_ORDERS {
            let f = Field::shared(q).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, f.primitive());
            }
            assert_eq!(seen.len(), q - 1);
        }
    }
}
