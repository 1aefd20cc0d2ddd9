//! Forbidden families of Theorems 1.1 and 3.5.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Classification;
use crate::error::{Error, Result};
use crate::gfq::Field;

/// One member (or parametric range) of a forbidden family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "member", rename_all = "snake_case")]
pub enum FamilyMember {
    /// M(C_n) ≅ U_{n-1,n}; id `c<n>`.
    Circuit { n: usize },
    /// M(C_n) for every `n >= min`; id `c<min>+`.
    CircuitsFrom { min: usize },
    /// U_{r,n}; id `u<r>-<n>`.
    Uniform { r: usize, n: usize },
    /// M(K_4); id `k4`.
    GraphicK4,
    /// M*(K_{3,3}); id `k33-dual`.
    DualK33,
}

impl FamilyMember {
    pub fn matches(&self, c: &Classification, q: usize) -> bool {
        match *self {
            FamilyMember::Circuit { n } => c.uniform_params(q) == Some((n - 1, n)),
            FamilyMember::CircuitsFrom { min } => {
                matches!(c.uniform_params(q), Some((r, n)) if n == r + 1 && n >= min)
            }
            FamilyMember::Uniform { r, n } => c.uniform_params(q) == Some((r, n)),
            FamilyMember::GraphicK4 => *c == Classification::GraphicK4,
            FamilyMember::DualK33 => *c == Classification::DualK33,
        }
    }

    /// Rank of every member, or `None` when unbounded.
    pub fn max_rank(&self) -> Option<usize> {
        match *self {
            FamilyMember::Circuit { n } => Some(n - 1),
            FamilyMember::CircuitsFrom { .. } => None,
            FamilyMember::Uniform { r, .. } => Some(r),
            FamilyMember::GraphicK4 => Some(3),
            FamilyMember::DualK33 => Some(4),
        }
    }

    /// Smallest rank of a member.
    pub fn min_rank(&self) -> usize {
        match *self {
            FamilyMember::CircuitsFrom { min } => min - 1,
            other => other.max_rank().unwrap(),
        }
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMember::Circuit { n } => write!(f, "c{n}"),
            FamilyMember::CircuitsFrom { min } => write!(f, "c{min}+"),
            FamilyMember::Uniform { r, n } => write!(f, "u{r}-{n}"),
            FamilyMember::GraphicK4 => write!(f, "k4"),
            FamilyMember::DualK33 => write!(f, "k33-dual"),
        }
    }
}

impl FromStr for FamilyMember {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownFamily(s.to_string());
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match s {
            "k4" => return Ok(FamilyMember::GraphicK4),
            "k33-dual" | "k33*" => return Ok(FamilyMember::DualK33),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('c') {
            let m = if let Some(min) = rest.strip_suffix('+') {
                FamilyMember::CircuitsFrom { min: num(min)? }
            } else {
                FamilyMember::Circuit { n: num(rest)? }
            };
            let n = match m {
                FamilyMember::Circuit { n } | FamilyMember::CircuitsFrom { min: n } => n,
                _ => unreachable!(),
            };
            return if n >= 2 { Ok(m) } else { Err(bad()) };
        }
        if let Some(rest) = s.strip_prefix('u') {
            let (r, n) = rest.split_once('-').ok_or_else(bad)?;
            let (r, n) = (num(r)?, num(n)?);
            return if r <= n { Ok(FamilyMember::Uniform { r, n }) } else { Err(bad()) };
        }
        Err(bad())
    }
}

/// A finite or parametric list of forbidden matroids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub members: Vec<FamilyMember>,
}

impl Family {
    pub fn new(members: Vec<FamilyMember>) -> Self {
        Family { members }
    }

    pub fn matches(&self, c: &Classification, q: usize) -> bool {
        self.members.iter().any(|m| m.matches(c, q))
    }

    /// Largest rank of any member; `None` if some member is unbounded.
    pub fn max_rank(&self) -> Option<usize> {
        self.members.iter().try_fold(0, |acc, m| m.max_rank().map(|r| acc.max(r)))
    }

    pub fn min_rank(&self) -> usize {
        self.members.iter().map(FamilyMember::min_rank).min().unwrap_or(0)
    }

    /// Parses a comma-separated list of member ids, or one of the named
    /// families `minor` / `restriction` (which need `q`).
    pub fn parse(s: &str, q: usize) -> Result<Self> {
        match s {
            "minor" => forbidden_family(q, Route::Minor),
            "restriction" => forbidden_family(q, Route::Restriction),
            _ => s
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<Vec<_>>>()
                .map(Family::new),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Minor,
    Restriction,
}

/// The forbidden family for GF(q)-chordality along one route.
///
/// * `q = 2` (Theorem 1.1): minors `{M(C4), M(K4)}`; restrictions
///   `{M(C_n) : n ≥ 4} ∪ {M(K4), M*(K33)}`.
/// * `q > 2` (Theorem 3.5): minors `{U_{2,k} : 3 ≤ k ≤ q}`, plus `U_{3,q+2}`
///   when `q` is even (it is GF(q)-representable only then); restrictions
///   `{U_{n,n+1} : n ≥ 2} ∪ {U_{2+t,k+t} : 4 ≤ k ≤ q, 0 ≤ t ≤ q-3}`, plus
///   `U_{3,q+2}` when `q` is even.
pub fn forbidden_family(q: usize, route: Route) -> Result<Family> {
    Field::shared(q)?;
    let mut members = Vec::new();
    if q == 2 {
        match route {
            Route::Minor => members.extend([FamilyMember::Circuit { n: 4 }, FamilyMember::GraphicK4]),
            Route::Restriction => members.extend([
                FamilyMember::CircuitsFrom { min: 4 },
                FamilyMember::GraphicK4,
                FamilyMember::DualK33,
            ]),
        }
        return Ok(Family::new(members));
    }
    match route {
        Route::Minor => members.extend((3..=q).map(|k| FamilyMember::Uniform { r: 2, n: k })),
        Route::Restriction => {
            members.push(FamilyMember::CircuitsFrom { min: 3 });
            for t in 0..=q - 3 {
                for k in 4..=q {
                    members.push(FamilyMember::Uniform { r: 2 + t, n: k + t });
                }
            }
        }
    }
    if q % 2 == 0 {
        members.push(FamilyMember::Uniform { r: 3, n: q + 2 });
    }
    Ok(Family::new(members))
}
