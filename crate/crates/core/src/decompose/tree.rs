//! Decomposition into generalized parallel connections.

use serde::{Deserialize, Serialize};

use super::{is_round, modular_side, vertical_separations, Side, VerticalSep};
use crate::constructions::{gpc, GlueMode, GluePairing};
use crate::detect::{forbidden_family, has_induced_minor, is_chordal, Route};
use crate::error::{Error, Result};
use crate::matroid::RepMatroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompMode {
    /// Theorem 2.7: split across guts that is modular on one side; leaves
    /// are round.
    ChordalModular,
    /// §4: split across guts that is a projective geometry; leaves are
    /// projective geometries.
    GfqProjective,
}

impl DecompMode {
    fn glue_mode(self) -> GlueMode {
        match self {
            DecompMode::ChordalModular => GlueMode::ModularGuts,
            DecompMode::GfqProjective => GlueMode::ProjectiveGuts,
        }
    }
}

impl std::str::FromStr for DecompMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chordal-modular" => Ok(DecompMode::ChordalModular),
            "gfq-projective" => Ok(DecompMode::GfqProjective),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafCertificate {
    Round,
    ProjectiveGeometry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum DecompTree {
    Leaf {
        matroid: RepMatroid,
        certificate: LeafCertificate,
    },
    Split {
        glue: Vec<String>,
        k: usize,
        mode: DecompMode,
        left: Box<DecompTree>,
        right: Box<DecompTree>,
    },
}

impl DecompTree {
    pub fn leaves(&self) -> Vec<&RepMatroid> {
        match self {
            DecompTree::Leaf { matroid, .. } => vec![matroid],
            DecompTree::Split { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    pub fn splits(&self) -> usize {
        match self {
            DecompTree::Leaf { .. } => 0,
            DecompTree::Split { left, right, .. } => 1 + left.splits() + right.splits(),
        }
    }

    /// Folds [`gpc`] bottom-up, pairing each glue label with itself.
    pub fn recompose(&self) -> Result<RepMatroid> {
        match self {
            DecompTree::Leaf { matroid, .. } => Ok(matroid.clone()),
            DecompTree::Split { glue, mode, left, right, .. } => {
                let l = left.recompose()?;
                let r = right.recompose()?;
                gpc(&l, &r, &GluePairing::identity(glue), mode.glue_mode())
            }
        }
    }
}

/// Decomposition tree of `m`, after checking the mode's precondition:
/// chordal-modular needs `m` chordal, gfq-projective needs `m` free of the
/// forbidden induced minors. A failure to split a valid input is reported
/// as [`Error::NoValidSplit`]; a tree that does not recompose to `m` as
/// [`Error::GutsLeak`].
pub fn decompose_tree(m: &RepMatroid, mode: DecompMode) -> Result<DecompTree> {
    let ok = match mode {
        DecompMode::ChordalModular => is_chordal(m).chordal,
        DecompMode::GfqProjective => has_induced_minor(m, &forbidden_family(m.q(), Route::Minor)?).is_none(),
    };
    if !ok {
        return Err(Error::PreconditionFailed(match mode {
            DecompMode::ChordalModular => "matroid is not chordal".into(),
            DecompMode::GfqProjective => "matroid has a forbidden induced minor".into(),
        }));
    }
    try_decompose(m, mode)?.ok_or_else(|| Error::NoValidSplit(format!("{m:?}")))
}

/// Decomposition without the precondition check; `None` when some piece
/// is neither a valid leaf nor splittable.
///
/// A split is an exact vertical `k`-separation with `r(G) = k - 1` whose
/// guts satisfies the mode (modular in `M|cl(X)` or `M|cl(Y)`; or
/// `M|G` a projective geometry, the empty geometry included). The children
/// are `M|cl(X)` and `M|cl(Y)`. Among valid splits the one with least
/// `r(G)`, then lexicographically least `(G, X)`, is taken. Because both
/// classes are closed under restriction to flats, the greedy choice never
/// needs to be undone.
pub fn try_decompose(m: &RepMatroid, mode: DecompMode) -> Result<Option<DecompTree>> {
    let Some(tree) = build(m, mode) else {
        return Ok(None);
    };
    let back = tree.recompose()?;
    if back.proj_equivalent(m)?.is_none() {
        return Err(Error::GutsLeak("decomposition does not recompose to its input".into()));
    }
    Ok(Some(tree))
}

fn build(m: &RepMatroid, mode: DecompMode) -> Option<DecompTree> {
    let leaf = match mode {
        DecompMode::ChordalModular if is_round(m) => Some(LeafCertificate::Round),
        DecompMode::GfqProjective if m.len() == m.field().projective_points(m.rank()) => {
            Some(LeafCertificate::ProjectiveGeometry)
        }
        _ => None,
    };
    if let Some(certificate) = leaf {
        return Some(DecompTree::Leaf {
            matroid: m.clone(),
            certificate,
        });
    }
    let sep = best_split(m, mode)?;
    let cx = m.closure(&sep.x);
    let left = build(&m.restrict(&cx), mode)?;
    let right = build(&m.restrict(&sep.y), mode)?;
    Some(DecompTree::Split {
        glue: m.labels_of(&sep.guts),
        k: sep.k,
        mode,
        left: Box::new(left),
        right: Box::new(right),
    })
}

fn best_split(m: &RepMatroid, mode: DecompMode) -> Option<VerticalSep> {
    let mut seps: Vec<(usize, VerticalSep)> = vertical_separations(m, None)
        .into_iter()
        .filter_map(|s| {
            let rg = m.rank_of(&s.guts);
            (rg + 1 == s.k).then_some((rg, s))
        })
        .collect();
    seps.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.guts.cmp(&b.1.guts)).then_with(|| a.1.x.cmp(&b.1.x)));
    seps.into_iter().map(|(_, s)| s).find(|s| match mode {
        DecompMode::GfqProjective => s.guts.len() == m.field().projective_points(m.rank_of(&s.guts)),
        DecompMode::ChordalModular => modular_side(m, s).map_or(false, |side| side != Side::Neither),
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{fano_fano_line, two_triangles};
    use super::*;
    use crate::constructions::{circuit_matroid, complete_graph, graphic, pg};

    #[test]
    fn projective_geometry_is_a_leaf() {
        let t = decompose_tree(&pg(3, 2).unwrap(), DecompMode::GfqProjective).unwrap();
        assert!(matches!(t, DecompTree::Leaf { certificate: LeafCertificate::ProjectiveGeometry, .. }));
    }

    #[test]
    fn fano_fano_line_splits_once() {
        let m = fano_fano_line();
        let t = decompose_tree(&m, DecompMode::GfqProjective).unwrap();
        let DecompTree::Split { glue, k, .. } = &t else { panic!("expected a split") };
        assert_eq!((glue.len(), *k), (3, 3));
        let leaves = t.leaves();
        assert_eq!(leaves.len(), 2);
        let fano = pg(3, 2).unwrap();
        assert!(leaves.iter().all(|l| l.proj_equivalent(&fano).unwrap().is_some()));
        let c = decompose_tree(&m, DecompMode::ChordalModular).unwrap();
        assert_eq!(c.splits(), 1);
    }

    #[test]
    fn k4_is_a_round_leaf() {
        let k4 = graphic(&complete_graph(4)).unwrap();
        let t = decompose_tree(&k4, DecompMode::ChordalModular).unwrap();
        assert!(matches!(t, DecompTree::Leaf { certificate: LeafCertificate::Round, .. }));
        assert!(matches!(
            decompose_tree(&k4, DecompMode::GfqProjective),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn triangles_split_at_their_common_point() {
        let m = two_triangles();
        for mode in [DecompMode::ChordalModular, DecompMode::GfqProjective] {
            let t = decompose_tree(&m, mode).unwrap();
            assert_eq!(t.splits(), 1);
            assert!(t.recompose().unwrap().proj_equivalent(&m).unwrap().is_some());
        }
    }

    #[test]
    fn non_chordal_inputs() {
        let c4 = circuit_matroid(4, 2).unwrap();
        assert!(matches!(
            decompose_tree(&c4, DecompMode::ChordalModular),
            Err(Error::PreconditionFailed(_))
        ));
        assert_eq!(try_decompose(&c4, DecompMode::GfqProjective).unwrap(), None);
    }

    #[test]
    fn tree_serializes() {
        let t = decompose_tree(&fano_fano_line(), DecompMode::GfqProjective).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["node"], "split");
        assert_eq!(v["mode"], "gfq-projective");
        assert_eq!(v["left"]["certificate"], "projective_geometry");
    }
}
