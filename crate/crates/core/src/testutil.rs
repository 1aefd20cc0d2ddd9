use std::collections::BTreeSet;

use crate::bitset::ElemSet;
use crate::matroid::RepMatroid;

pub fn set(m: &RepMatroid, labels: &[&str]) -> ElemSet {
    m.set_of(labels).unwrap()
}

pub fn labels(m: &RepMatroid, s: &ElemSet) -> BTreeSet<String> {
    m.labels_of(s).into_iter().collect()
}
