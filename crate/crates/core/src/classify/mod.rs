//! Classification of value semigroups of small genus.

mod catalog;
mod search;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numsgp::NumericalSemigroup;
use crate::valsgp::ValueTruncation;

pub use catalog::{Catalog, CatalogEntry};

pub const MAX_GENUS: u32 = 4;
pub const MAX_BRANCHES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("genus {requested} exceeds the supported maximum {cap}")]
    CapExceeded { requested: u32, cap: u32 },
    #[error("branch count must be between 1 and {MAX_BRANCHES}, got {0}")]
    BranchesOutOfRange(usize),
    #[error("catalog: {0}")]
    Catalog(String),
}

/// Nondecreasing tuples in `[1, bound]^r`.
fn sorted_conductors(r: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, lo: u32, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in lo..=bound {
            cur.push(x);
            rec(r, x, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, 1, bound, &mut Vec::new(), &mut out);
    out
}

/// Every valid truncation of genus `g` with `r` branches whose conductor
/// coordinates are at most `coord_bound` (and, if given, whose `|c|` is at
/// most `modulus_bound`), in canonical form, sorted.
pub fn enumerate_with_bound(g: u32, r: usize, coord_bound: u32, modulus_bound: Option<u32>) -> Vec<ValueTruncation> {
    let found: BTreeSet<ValueTruncation> = sorted_conductors(r, coord_bound)
        .into_par_iter()
        // A genus-g truncation has |c| ≥ g.
        .filter(|c| {
            let m = c.iter().sum::<u32>();
            m >= g && modulus_bound.is_none_or(|b| m <= b)
        })
        .flat_map_iter(|c| search::search_conductor(&c, g))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    found.into_iter().collect()
}

/// Every valid truncation of genus `g` with `r` branches, up to coordinate
/// permutation. Conductor coordinates are searched up to `2g`; from four
/// branches on, `|c| ≤ 2g` is imposed as well (it holds for every class
/// found with fewer branches, and keeps the boxes small).
pub fn enumerate_value_semigroups(g: u32, r: usize) -> Result<Vec<ValueTruncation>, ClassifyError> {
    if g > MAX_GENUS {
        return Err(ClassifyError::CapExceeded {
            requested: g,
            cap: MAX_GENUS,
        });
    }
    if r == 0 || r > MAX_BRANCHES {
        return Err(ClassifyError::BranchesOutOfRange(r));
    }
    if g == 0 {
        // Only the smooth branch.
        return Ok(if r == 1 {
            vec![ValueTruncation::from_numerical(&NumericalSemigroup::naturals())]
        } else {
            Vec::new()
        });
    }
    let modulus_bound = (r >= 4).then_some(2 * g);
    Ok(enumerate_with_bound(g, r, 2 * g, modulus_bound))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub matched: Vec<ValueTruncation>,
    /// Expected but not found.
    pub missing: Vec<ValueTruncation>,
    /// Found but not expected.
    pub extra: Vec<ValueTruncation>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn diff_catalog(found: &[ValueTruncation], expected: &[ValueTruncation]) -> DiffReport {
    let f: BTreeSet<ValueTruncation> = found.iter().map(ValueTruncation::canonical_form).collect();
    let e: BTreeSet<ValueTruncation> = expected.iter().map(ValueTruncation::canonical_form).collect();
    DiffReport {
        matched: f.intersection(&e).cloned().collect(),
        missing: e.difference(&f).cloned().collect(),
        extra: f.difference(&e).cloned().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub modulus: NumericalSemigroup,
    pub members: Vec<ValueTruncation>,
    /// Members whose modulus has strictly smaller genus.
    pub strict: Vec<ValueTruncation>,
}

pub fn stratify_by_modulus(list: &[ValueTruncation]) -> Vec<Stratum> {
    // The ordering only looks at the gaps, never at the cached generators.
    #[allow(clippy::mutable_key_type)]
    let mut map: BTreeMap<NumericalSemigroup, Vec<ValueTruncation>> = BTreeMap::new();
    for t in list {
        map.entry(t.modulus()).or_default().push(t.clone());
    }
    map.into_iter()
        .map(|(modulus, members)| {
            let strict = members
                .iter()
                .filter(|t| modulus.genus() < t.genus())
                .cloned()
                .collect();
            Stratum {
                modulus,
                members,
                strict,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vt(elems: &[&[u32]]) -> ValueTruncation {
        ValueTruncation::from_elements(elems.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn genus_one() {
        assert_eq!(enumerate_value_semigroups(1, 2).unwrap(), vec![vt(&[&[0, 0], &[1, 1]])]);
        assert_eq!(enumerate_value_semigroups(1, 1).unwrap().len(), 1);
        assert!(enumerate_value_semigroups(1, 3).unwrap().is_empty());
    }

    #[test]
    fn genus_two_two_branches() {
        let found = enumerate_value_semigroups(2, 2).unwrap();
        let expected = [vt(&[&[0, 0], &[1, 2]]), vt(&[&[0, 0], &[1, 1], &[2, 2]])];
        assert!(diff_catalog(&found, &expected).is_empty());
    }

    #[test]
    fn numerical_case_matches_tree() {
        for g in 1..=4 {
            let found = enumerate_value_semigroups(g, 1).unwrap();
            let tree = crate::sgptree::enumerate(g).unwrap();
            assert_eq!(found.len(), tree.of_genus(g).count(), "genus {g}");
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(enumerate_value_semigroups(5, 2), Err(ClassifyError::CapExceeded { .. })));
        assert!(matches!(enumerate_value_semigroups(2, 6), Err(ClassifyError::BranchesOutOfRange(6))));
    }

    #[test]
    fn strata_at_genus_two() {
        let strata = stratify_by_modulus(&enumerate_value_semigroups(2, 2).unwrap());
        let mods: Vec<String> = strata.iter().map(|s| s.modulus.to_string()).collect();
        assert_eq!(mods.len(), 2);
        assert!(mods.contains(&"<3,4,5>".to_string()) && mods.contains(&"<2,5>".to_string()));
        assert!(strata.iter().all(|s| s.strict.is_empty()));
    }
}
