//! The built-in table of small-genus value semigroups.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::numsgp::NumericalSemigroup;
use crate::valsgp::{permutations, Point, ValueTruncation};

const BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub genus: u32,
    pub r: usize,
    pub label: String,
    /// Generators, for one-branch entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerical: Option<Vec<u32>>,
    /// The truncation `S*`, conductor last in the listed order or not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Point>>,
    /// Generators of the stated modulus stratum.
    pub modulus: Option<Vec<u32>>,
    /// Stated MT flag.
    pub mt: Option<bool>,
    /// Close the listed set under coordinate permutations first.
    #[serde(default)]
    pub symmetrize: bool,
}

impl CatalogEntry {
    /// The truncation as listed (not validated, not canonicalized).
    pub fn truncation(&self) -> Result<ValueTruncation, ClassifyError> {
        if let Some(gens) = &self.numerical {
            let s = NumericalSemigroup::from_generators(gens).map_err(|e| ClassifyError::Catalog(e.to_string()))?;
            return Ok(ValueTruncation::from_numerical(&s));
        }
        let elems = self
            .elements
            .clone()
            .ok_or_else(|| ClassifyError::Catalog(format!("entry {:?} lists no elements", self.label)))?;
        let elems = if self.symmetrize {
            let perms = permutations(self.r);
            elems
                .iter()
                .flat_map(|p| perms.iter().map(move |q| q.iter().map(|&k| p[k]).collect::<Point>()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        } else {
            elems
        };
        ValueTruncation::from_elements(elems).map_err(|e| ClassifyError::Catalog(e.to_string()))
    }

    pub fn stated_modulus(&self) -> Option<NumericalSemigroup> {
        self.modulus.as_ref().and_then(|g| NumericalSemigroup::from_generators(g).ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(BUILTIN).expect("built-in catalog parses"))
    }

    pub fn from_json(s: &str) -> Result<Self, ClassifyError> {
        serde_json::from_str(s).map_err(|e| ClassifyError::Catalog(e.to_string()))
    }

    pub fn entries_for(&self, g: u32, r: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.genus == g && e.r == r)
    }

    /// Canonical truncations listed for `(g, r)`.
    pub fn truncations(&self, g: u32, r: usize) -> Result<Vec<ValueTruncation>, ClassifyError> {
        self.entries_for(g, r)
            .map(|e| e.truncation().map(|t| t.canonical_form()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        let c = Catalog::builtin();
        assert_eq!(c.entries_for(4, 2).count(), 13);
        assert_eq!(c.entries_for(3, 4).count(), 1);
        assert_eq!(c.entries_for(4, 1).count(), 7);
    }

    #[test]
    fn symmetrized_orbit() {
        let c = Catalog::builtin();
        let e = c.entries.iter().find(|e| e.symmetrize).unwrap();
        let t = e.truncation().unwrap();
        // 0, (1,1,1,1), four of (1,1,1,2), six of (1,1,2,2), (2,2,2,2).
        assert_eq!(t.len(), 13);
        assert_eq!(t.automorphisms().len(), 24);
    }
}
