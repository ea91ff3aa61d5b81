//! The semigroup tree: every numerical semigroup of genus `g + 1` arises from
//! exactly one of genus `g` by deleting a minimal generator at or beyond the
//! conductor.

use rayon::prelude::*;
use thiserror::Error;

use crate::numsgp::NumericalSemigroup;

/// Enumerations beyond this genus are refused.
pub const GENUS_CAP: u32 = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("genus {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },
}

fn check_cap(g: u32) -> Result<(), TreeError> {
    if g > GENUS_CAP {
        Err(TreeError::CapExceeded {
            requested: g,
            cap: GENUS_CAP,
        })
    } else {
        Ok(())
    }
}

/// Children ordered by the removed generator.
pub fn children(s: &NumericalSemigroup) -> Vec<NumericalSemigroup> {
    let c = s.conductor();
    s.minimal_generators()
        .iter()
        .filter(|&&b| b >= c)
        .map(|&b| s.remove_generator(b))
        .collect()
}

pub fn is_hyperelliptic(s: &NumericalSemigroup) -> bool {
    s.is_hyperelliptic()
}

/// Result of a tree walk: the semigroups in depth-first order plus the
/// number found at each genus.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub semigroups: Vec<NumericalSemigroup>,
    pub counts: Vec<usize>,
}

impl Enumeration {
    pub fn iter(&self) -> impl Iterator<Item = (u32, &NumericalSemigroup)> {
        self.semigroups.iter().map(|s| (s.genus(), s))
    }

    pub fn of_genus(&self, g: u32) -> impl Iterator<Item = &NumericalSemigroup> {
        self.semigroups.iter().filter(move |s| s.genus() == g)
    }
}

fn dfs(s: NumericalSemigroup, max_genus: u32, out: &mut Vec<NumericalSemigroup>) {
    let kids = if s.genus() < max_genus {
        children(&s)
    } else {
        Vec::new()
    };
    out.push(s);
    for k in kids {
        dfs(k, max_genus, out);
    }
}

/// Walk the tree down to `max_genus`, depth-first with children ordered by
/// removed generator. Subtrees are explored in parallel and concatenated in
/// order, so the output does not depend on the thread count.
pub fn enumerate(max_genus: u32) -> Result<Enumeration, TreeError> {
    check_cap(max_genus)?;
    // Expand the top of the tree sequentially until there is enough
    // independent work, remembering the prefix in DFS order.
    const SPLIT_GENUS: u32 = 6;
    let split = SPLIT_GENUS.min(max_genus);
    let mut prefix = Vec::new();
    let mut frontier = Vec::new();
    fn top(
        s: NumericalSemigroup,
        split: u32,
        prefix: &mut Vec<Option<usize>>,
        frontier: &mut Vec<NumericalSemigroup>,
        head: &mut Vec<NumericalSemigroup>,
    ) {
        if s.genus() == split {
            prefix.push(Some(frontier.len()));
            frontier.push(s);
            return;
        }
        let kids = children(&s);
        prefix.push(None);
        head.push(s);
        for k in kids {
            top(k, split, prefix, frontier, head);
        }
    }
    let mut head = Vec::new();
    top(
        NumericalSemigroup::naturals(),
        split,
        &mut prefix,
        &mut frontier,
        &mut head,
    );
    let subtrees: Vec<Vec<NumericalSemigroup>> = frontier
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            dfs(s, max_genus, &mut out);
            out
        })
        .collect();
    let mut subtrees: Vec<Option<Vec<NumericalSemigroup>>> = subtrees.into_iter().map(Some).collect();
    let mut head = head.into_iter();
    let mut semigroups = Vec::new();
    for slot in prefix {
        match slot {
            None => semigroups.push(head.next().expect("one head entry per interior node")),
            Some(i) => semigroups.extend(subtrees[i].take().expect("each subtree used once")),
        }
    }
    let mut counts = vec![0usize; max_genus as usize + 1];
    for s in &semigroups {
        counts[s.genus() as usize] += 1;
    }
    Ok(Enumeration { semigroups, counts })
}

/// Nonhyperelliptic semigroups of genus exactly `g` with `W_S ≥ 2g`.
pub fn weight_outliers(g: u32) -> Result<Vec<NumericalSemigroup>, TreeError> {
    check_cap(g)?;
    let all = enumerate(g)?;
    let mut out: Vec<NumericalSemigroup> = all
        .of_genus(g)
        .filter(|s| !s.is_hyperelliptic() && s.weight() >= 2 * g as u64)
        .cloned()
        .collect();
    out.sort_by(|a, b| a.minimal_generators().cmp(b.minimal_generators()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn children_examples() {
        assert_eq!(children(&NumericalSemigroup::naturals()), vec![gens(&[2, 3])]);
        assert_eq!(children(&gens(&[2, 3])), vec![gens(&[3, 4, 5]), gens(&[2, 5])]);
        assert_eq!(children(&gens(&[2, 5])), vec![gens(&[2, 7])]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(0).unwrap().semigroups, vec![NumericalSemigroup::naturals()]);
        assert_eq!(enumerate(4).unwrap().counts, vec![1, 1, 2, 4, 7]);
    }

    #[test]
    fn dfs_order_is_stable() {
        let e = enumerate(9).unwrap();
        let mut seq = Vec::new();
        dfs(NumericalSemigroup::naturals(), 9, &mut seq);
        assert_eq!(e.semigroups, seq);
    }

    #[test]
    fn hyperelliptic_flags() {
        assert!(is_hyperelliptic(&gens(&[2, 11])));
        assert!(!is_hyperelliptic(&gens(&[3, 8])));
        assert!(is_hyperelliptic(&NumericalSemigroup::naturals()));
    }

    #[test]
    fn outliers() {
        assert_eq!(weight_outliers(7).unwrap(), vec![gens(&[3, 8])]);
        assert_eq!(weight_outliers(8).unwrap(), vec![gens(&[3, 10, 17]), gens(&[4, 6, 13])]);
        assert!(weight_outliers(5).unwrap().is_empty());
    }

    #[test]
    fn cap() {
        assert_eq!(
            enumerate(26).unwrap_err(),
            TreeError::CapExceeded { requested: 26, cap: 25 }
        );
    }
}
