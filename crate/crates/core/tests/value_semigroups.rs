use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semigroup_forge::classify::{enumerate_value_semigroups, enumerate_with_bound, stratify_by_modulus};
use semigroup_forge::valsgp::{
    is_saturated_chain, random_saturated_chain, saturated_chain, span, GeneratorTuple, ValueTruncation,
};

type P = (u32, u32);

/// Brute-force classification of two-branch value semigroups with conductor
/// in `[1, bound]²`, straight from the axioms on the (uncapped) semigroup.
/// Returns `(genus, sorted elements of S*)`, one per orbit under the swap.
fn two_branch_oracle(bound: u32) -> BTreeSet<(u32, Vec<P>)> {
    let mut out = BTreeSet::new();
    for c1 in 1..=bound {
        for c2 in 1..=bound {
            // Locality: nonzero elements have both coordinates positive.
            let free: Vec<P> = (1..=c1)
                .flat_map(|x| (1..=c2).map(move |y| (x, y)))
                .filter(|&p| p != (c1, c2))
                .collect();
            for mask in 0u32..1 << free.len() {
                let mut elems: BTreeSet<P> = [(0, 0), (c1, c2)].into();
                elems.extend(free.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, p)| *p));
                if let Some(g) = oracle_genus((c1, c2), &elems) {
                    let swapped: Vec<P> = elems.iter().map(|&(x, y)| (y, x)).collect::<BTreeSet<_>>().into_iter().collect();
                    let plain: Vec<P> = elems.into_iter().collect();
                    let key = if (c1, c2) <= (c2, c1) { plain.clone() } else { swapped.clone() };
                    let key = if c1 == c2 { plain.min(swapped) } else { key };
                    out.insert((g, key));
                }
            }
        }
    }
    out
}

/// Genus if `elems` (with conductor `c`) is the truncation of a value
/// semigroup, `None` otherwise.
fn oracle_genus(c: P, elems: &BTreeSet<P>) -> Option<u32> {
    let mem = |p: P| elems.contains(&(p.0.min(c.0), p.1.min(c.1)));
    // Minimality of the conductor.
    if mem((c.0 - 1, c.1)) || mem((c.0, c.1 - 1)) {
        return None;
    }
    // Addition and min, on representatives (capping commutes with both).
    for &a in elems {
        for &b in elems {
            if !mem((a.0 + b.0, a.1 + b.1)) || !mem((a.0.min(b.0), a.1.min(b.1))) {
                return None;
            }
        }
    }
    // SM2 on the uncapped semigroup, with points up to one step past c.
    let pts: Vec<P> = (0..=c.0 + 1)
        .flat_map(|x| (0..=c.1 + 1).map(move |y| (x, y)))
        .filter(|&p| mem(p))
        .collect();
    for &a in &pts {
        for &b in &pts {
            if a == b {
                continue;
            }
            let ok = if a.0 == b.0 {
                let m = a.1.min(b.1);
                (a.0 + 1..=c.0 + 2).any(|x| mem((x, m)))
            } else if a.1 == b.1 {
                let m = a.0.min(b.0);
                (a.1 + 1..=c.1 + 2).any(|y| mem((m, y)))
            } else {
                true
            };
            if !ok {
                return None;
            }
        }
    }
    // Genus = |c| − (length of a longest chain 0 < … < c in S*).
    let sorted: Vec<P> = elems.iter().copied().collect();
    let mut longest = vec![0u32; sorted.len()];
    for j in 0..sorted.len() {
        for i in 0..j {
            let (a, b) = (sorted[i], sorted[j]);
            if a.0 <= b.0 && a.1 <= b.1 && a != b {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
    }
    Some(c.0 + c.1 - longest[sorted.len() - 1])
}

#[test]
fn two_branches_match_subset_oracle() {
    let bound = 4;
    let oracle = two_branch_oracle(bound);
    for g in 1..=2 * bound {
        let want: BTreeSet<Vec<P>> = oracle.iter().filter(|(h, _)| *h == g).map(|(_, e)| e.clone()).collect();
        let found: BTreeSet<Vec<P>> = enumerate_with_bound(g, 2, bound, None)
            .iter()
            .map(|t| t.elements().iter().map(|p| (p[0], p[1])).collect())
            .collect();
        assert_eq!(found, want, "genus {g}");
    }
}

fn all_classes() -> Vec<(u32, ValueTruncation)> {
    let mut out = Vec::new();
    for g in 1..=4 {
        for r in 1..=5 {
            out.extend(enumerate_value_semigroups(g, r).unwrap().into_iter().map(|t| (g, t)));
        }
    }
    out
}

#[test]
fn enumerated_classes_are_valid_with_well_defined_genus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, t) in all_classes() {
        assert!(t.is_valid(), "{t}");
        assert_eq!(t.genus(), g, "{t}");
        assert!(t.genus_inequality(), "{t}");
        assert!(t.is_canonical(), "{t}");
        let chain = saturated_chain(&t);
        assert!(is_saturated_chain(&t, &chain));
        let steps = chain.len() - 1;
        let sum: u32 = t.conductor().iter().sum();
        assert_eq!(sum - steps as u32, g, "{t}");
        for _ in 0..100 {
            let c = random_saturated_chain(&t, &mut rng);
            assert!(is_saturated_chain(&t, &c));
            assert_eq!(c.len() - 1, steps, "{t}");
        }
    }
}

#[test]
fn enumerated_classes_are_tropically_closed() {
    for (_, t) in all_classes() {
        for a in t.elements() {
            for b in t.elements() {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let min: Vec<u32> = a.iter().zip(b).map(|(x, y)| *x.min(y)).collect();
                assert!(t.contains(&sum) && t.contains(&min), "{t}: {a:?}, {b:?}");
            }
        }
    }
}

#[test]
fn branch_count_is_at_most_genus_plus_one() {
    for g in 1..=3 {
        assert!(enumerate_value_semigroups(g, g as usize + 2).unwrap().is_empty(), "genus {g}");
    }
}

#[test]
fn conductor_modulus_bound_holds_without_being_imposed() {
    for g in 1..=4 {
        for r in 1..=3 {
            for t in enumerate_value_semigroups(g, r).unwrap() {
                assert!(t.conductor_modulus() <= 2 * g, "{t}");
            }
        }
    }
}

#[test]
fn relaxed_conductor_box_finds_nothing_new() {
    for g in 1..=3u32 {
        for r in 1..=4 {
            let strict = enumerate_value_semigroups(g, r).unwrap();
            let relaxed = enumerate_with_bound(g, r, 2 * g + 2, None);
            assert_eq!(strict, relaxed, "g={g} r={r}");
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a: Vec<String> = enumerate_value_semigroups(4, 3).unwrap().iter().map(|t| t.to_string()).collect();
    let b: Vec<String> = enumerate_value_semigroups(4, 3).unwrap().iter().map(|t| t.to_string()).collect();
    assert_eq!(a, b);
}

#[test]
fn strata_partition_the_classes() {
    let list = enumerate_value_semigroups(3, 2).unwrap();
    let strata = stratify_by_modulus(&list);
    assert_eq!(strata.iter().map(|s| s.members.len()).sum::<usize>(), list.len());
    for s in &strata {
        assert!(s.members.iter().all(|t| t.modulus() == s.modulus));
    }
}

fn generator() -> impl Strategy<Value = GeneratorTuple> {
    prop::collection::vec(prop::option::weighted(0.8, 1u32..=4), 2)
        .prop_filter_map("needs a finite coordinate", GeneratorTuple::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spans_are_valid_and_contain_their_generators(gens in prop::collection::vec(generator(), 1..=3)) {
        if let Ok(t) = span(&gens, 2, 12) {
            prop_assert!(t.is_valid(), "{}", t);
            for g in &gens {
                let c = t.conductor();
                let realized: Vec<u32> = g.coords().iter().zip(c).map(|(x, ci)| x.map_or(*ci, |v| v.min(*ci))).collect();
                prop_assert!(t.contains(&realized), "{} missing {}", t, g);
            }
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant(gens in prop::collection::vec(generator(), 1..=3)) {
        if let Ok(t) = span(&gens, 2, 12) {
            let swapped = t.permuted(&[1, 0]);
            prop_assert_eq!(swapped.canonical_form(), t.canonical_form());
            prop_assert_eq!(t.canonical_form().canonical_form(), t.canonical_form());
        }
    }
}
