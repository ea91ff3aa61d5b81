//! Saturated chains from `0` to the conductor.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{leq, Point, ValueTruncation};

fn lt(a: &[u32], b: &[u32]) -> bool {
    a != b && leq(a, b)
}

/// Elements `q > p` with no element strictly between.
fn covers<'a>(t: &'a ValueTruncation, p: &[u32]) -> Vec<&'a Point> {
    let above: Vec<&Point> = t.elements.iter().filter(|q| lt(p, q)).collect();
    above
        .iter()
        .copied()
        .filter(|q| !above.iter().any(|m| lt(m, q)))
        .collect()
}

/// Deterministic saturated chain: always step to the lexicographically
/// least cover.
pub fn saturated_chain(t: &ValueTruncation) -> Vec<Point> {
    let mut chain = vec![vec![0; t.r]];
    loop {
        let last = chain.last().unwrap();
        match covers(t, last).into_iter().min() {
            Some(next) => chain.push(next.clone()),
            None => return chain,
        }
    }
}

/// A saturated chain choosing uniformly among covers at each step.
pub fn random_saturated_chain<R: Rng + ?Sized>(t: &ValueTruncation, rng: &mut R) -> Vec<Point> {
    let mut chain = vec![vec![0; t.r]];
    loop {
        let last = chain.last().unwrap();
        match covers(t, last).choose(rng) {
            Some(next) => chain.push((*next).clone()),
            None => return chain,
        }
    }
}

/// `chain` runs from `0` to `c` through elements, strictly increasing, with
/// no element insertable between consecutive entries.
pub fn is_saturated_chain(t: &ValueTruncation, chain: &[Point]) -> bool {
    let zero = vec![0; t.r];
    chain.first() == Some(&zero)
        && chain.last().map(Vec::as_slice) == Some(t.conductor())
        && chain.iter().all(|p| t.elements.contains(p))
        && chain
            .windows(2)
            .all(|w| lt(&w[0], &w[1]) && !t.elements.iter().any(|m| lt(&w[0], m) && lt(m, &w[1])))
}
