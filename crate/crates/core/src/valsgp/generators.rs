//! Generating sets with infinite coordinates, and the span of such a set.
//!
//! Spans are computed inside the box `[0, B]^r`, where `B` stands for every
//! value `≥ B`. Capping at `B` commutes with `+` and `min`, so the box
//! closure is the image of the honest closure; SM2 is enforced lazily by
//! adding, for an unwitnessed pair `a, b` with `a_i = b_i`, the point that is
//! `B` in coordinate `i`, `min(a_j, b_j)` where the pair differs, and the
//! common value where it agrees.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{Point, ValueTruncation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanError {
    #[error("no generators given")]
    Empty,
    #[error("generator {0} does not have {1} coordinates")]
    WrongArity(GeneratorTuple, usize),
    #[error("closure has no conductor inside the box of side {0}")]
    NoConductor(u32),
    #[error("closure is not determined by its truncation at {0:?}")]
    Inconsistent(Point),
    #[error("no generating set reproduces the truncation")]
    NotSpanning,
    #[error("{0} is not a valid value semigroup truncation")]
    NotValid(String),
    #[error("{0}")]
    Parse(String),
}

/// An `r`-tuple over `N ∪ {∞}`; `None` is `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTuple {
    coords: Vec<Option<u32>>,
}

impl GeneratorTuple {
    /// At least one coordinate must be finite.
    pub fn new(coords: Vec<Option<u32>>) -> Option<Self> {
        coords.iter().any(Option::is_some).then_some(Self { coords })
    }

    pub fn finite(coords: &[u32]) -> Self {
        Self {
            coords: coords.iter().map(|&x| Some(x)).collect(),
        }
    }

    pub fn coords(&self) -> &[Option<u32>] {
        &self.coords
    }

    pub fn r(&self) -> usize {
        self.coords.len()
    }

    /// Sum of the finite coordinates.
    pub fn modulus(&self) -> u32 {
        self.coords.iter().flatten().sum()
    }

    /// `∞` replaced by `inf`.
    pub fn realize(&self, inf: u32) -> Point {
        self.coords.iter().map(|c| c.unwrap_or(inf).min(inf)).collect()
    }

    fn sort_key(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.unwrap_or(u32::MAX)).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            coords: perm.iter().map(|&k| self.coords[k]).collect(),
        }
    }
}

impl PartialOrd for GeneratorTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic, with `∞` above every finite value.
impl Ord for GeneratorTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.map_or("∞".to_string(), |x| x.to_string()))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for GeneratorTuple {
    type Err = SpanError;

    /// Accepts `(1,∞)`, `(1,inf)` or `1,inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split(',')
            .map(|p| match p.trim() {
                "∞" | "inf" | "oo" => Ok(None),
                x => x
                    .parse::<u32>()
                    .map(Some)
                    .map_err(|_| SpanError::Parse(format!("bad coordinate {x:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords).ok_or_else(|| SpanError::Parse(format!("{s:?} has no finite coordinate")))
    }
}

impl Serialize for GeneratorTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Points of `[0, side-1]^r` indexed in mixed radix.
struct BoxGrid {
    r: usize,
    side: u32,
}

impl BoxGrid {
    fn len(&self) -> usize {
        (self.side as usize).pow(self.r as u32)
    }

    fn index(&self, p: &[u32]) -> usize {
        p.iter().fold(0, |acc, &x| acc * self.side as usize + x as usize)
    }

    fn point(&self, mut idx: usize) -> Point {
        let mut p = vec![0; self.r];
        for k in (0..self.r).rev() {
            p[k] = (idx % self.side as usize) as u32;
            idx /= self.side as usize;
        }
        p
    }
}

type PointFilter<'a> = &'a dyn Fn(&[u32]) -> bool;

/// Closure inside `[0, bound]^r`. `allowed`, if given, aborts the closure as
/// soon as a point outside it appears.
fn box_closure(
    seeds: &[Point],
    r: usize,
    bound: u32,
    allowed: Option<PointFilter<'_>>,
) -> Option<(BoxGrid, Vec<bool>, Vec<Point>)> {
    let grid = BoxGrid { r, side: bound + 1 };
    let mut member = vec![false; grid.len()];
    let mut elems: Vec<Point> = Vec::new();
    let mut queue: Vec<Point> = vec![vec![0; r]];
    queue.extend(seeds.iter().cloned());

    let add = |p: Point, member: &mut Vec<bool>, queue: &mut Vec<Point>| -> bool {
        let idx = grid.index(&p);
        if member[idx] {
            return true;
        }
        if let Some(ok) = allowed {
            if !ok(&p) {
                return false;
            }
        }
        member[idx] = true;
        queue.push(p);
        true
    };

    // Seeds go through `add` so they are checked and deduplicated.
    let seeds = std::mem::take(&mut queue);
    for s in seeds {
        if !add(s, &mut member, &mut queue) {
            return None;
        }
    }

    loop {
        while let Some(x) = queue.pop() {
            elems.push(x.clone());
            for y in elems.clone() {
                let sum: Point = x.iter().zip(&y).map(|(a, b)| (a + b).min(bound)).collect();
                let min: Point = x.iter().zip(&y).map(|(a, b)| *a.min(b)).collect();
                if !add(sum, &mut member, &mut queue) || !add(min, &mut member, &mut queue) {
                    return None;
                }
            }
        }
        // Lazy SM2 pass.
        let mut added = false;
        let snapshot = elems.clone();
        for (x, a) in snapshot.iter().enumerate() {
            for b in &snapshot[x + 1..] {
                for i in 0..r {
                    if a[i] != b[i] || a[i] >= bound {
                        continue;
                    }
                    if super::has_sm2_witness(snapshot.iter(), a, b, i) || has_witness_in(&queue, a, b, i) {
                        continue;
                    }
                    let gamma: Point = (0..r)
                        .map(|j| if j == i { bound } else { a[j].min(b[j]) })
                        .collect();
                    if !add(gamma, &mut member, &mut queue) {
                        return None;
                    }
                    added = true;
                }
            }
        }
        if !added {
            return Some((grid, member, elems));
        }
    }
}

fn has_witness_in(pending: &[Point], a: &[u32], b: &[u32], i: usize) -> bool {
    super::has_sm2_witness(pending.iter(), a, b, i)
}

/// Smallest truncation closed under the axioms containing `0` and `gens`,
/// with `∞` realized as `box_bound`.
pub fn span(gens: &[GeneratorTuple], r: usize, box_bound: u32) -> Result<ValueTruncation, SpanError> {
    if gens.is_empty() {
        return Err(SpanError::Empty);
    }
    if let Some(g) = gens.iter().find(|g| g.r() != r) {
        return Err(SpanError::WrongArity(g.clone(), r));
    }
    let seeds: Vec<Point> = gens.iter().map(|g| g.realize(box_bound)).collect();
    let (grid, member, elems) = box_closure(&seeds, r, box_bound, None).expect("unrestricted closure");
    truncate(&grid, &member, &elems, r, box_bound)
}

fn truncate(grid: &BoxGrid, member: &[bool], elems: &[Point], r: usize, bound: u32) -> Result<ValueTruncation, SpanError> {
    // full[p]: every box point ≥ p is a member. Indices increase with each
    // coordinate, so a reverse sweep sees p + e_j before p.
    let mut full = vec![false; grid.len()];
    for idx in (0..grid.len()).rev() {
        if !member[idx] {
            continue;
        }
        let p = grid.point(idx);
        full[idx] = (0..r).all(|j| {
            p[j] == bound || {
                let mut q = p.clone();
                q[j] += 1;
                full[grid.index(&q)]
            }
        });
    }
    let mut c = vec![bound; r];
    for idx in (0..grid.len()).filter(|&i| full[i]) {
        for (cj, pj) in c.iter_mut().zip(grid.point(idx)) {
            *cj = (*cj).min(pj);
        }
    }
    if !full[grid.index(&c)] || c.iter().any(|&x| x >= bound) {
        return Err(SpanError::NoConductor(bound));
    }
    let t = ValueTruncation::new(
        r,
        c.clone(),
        elems.iter().filter(|p| super::leq(p, &c)).cloned(),
    )
    .expect("points below the conductor");
    for (idx, &inside) in member.iter().enumerate() {
        let p = grid.point(idx);
        if inside != t.contains(&p) {
            return Err(SpanError::Inconsistent(p));
        }
    }
    Ok(t)
}

/// Does `gens` span exactly `t` inside the box of side `bound`? Aborts early
/// once the closure leaves `t`.
fn spans_exactly(gens: &[GeneratorTuple], t: &ValueTruncation, bound: u32) -> bool {
    let seeds: Vec<Point> = gens.iter().map(|g| g.realize(bound)).collect();
    let allowed = |p: &[u32]| t.contains(p);
    match box_closure(&seeds, t.r(), bound, Some(&allowed)) {
        Some((grid, member, elems)) => truncate(&grid, &member, &elems, t.r(), bound).is_ok_and(|s| s == *t),
        None => false,
    }
}

/// Members with finite coordinates in `[1, 2c_i]`; values past the conductor
/// matter, e.g. `(∞,5)` against `c = (2,4)`.
fn candidates(t: &ValueTruncation) -> Vec<GeneratorTuple> {
    let c = t.conductor();
    let mut out = Vec::new();
    let mut cur = vec![None; t.r()];
    fn rec(k: usize, c: &[u32], cur: &mut Vec<Option<u32>>, t: &ValueTruncation, out: &mut Vec<GeneratorTuple>) {
        if k == c.len() {
            if let Some(g) = GeneratorTuple::new(cur.clone()) {
                if t.contains(&g.realize(u32::MAX)) {
                    out.push(g);
                }
            }
            return;
        }
        for v in (1..=2 * c[k]).map(Some).chain([None]) {
            cur[k] = v;
            rec(k + 1, c, cur, t, out);
        }
    }
    rec(0, c, &mut cur, t, &mut out);
    out.sort();
    out
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

/// A generating set of least size, then least total modulus, then
/// lexicographically least (as a sorted list, `∞` above finite values).
pub fn minimal_generators(t: &ValueTruncation) -> Result<Vec<GeneratorTuple>, SpanError> {
    // An invalid set is spanned by nothing; don't search for it.
    if !t.is_valid() {
        return Err(SpanError::NotValid(t.to_string()));
    }
    let r = t.r();
    let bound = 2 * t.conductor().iter().copied().max().unwrap_or(0) + 1;
    let cands = candidates(t);
    for m in 1..=cands.len() {
        let mut subsets: Vec<(u32, Vec<GeneratorTuple>)> = combinations(cands.len(), m)
            .into_iter()
            .map(|ix| {
                let gens: Vec<GeneratorTuple> = ix.iter().map(|&i| cands[i].clone()).collect();
                (gens.iter().map(GeneratorTuple::modulus).sum(), gens)
            })
            .collect();
        subsets.sort();
        for (_, gens) in subsets {
            if spans_exactly(&gens, t, bound) && span(&gens, r, bound + 3).is_ok_and(|s| s == *t) {
                return Ok(gens);
            }
        }
    }
    Err(SpanError::NotSpanning)
}

/// Is `gens` a permuted copy of `other` under some automorphism of `t`?
pub fn same_up_to_symmetry(t: &ValueTruncation, gens: &[GeneratorTuple], other: &[GeneratorTuple]) -> bool {
    let want: BTreeSet<&GeneratorTuple> = other.iter().collect();
    t.automorphisms().iter().any(|p| {
        let image: BTreeSet<GeneratorTuple> = gens.iter().map(|g| g.permuted(p)).collect();
        image.len() == want.len() && image.iter().all(|g| want.contains(g))
    })
}
