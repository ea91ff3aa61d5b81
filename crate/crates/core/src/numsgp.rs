//! Numerical semigroups stored by their gap set.
//!
//! A numerical semigroup `S ⊆ N` is cofinite and additively closed, so it is
//! determined by its finite gap set `G_S = N \ S`. Everything here is phrased
//! on gaps: the genus is `|G_S|`, the conductor is one past the largest gap and
//! elements at or beyond the conductor are never materialized.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericalSemigroupError {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators have gcd {0}, the closure has infinitely many gaps")]
    InfiniteGaps(u32),
    #[error("gap set is not the complement of a semigroup: {s} + {t} = {} is a gap", s + t)]
    NotASemigroup { s: u32, t: u32 },
    #[error("0 cannot be a gap")]
    ZeroGap,
}

#[derive(Clone)]
pub struct NumericalSemigroup {
    gaps: Vec<u32>,
    conductor: u32,
    min_gens: OnceLock<Vec<u32>>,
}

impl NumericalSemigroup {
    /// The full semigroup `N`.
    pub fn naturals() -> Self {
        Self::from_sorted_gaps_unchecked(Vec::new())
    }

    fn from_sorted_gaps_unchecked(gaps: Vec<u32>) -> Self {
        let conductor = gaps.last().map_or(0, |g| g + 1);
        Self {
            gaps,
            conductor,
            min_gens: OnceLock::new(),
        }
    }

    /// Additive closure of `gens`.
    pub fn from_generators(gens: &[u32]) -> Result<Self, NumericalSemigroupError> {
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Err(NumericalSemigroupError::EmptyGenerators);
        }
        let d = gens.iter().fold(0u32, |acc, &g| acc.gcd(&g));
        if d != 1 {
            return Err(NumericalSemigroupError::InfiniteGaps(d));
        }
        let m = *gens.iter().min().unwrap();
        // Sieve until `m` consecutive members are seen; from there on every
        // integer is reachable by adding `m`.
        let mut member = vec![true];
        let mut run = 0u32;
        let mut gaps = Vec::new();
        let mut x = 0u32;
        while run < m {
            x += 1;
            let inside = gens.iter().any(|&g| g <= x && member[(x - g) as usize]);
            member.push(inside);
            if inside {
                run += 1;
            } else {
                run = 0;
                gaps.push(x);
            }
        }
        Ok(Self::from_sorted_gaps_unchecked(gaps))
    }

    /// The semigroup with exactly the given gap set.
    pub fn from_gaps(gaps: &[u32]) -> Result<Self, NumericalSemigroupError> {
        let mut gaps = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(NumericalSemigroupError::ZeroGap);
        }
        let candidate = Self::from_sorted_gaps_unchecked(gaps);
        let c = candidate.conductor;
        for s in 1..c {
            if !candidate.contains(s) {
                continue;
            }
            for t in s..c.saturating_sub(s) {
                if candidate.contains(t) && !candidate.contains(s + t) {
                    return Err(NumericalSemigroupError::NotASemigroup { s, t });
                }
            }
        }
        Ok(candidate)
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn genus(&self) -> u32 {
        self.gaps.len() as u32
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Smallest positive element (1 for `N`).
    pub fn multiplicity(&self) -> u32 {
        self.nth_element(1)
    }

    pub fn contains(&self, x: u32) -> bool {
        x >= self.conductor || self.gaps.binary_search(&x).is_err()
    }

    /// `W_S = Σ gaps − g(g+1)/2`.
    pub fn weight(&self) -> u64 {
        let g = self.gaps.len() as u64;
        self.gaps.iter().map(|&l| l as u64).sum::<u64>() - g * (g + 1) / 2
    }

    /// The `i`-th smallest positive element `m_i` (`i ≥ 1`).
    pub fn nth_element(&self, i: u32) -> u32 {
        assert!(i >= 1, "elements are indexed from 1");
        let g = self.genus();
        let below = self.conductor.saturating_sub(1 + g);
        if i > below {
            return i + g;
        }
        (1..self.conductor)
            .filter(|&x| self.contains(x))
            .nth((i - 1) as usize)
            .expect("counted above")
    }

    /// Ordered elements `s_0 = 0 < s_1 < ...`, the first `len` of them.
    pub fn elements(&self, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        let mut x = 0;
        while out.len() < len {
            if self.contains(x) {
                out.push(x);
            }
            x += 1;
        }
        out
    }

    /// Unique minimal generating set, computed once and cached.
    pub fn minimal_generators(&self) -> &[u32] {
        self.min_gens.get_or_init(|| {
            let m = self.multiplicity();
            let bound = self.conductor + m;
            let elems: Vec<u32> = (1..=bound).filter(|&x| self.contains(x)).collect();
            elems
                .iter()
                .copied()
                .filter(|&x| {
                    !elems
                        .iter()
                        .take_while(|&&a| 2 * a <= x)
                        .any(|&a| self.contains(x - a))
                })
                .collect()
        })
    }

    pub fn is_hyperelliptic(&self) -> bool {
        self.contains(2)
    }

    /// Semigroup obtained by deleting the minimal generator `b`.
    pub(crate) fn remove_generator(&self, b: u32) -> Self {
        debug_assert!(b >= self.conductor);
        let mut gaps = self.gaps.clone();
        gaps.push(b);
        Self::from_sorted_gaps_unchecked(gaps)
    }

    pub fn dyck(&self) -> DyckDiagram {
        DyckDiagram::of(self)
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gaps.hash(state);
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Genus first, then gap list.
impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps
            .len()
            .cmp(&other.gaps.len())
            .then_with(|| self.gaps.cmp(&other.gaps))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators().iter().map(u32::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

/// Wire form: `{"gens":[...]}` or `{"gaps":[...]}` on input, everything on output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
}

impl From<&NumericalSemigroup> for NumericalSemigroupJson {
    fn from(s: &NumericalSemigroup) -> Self {
        Self {
            gens: Some(s.minimal_generators().to_vec()),
            gaps: Some(s.gaps.clone()),
            genus: Some(s.genus()),
            conductor: Some(s.conductor),
            weight: Some(s.weight()),
        }
    }
}

impl TryFrom<NumericalSemigroupJson> for NumericalSemigroup {
    type Error = NumericalSemigroupError;

    fn try_from(value: NumericalSemigroupJson) -> Result<Self, Self::Error> {
        match (value.gaps, value.gens) {
            (Some(gaps), _) => Self::from_gaps(&gaps),
            (None, Some(gens)) => Self::from_generators(&gens),
            (None, None) => Err(NumericalSemigroupError::EmptyGenerators),
        }
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NumericalSemigroupJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = NumericalSemigroupJson::deserialize(deserializer)?;
        Self::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Right,
}

/// Lattice path on the `g × g` grid: step `i` is up iff `i` is a gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckDiagram {
    steps: Vec<Step>,
    box_count: u64,
}

impl DyckDiagram {
    fn of(s: &NumericalSemigroup) -> Self {
        let g = s.genus();
        let steps: Vec<Step> = (1..=2 * g)
            .map(|i| if s.contains(i) { Step::Right } else { Step::Up })
            .collect();
        // Each right step owns the column of boxes above it up to the top border.
        let mut ups_after = steps.iter().filter(|&&st| st == Step::Up).count() as u64;
        let mut box_count = 0;
        for st in &steps {
            match st {
                Step::Up => ups_after -= 1,
                Step::Right => box_count += ups_after,
            }
        }
        Self { steps, box_count }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn box_count(&self) -> u64 {
        self.box_count
    }

    /// Height of the path when it crosses column `x` (its `x`-th right step).
    pub fn column_heights(&self) -> Vec<usize> {
        let mut h = 0;
        let mut out = Vec::with_capacity(self.size());
        for st in &self.steps {
            match st {
                Step::Up => h += 1,
                Step::Right => out.push(h),
            }
        }
        out
    }

    /// True iff no prefix has more right steps than up steps.
    pub fn stays_above_diagonal(&self) -> bool {
        let mut balance: i64 = 0;
        self.steps.iter().all(|st| {
            balance += if *st == Step::Up { 1 } else { -1 };
            balance >= 0
        })
    }

    /// Top row first; `#` marks a box of the tableau, `.` a box below the path.
    pub fn to_ascii(&self) -> String {
        let g = self.size();
        let heights = self.column_heights();
        let mut out = String::new();
        out.push('+');
        out.push_str(&"-".repeat(g));
        out.push_str("+\n");
        for y in (0..g).rev() {
            out.push('|');
            for h in &heights {
                out.push(if y >= *h { '#' } else { '.' });
            }
            out.push_str("|\n");
        }
        out.push('+');
        out.push_str(&"-".repeat(g));
        out.push_str("+\n");
        out
    }

    pub fn to_svg(&self, cell: u32) -> String {
        let g = self.size() as u32;
        let side = g * cell;
        let heights = self.column_heights();
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">\n",
            w = side + 2
        );
        out.push_str(&format!(
            "  <rect x=\"1\" y=\"1\" width=\"{side}\" height=\"{side}\" fill=\"none\" stroke=\"blue\"/>\n"
        ));
        for (x, h) in heights.iter().enumerate() {
            for y in *h as u32..g {
                let px = 1 + x as u32 * cell;
                let py = 1 + (g - 1 - y) * cell;
                out.push_str(&format!(
                    "  <rect x=\"{px}\" y=\"{py}\" width=\"{cell}\" height=\"{cell}\" fill=\"lightgray\" stroke=\"blue\"/>\n"
                ));
            }
        }
        let (mut x, mut y) = (0u32, 0u32);
        let mut pts = vec![format!("{},{}", 1, 1 + side)];
        for st in &self.steps {
            match st {
                Step::Up => y += 1,
                Step::Right => x += 1,
            }
            pts.push(format!("{},{}", 1 + x * cell, 1 + side - y * cell));
        }
        out.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n</svg>\n",
            pts.join(" ")
        ));
        out
    }
}
