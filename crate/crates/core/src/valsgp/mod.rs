//! Value semigroups of singularities with several branches, stored by their
//! truncation `S* = { s ∈ S : s ≤ c }` below the conductor `c ∈ N^r`.
//!
//! A point `p ∈ N^r` belongs to `S` iff `min(p, c)` belongs to `S*`; every
//! axiom below is evaluated under this capping convention.

mod chain;
mod generators;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numsgp::NumericalSemigroup;
pub use chain::{is_saturated_chain, random_saturated_chain, saturated_chain};
pub use generators::{minimal_generators, same_up_to_symmetry, span, GeneratorTuple, SpanError};

pub type Point = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueSemigroupError {
    #[error("point {0:?} has the wrong number of coordinates")]
    WrongArity(Point),
    #[error("element {0:?} is not below the conductor")]
    AboveConductor(Point),
    #[error("no elements given")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueTruncation {
    r: usize,
    conductor: Point,
    elements: BTreeSet<Point>,
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl ValueTruncation {
    /// `0` and `c` are added if missing.
    pub fn new(r: usize, conductor: Point, elements: impl IntoIterator<Item = Point>) -> Result<Self, ValueSemigroupError> {
        if conductor.len() != r {
            return Err(ValueSemigroupError::WrongArity(conductor));
        }
        let mut set = BTreeSet::new();
        set.insert(vec![0; r]);
        set.insert(conductor.clone());
        for e in elements {
            if e.len() != r {
                return Err(ValueSemigroupError::WrongArity(e));
            }
            if !leq(&e, &conductor) {
                return Err(ValueSemigroupError::AboveConductor(e));
            }
            set.insert(e);
        }
        Ok(Self {
            r,
            conductor,
            elements: set,
        })
    }

    /// Conductor taken as the componentwise maximum of the listed elements.
    pub fn from_elements(elements: Vec<Point>) -> Result<Self, ValueSemigroupError> {
        let r = elements.first().ok_or(ValueSemigroupError::Empty)?.len();
        let mut c = vec![0; r];
        for e in &elements {
            if e.len() != r {
                return Err(ValueSemigroupError::WrongArity(e.clone()));
            }
            for (ci, ei) in c.iter_mut().zip(e) {
                *ci = (*ci).max(*ei);
            }
        }
        Self::new(r, c, elements)
    }

    /// The truncation of a numerical semigroup, as a one-branch value semigroup.
    pub fn from_numerical(s: &NumericalSemigroup) -> Self {
        let c = s.conductor();
        let elems = (0..=c).filter(|&x| s.contains(x)).map(|x| vec![x]);
        Self::new(1, vec![c], elems).expect("elements lie below the conductor")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn conductor(&self) -> &[u32] {
        &self.conductor
    }

    pub fn elements(&self) -> &BTreeSet<Point> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn cap(&self, p: &[u32]) -> Point {
        p.iter().zip(&self.conductor).map(|(x, c)| (*x).min(*c)).collect()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        p.len() == self.r && self.elements.contains(&self.cap(p))
    }

    /// `|c|`.
    pub fn conductor_modulus(&self) -> u32 {
        self.conductor.iter().sum()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    pub fn genus(&self) -> u32 {
        self.conductor_modulus() - (saturated_chain(self).len() as u32 - 1)
    }

    /// Numerical semigroup generated by the element moduli together with all
    /// integers `≥ |c|`.
    pub fn modulus(&self) -> NumericalSemigroup {
        let m = self.conductor_modulus();
        if m == 0 {
            return NumericalSemigroup::naturals();
        }
        let mut gens: Vec<u32> = self.elements.iter().map(|e| e.iter().sum()).collect();
        gens.extend(m..2 * m);
        NumericalSemigroup::from_generators(&gens).expect("consecutive integers are coprime")
    }

    pub fn genus_inequality(&self) -> bool {
        self.modulus().genus() <= self.genus()
    }

    /// `{p_i : p ∈ S*} ∪ [c_i, ∞)`.
    pub fn branch_projection(&self, i: usize) -> NumericalSemigroup {
        let ci = self.conductor[i];
        let present: BTreeSet<u32> = self.elements.iter().map(|e| e[i]).collect();
        let gaps: Vec<u32> = (0..ci).filter(|x| !present.contains(x)).collect();
        NumericalSemigroup::from_gaps(&gaps).expect("projection of a valid truncation is a semigroup")
    }

    pub fn branch_genera(&self) -> Vec<u32> {
        (0..self.r).map(|i| self.branch_projection(i).genus()).collect()
    }

    /// `Σ g_i + r − 1 = g`.
    pub fn is_mt(&self) -> bool {
        self.branch_genera().iter().sum::<u32>() + self.r as u32 - 1 == self.genus()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let apply = |p: &Point| perm.iter().map(|&k| p[k]).collect::<Point>();
        Self {
            r: self.r,
            conductor: apply(&self.conductor),
            elements: self.elements.iter().map(apply).collect(),
        }
    }

    fn sort_key(&self) -> (Point, Vec<Point>) {
        (self.conductor.clone(), self.elements.iter().cloned().collect())
    }

    /// Lexicographically least image under coordinate permutations.
    pub fn canonical_form(&self) -> Self {
        permutations(self.r)
            .into_iter()
            .map(|p| self.permuted(&p))
            .min_by(|a, b| a.sort_key().cmp(&b.sort_key()))
            .expect("at least the identity")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Coordinate permutations fixing `S*`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        permutations(self.r)
            .into_iter()
            .filter(|p| self.permuted(p) == *self)
            .collect()
    }

    pub fn to_json(&self) -> ValueTruncationJson {
        ValueTruncationJson {
            r: self.r,
            conductor: self.conductor.clone(),
            elements: self.elements.iter().cloned().collect(),
        }
    }
}

impl fmt::Display for ValueTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = |p: &Point| {
            if p.iter().all(|&x| x == 0) {
                "0".to_string()
            } else {
                format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            }
        };
        let parts: Vec<String> = self.elements.iter().map(pt).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Wire form; elements are emitted in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueTruncationJson {
    pub r: usize,
    pub conductor: Point,
    pub elements: Vec<Point>,
}

impl TryFrom<ValueTruncationJson> for ValueTruncation {
    type Error = ValueSemigroupError;
    fn try_from(v: ValueTruncationJson) -> Result<Self, Self::Error> {
        ValueTruncation::new(v.r, v.conductor, v.elements)
    }
}

impl Serialize for ValueTruncation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ValueTruncation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ValueTruncationJson::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Conductor,
    Addition,
    Sm1,
    Sm2,
    Locality,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Conductor => "conductor",
            Axiom::Addition => "addition",
            Axiom::Sm1 => "SM1",
            Axiom::Sm2 => "SM2",
            Axiom::Locality => "locality",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    Point(Point),
    Pair(Point, Point),
    /// A pair agreeing in coordinate `index` with no admissible `γ`.
    PairAt { a: Point, b: Point, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Is there `γ ∈ S*` with `γ_i > a_i`, `γ_j = min(a_j, b_j)` where `a_j ≠ b_j`
/// and `γ_j ≥ a_j` where `a_j = b_j`?
pub(crate) fn has_sm2_witness<'a>(
    members: impl IntoIterator<Item = &'a Point>,
    a: &[u32],
    b: &[u32],
    i: usize,
) -> bool {
    members.into_iter().any(|g| {
        (0..a.len()).all(|j| {
            if j == i {
                g[j] > a[j]
            } else if a[j] != b[j] {
                g[j] == a[j].min(b[j])
            } else {
                g[j] >= a[j]
            }
        })
    })
}

pub fn validate(t: &ValueTruncation) -> ValidationReport {
    let elems: Vec<&Point> = t.elements.iter().collect();
    let c = &t.conductor;
    let mk = |axiom, witness: Option<Witness>| AxiomCheck {
        axiom,
        passed: witness.is_none(),
        witness,
    };

    let conductor = (0..t.r)
        .filter(|&i| c[i] > 0)
        .map(|i| {
            let mut p = c.clone();
            p[i] -= 1;
            p
        })
        .find(|p| t.elements.contains(p))
        .map(Witness::Point);

    let mut addition = None;
    let mut sm1 = None;
    let mut sm2 = None;
    'outer: for (x, a) in elems.iter().enumerate() {
        for b in &elems[x..] {
            if addition.is_none() {
                let s: Point = a.iter().zip(b.iter()).map(|(p, q)| p + q).collect();
                if !t.contains(&s) {
                    addition = Some(Witness::Pair((*a).clone(), (*b).clone()));
                }
            }
            if sm1.is_none() {
                let m: Point = a.iter().zip(b.iter()).map(|(p, q)| *p.min(q)).collect();
                if !t.elements.contains(&m) {
                    sm1 = Some(Witness::Pair((*a).clone(), (*b).clone()));
                }
            }
            if sm2.is_none() && a != b {
                for i in 0..t.r {
                    if a[i] == b[i] && a[i] < c[i] && !has_sm2_witness(elems.iter().copied(), a, b, i) {
                        sm2 = Some(Witness::PairAt {
                            a: (*a).clone(),
                            b: (*b).clone(),
                            index: i,
                        });
                        break;
                    }
                }
            }
            if addition.is_some() && sm1.is_some() && sm2.is_some() {
                break 'outer;
            }
        }
    }

    let locality = elems
        .iter()
        .find(|e| e.contains(&0) && e.iter().any(|&x| x > 0))
        .map(|e| Witness::Point((*e).clone()));

    ValidationReport {
        checks: vec![
            mk(Axiom::Conductor, conductor),
            mk(Axiom::Addition, addition),
            mk(Axiom::Sm1, sm1),
            mk(Axiom::Sm2, sm2),
            mk(Axiom::Locality, locality),
        ],
    }
}
