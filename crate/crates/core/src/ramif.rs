//! Ramification invariants attached to a numerical semigroup at a point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numsgp::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("vanishing orders must start at 0")]
    NonzeroStart,
    #[error("vanishing orders must be strictly increasing (position {0})")]
    NotIncreasing(usize),
}

/// Vanishing orders `a_0 = 0 < a_1 < ... < a_n` of sections at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    orders: Vec<u32>,
    alpha: Vec<u32>,
}

impl RamificationProfile {
    pub fn new(orders: Vec<u32>) -> Result<Self, ProfileError> {
        if orders.first().copied().unwrap_or(0) != 0 {
            return Err(ProfileError::NonzeroStart);
        }
        if let Some(i) = orders.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ProfileError::NotIncreasing(i + 1));
        }
        let alpha = orders.iter().enumerate().map(|(i, &a)| a - i as u32).collect();
        Ok(Self { orders, alpha })
    }

    /// The minimal profile compatible with `s`: `a_i = m_i`.
    pub fn minimal(s: &NumericalSemigroup, n: u32) -> Self {
        let orders = s.elements(n as usize + 1);
        Self::new(orders).expect("semigroup elements are increasing from 0")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn total(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }

    /// Componentwise `a_i ≥ b_i` on profiles of equal length.
    pub fn dominates(&self, other: &Self) -> bool {
        self.orders.len() == other.orders.len()
            && self.orders.iter().zip(&other.orders).all(|(a, b)| a >= b)
    }
}

/// `R_S` and its running sums `TR_S`, indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationSequences {
    pub r: Vec<u64>,
    pub tr: Vec<u64>,
}

/// `r_P = Σ_{i=1..n} (m_i − i)`.
pub fn r_p(s: &NumericalSemigroup, n: u32) -> u64 {
    (1..=n).map(|i| (s.nth_element(i) - i) as u64).sum()
}

/// `W^n_S = n g − r_P`, the boxes in the first `n` columns of the tableau.
pub fn partial_weight(s: &NumericalSemigroup, n: u32) -> u64 {
    n as u64 * s.genus() as u64 - r_p(s, n)
}

/// `r_P − 1 ≥ (n − 2) g`, assuming minimal vanishing orders.
#[allow(clippy::int_plus_one)]
pub fn check_unibranch_bound(s: &NumericalSemigroup, n: u32) -> bool {
    assert!(n >= 3, "the bound is stated for n ≥ 3");
    r_p(s, n) as i64 - 1 >= (n as i64 - 2) * s.genus() as i64
}

pub fn ramification_sequences(s: &NumericalSemigroup, length: usize) -> RamificationSequences {
    let r: Vec<u64> = s
        .elements(length)
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x as u64) - i as u64)
        .collect();
    let tr = r
        .iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    RamificationSequences { r, tr }
}

/// `⌊(i+1) i / (2 (i−2))⌋`.
///
/// This is the closed form; it coincides with [`least_genus_below_threshold`]
/// for `i ≤ 7`; from `i = 8` on the formula keeps growing while the least
/// genus stays at 5.
pub fn hyperelliptic_threshold(i: u32) -> u32 {
    assert!(i >= 3, "threshold is defined for i ≥ 3");
    (i + 1) * i / (2 * (i - 2))
}

/// Least `g ≥ 1` with `r̃_i ≤ (i−2) g` for the hyperelliptic semigroup of
/// genus `g`, searched directly up to `max_genus`.
pub fn least_genus_below_threshold(i: u32, max_genus: u32) -> Option<u32> {
    (1..=max_genus).find(|&g| {
        let h = NumericalSemigroup::from_generators(&[2, 2 * g + 1]).expect("coprime");
        ramification_sequences(&h, i as usize + 1).tr[i as usize] <= (i as u64 - 2) * g as u64
    })
}

/// `N_R(g) = g(g−2) + 1 − g(g+1)/2`.
#[allow(non_snake_case)]
pub fn N_R(g: u32) -> i64 {
    assert!(g >= 3, "N_R is defined for g ≥ 3");
    let g = g as i64;
    g * (g - 2) + 1 - g * (g + 1) / 2
}
