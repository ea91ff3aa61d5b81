//! Truncated power series in `t` with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exponent {k} is not below the truncation order {order}")]
    OutOfRange { k: u32, order: u32 },
    #[error("corrector has valuation {found}, expected {expected}")]
    ValuationMismatch { expected: u32, found: u32 },
}

/// `Σ_{k < order} c_k t^k + O(t^order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSeries {
    order: u32,
    coeffs: BTreeMap<u32, Polynomial>,
}

impl SymbolicSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// `t^k + O(t^order)`.
    pub fn monomial(k: u32, c: Polynomial, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.set(k, c);
        s
    }

    pub fn from_coeffs(order: u32, coeffs: impl IntoIterator<Item = (u32, Polynomial)>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs {
            let prev = s.coefficient_or_zero(k);
            s.set(k, prev + c);
        }
        s
    }

    fn set(&mut self, k: u32, c: Polynomial) {
        if k >= self.order || c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn truncation_order(&self) -> u32 {
        self.order
    }

    /// Least exponent with a nonzero coefficient, or the truncation order.
    pub fn valuation(&self) -> u32 {
        self.coeffs.keys().next().copied().unwrap_or(self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> Result<Polynomial, SeriesError> {
        if k >= self.order {
            return Err(SeriesError::OutOfRange { k, order: self.order });
        }
        Ok(self.coefficient_or_zero(k))
    }

    fn coefficient_or_zero(&self, k: u32) -> Polynomial {
        self.coeffs.get(&k).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self::from_coeffs(order, self.coeffs.iter().map(|(k, c)| (*k, c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (k, c) in &other.coeffs {
            let prev = out.coefficient_or_zero(*k);
            out.set(*k, prev + c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Polynomial::constant(-BigRational::one()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a polynomial (no change in order).
    pub fn scale(&self, c: &Polynomial) -> Self {
        Self::from_coeffs(self.order, self.coeffs.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        self.scale(&Polynomial::constant(c.clone()))
    }

    /// Product; known to order `min(ord_a + val_b, ord_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut acc: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i + j < order {
                    let e = acc.entry(i + j).or_default();
                    *e = std::mem::take(e) + a * b;
                }
            }
        }
        Self::from_coeffs(order, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "use an explicit unit series for e = 0");
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    /// `self − ([t^k] self) · corrector`, where `corrector` must lead with
    /// `t^k` and unit coefficient.
    pub fn eliminate(&self, k: u32, corrector: &Self) -> Result<Self, SeriesError> {
        let found = corrector.valuation();
        if found != k {
            return Err(SeriesError::ValuationMismatch { expected: k, found });
        }
        let lead = corrector.coefficient_or_zero(k);
        let ck = self.coefficient(k)?;
        // Divide out a constant leading coefficient so [t^k] really cancels.
        let factor = match lead.as_constant() {
            Some(l) if !l.is_zero() => ck.scale(&l.recip()),
            _ => return Err(SeriesError::ValuationMismatch { expected: k, found }),
        };
        Ok(self.sub(&corrector.scale(&factor)))
    }
}

impl fmt::Display for SymbolicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.coeffs {
            let c = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            write!(f, "{c}*t^{k} + ")?;
        }
        write!(f, "O(t^{})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapseries::poly::rat;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn product_order() {
        // (t^3 + a t^4 + O(t^5))^2 = t^6 + 2a t^7 + O(t^8)
        let f = SymbolicSeries::from_coeffs(5, [(3, Polynomial::one()), (4, p("a1"))]);
        let sq = f.mul(&f);
        assert_eq!(sq.truncation_order(), 8);
        assert_eq!(sq.coefficient(7).unwrap(), p("2*a1"));
        assert!(sq.coefficient(8).is_err());
    }

    #[test]
    fn zero_absorbs() {
        let f = SymbolicSeries::from_coeffs(5, [(1, p("x"))]);
        assert!(f.scale(&Polynomial::zero()).is_zero());
        assert!(f.scale_rat(&rat(0)).is_zero());
    }

    #[test]
    fn eliminate_self() {
        let f = SymbolicSeries::from_coeffs(6, [(2, Polynomial::one()), (3, p("a1")), (5, p("b"))]);
        let e = f.eliminate(2, &f).unwrap();
        assert!(e.is_zero());
        let g = SymbolicSeries::from_coeffs(6, [(3, Polynomial::one())]);
        assert_eq!(
            f.eliminate(2, &g).unwrap_err(),
            SeriesError::ValuationMismatch { expected: 2, found: 3 }
        );
    }

    #[test]
    fn display() {
        let f = SymbolicSeries::from_coeffs(5, [(3, Polynomial::one()), (4, p("a1"))]);
        assert_eq!(f.to_string(), "1*t^3 + a1*t^4 + O(t^5)");
    }
}
