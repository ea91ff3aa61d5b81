//! Coefficient conditions forced by the gaps of a semigroup.
//!
//! Local sections are modelled as `f_j = t^{m_j} + Σ_k c_{j,k} t^{m_j+k}` with
//! symbolic `c_{j,k}`. Whenever a polynomial expression in the `f_j` has
//! leading exponent `ρ` and `ρ` is a gap, the leading coefficient must vanish.

pub mod cases;
pub mod poly;
pub mod series;

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{random_rational, RationalMatrix};
use crate::numsgp::NumericalSemigroup;
pub use poly::{Monomial, Polynomial, Symbol};
pub use series::{SeriesError, SymbolicSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapSeriesError {
    #[error("truncation order {order} does not exceed the leading exponent {lead}")]
    OrderTooSmall { order: u32, lead: u32 },
    #[error("{0} is not a gap")]
    NotAGap(u32),
    #[error("coefficient of t^{0} does not vanish")]
    LowerTermsNonzero(u32),
    #[error("{witness} cannot be solved for in {condition}")]
    NotSolvable { witness: Symbol, condition: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `t^{m_j} + Σ_{k=1..depth} c_{j,k} t^{m_j+k} + O(t^order)`.
///
/// Depth 1, 2, 3 give the familiar `α_j`, `(α_j, β_j)`, `(α_j, β_j, γ_j)`;
/// larger depths continue with `c_{j,k}`.
pub fn section_template(
    s: &NumericalSemigroup,
    j: u32,
    depth: u32,
    order: u32,
) -> Result<SymbolicSeries, GapSeriesError> {
    let lead = s.nth_element(j);
    if order <= lead {
        return Err(GapSeriesError::OrderTooSmall { order, lead });
    }
    let mut terms = vec![(lead, Polynomial::one())];
    for k in 1..=depth {
        terms.push((lead + k, Polynomial::symbol(Symbol::coef(k, j))));
    }
    Ok(SymbolicSeries::from_coeffs(order, terms))
}

/// Previously imposed conditions, each solved for a witness symbol.
///
/// Rules are kept fully reduced: no rule's right-hand side mentions any
/// witness, so reduction is a single substitution pass.
#[derive(Debug, Clone, Default)]
pub struct ConditionContext {
    rules: BTreeMap<Symbol, Polynomial>,
}

impl ConditionContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.rules
            .iter()
            .fold(p.clone(), |acc, (s, v)| acc.substitute(s, v))
    }

    /// Impose `condition = 0`, solved for `witness`.
    pub fn impose(&mut self, condition: &Polynomial, witness: &Symbol) -> Result<(), GapSeriesError> {
        let reduced = self.reduce(condition);
        let not_solvable = || GapSeriesError::NotSolvable {
            witness: witness.clone(),
            condition: condition.to_string(),
        };
        let (a, b) = reduced.linear_in(witness).ok_or_else(not_solvable)?;
        let a = a.as_constant().filter(|a| !a.is_zero()).ok_or_else(not_solvable)?;
        let value = b.scale(&(-a.recip()));
        for v in self.rules.values_mut() {
            *v = v.substitute(witness, &value);
        }
        self.rules.insert(witness.clone(), value);
        Ok(())
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Symbol> {
        self.rules.keys()
    }
}

/// The polynomial forced to vanish by the gap `rho`: `[t^rho] expr`, after
/// checking that every lower coefficient vanishes modulo `ctx`.
pub fn gap_condition_in(
    s: &NumericalSemigroup,
    expr: &SymbolicSeries,
    rho: u32,
    ctx: &ConditionContext,
) -> Result<Polynomial, GapSeriesError> {
    if s.contains(rho) {
        return Err(GapSeriesError::NotAGap(rho));
    }
    let c = expr.coefficient(rho)?;
    for (k, coeff) in expr.terms() {
        if k >= rho {
            break;
        }
        if !ctx.reduce(coeff).is_zero() {
            return Err(GapSeriesError::LowerTermsNonzero(k));
        }
    }
    Ok(c)
}

/// [`gap_condition_in`] with no prior conditions.
pub fn gap_condition(
    s: &NumericalSemigroup,
    expr: &SymbolicSeries,
    rho: u32,
) -> Result<Polynomial, GapSeriesError> {
    gap_condition_in(s, expr, rho, &ConditionContext::new())
}

pub fn eliminate(expr: &SymbolicSeries, k: u32, corrector: &SymbolicSeries) -> Result<SymbolicSeries, GapSeriesError> {
    Ok(expr.eliminate(k, corrector)?)
}

/// Certificate that a set of conditions is independent: the Jacobian with
/// respect to the witness symbols has full rank at a random rational point.
#[derive(Debug, Clone)]
pub struct IndependenceCertificate {
    pub witnesses: Vec<Symbol>,
    pub rank: usize,
    pub independent: bool,
    /// For each witness, the indices of the conditions it occurs in.
    pub occurrences: Vec<Vec<usize>>,
}

pub fn independence_certificate(conditions: &[Polynomial], witnesses: &[Symbol], seed: u64) -> IndependenceCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols: Vec<Symbol> = conditions
        .iter()
        .flat_map(|c| c.symbols())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let jac: Vec<Vec<Polynomial>> = conditions
        .iter()
        .map(|c| witnesses.iter().map(|w| c.derivative(w)).collect())
        .collect();
    let occurrences = witnesses
        .iter()
        .map(|w| (0..conditions.len()).filter(|&i| conditions[i].contains(w)).collect())
        .collect();
    let target = conditions.len().min(witnesses.len());
    let mut rank = 0;
    // A rank drop at a random point is retried at fresh points before it counts.
    for _ in 0..4 {
        let env: HashMap<Symbol, BigRational> = symbols
            .iter()
            .map(|s| (s.clone(), random_rational(&mut rng, 1 << 20)))
            .collect();
        let m = RationalMatrix::from_rows(
            jac.iter()
                .map(|row| row.iter().map(|p| p.eval(&env).expect("all symbols bound")).collect())
                .collect(),
        );
        rank = rank.max(m.rank());
        if rank == target {
            break;
        }
    }
    IndependenceCertificate {
        witnesses: witnesses.to_vec(),
        rank,
        independent: rank == conditions.len() && rank == target,
        occurrences,
    }
}
