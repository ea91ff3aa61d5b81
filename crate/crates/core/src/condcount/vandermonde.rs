//! Confluent Vandermonde determinants.
//!
//! Node `x_i` with multiplicity `m_i` contributes the rows
//! `∂^k [1, t, …, t^{N−1}] |_{t = x_i}` for `0 ≤ k < m_i`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CondCountError;
use crate::gapseries::poly::{rat, Polynomial, Symbol};
use crate::linalg::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluentReport {
    pub multiplicities: Vec<usize>,
    #[serde(with = "display")]
    pub determinant: BigRational,
    /// Mixed partial of the ordinary Vandermonde product, one variable per
    /// derivative row, restricted to the nodes.
    #[serde(with = "display")]
    pub derivative_oracle: BigRational,
    /// `Π_i Π_{k<m_i} k! · Π_{i<j} (x_j − x_i)^{m_i m_j}`.
    #[serde(with = "display")]
    pub closed_form: BigRational,
    pub nonzero: bool,
    pub matches_oracle: bool,
    pub matches_closed_form: bool,
}

impl ConfluentReport {
    pub fn ok(&self) -> bool {
        self.nonzero && self.matches_oracle && self.matches_closed_form
    }
}

mod display {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
}

fn falling(p: u32, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * rat(i64::from(p - i)))
}

pub fn confluent_matrix(nodes: &[BigRational], multiplicities: &[usize]) -> Result<RationalMatrix, CondCountError> {
    if nodes.len() != multiplicities.len() {
        return Err(CondCountError::DegenerateInput(format!(
            "{} nodes but {} multiplicities",
            nodes.len(),
            multiplicities.len()
        )));
    }
    if multiplicities.contains(&0) {
        return Err(CondCountError::DegenerateInput("zero multiplicity".into()));
    }
    let n: usize = multiplicities.iter().sum();
    let mut rows = Vec::with_capacity(n);
    for (x, &m) in nodes.iter().zip(multiplicities) {
        for k in 0..m as u32 {
            rows.push(
                (0..n as u32)
                    .map(|p| {
                        if p < k {
                            BigRational::zero()
                        } else {
                            falling(p, k) * num_traits::pow(x.clone(), (p - k) as usize)
                        }
                    })
                    .collect(),
            );
        }
    }
    Ok(RationalMatrix::from_rows(rows))
}

/// A slot's value, and for derivative rows its variable, order and node.
type Slot = (Polynomial, Option<(Symbol, u32, usize)>);

/// Give every derivative row its own variable `v_{i,k}` in the product
/// `Π_{a<b} (v_b − v_a)`, differentiate `k` times in `v_{i,k}`, then put
/// `v_{i,k} = x_i`. Rows with `k = 0` are numeric from the start.
fn derivative_oracle(nodes: &[BigRational], multiplicities: &[usize]) -> BigRational {
    let mut slots: Vec<Slot> = Vec::new();
    for (i, (x, &m)) in nodes.iter().zip(multiplicities).enumerate() {
        slots.push((Polynomial::constant(x.clone()), None));
        for k in 1..m {
            let s = Symbol::var(&format!("v{i}_{k}"));
            slots.push((Polynomial::symbol(s.clone()), Some((s, k as u32, i))));
        }
    }
    let mut p = Polynomial::one();
    for b in 0..slots.len() {
        for a in 0..b {
            p = &p * &(&slots[b].0 - &slots[a].0);
        }
    }
    for (_, var) in &slots {
        if let Some((s, k, _)) = var {
            for _ in 0..*k {
                p = p.derivative(s);
            }
        }
    }
    let env: HashMap<Symbol, BigRational> = slots
        .iter()
        .filter_map(|(_, v)| v.as_ref().map(|(s, _, i)| (s.clone(), nodes[*i].clone())))
        .collect();
    p.eval(&env).expect("every slot variable is assigned")
}

fn closed_form(nodes: &[BigRational], multiplicities: &[usize]) -> BigRational {
    let mut out = BigRational::one();
    for &m in multiplicities {
        for k in 1..m as u32 {
            out *= falling(k, k);
        }
    }
    for j in 0..nodes.len() {
        for i in 0..j {
            let e = multiplicities[i] * multiplicities[j];
            out *= num_traits::pow(&nodes[j] - &nodes[i], e);
        }
    }
    out
}

/// Exact determinant of the confluent matrix, compared with the
/// differentiation oracle and the closed form.
pub fn confluent_vandermonde_check(nodes: &[BigRational], multiplicities: &[usize]) -> Result<ConfluentReport, CondCountError> {
    let m = confluent_matrix(nodes, multiplicities)?;
    let mut seen = std::collections::BTreeSet::new();
    if !nodes.iter().all(|x| seen.insert(x.clone())) {
        return Err(CondCountError::DegenerateInput("repeated node".into()));
    }
    let determinant = m.det();
    let derivative_oracle = derivative_oracle(nodes, multiplicities);
    let closed_form = closed_form(nodes, multiplicities);
    Ok(ConfluentReport {
        multiplicities: multiplicities.to_vec(),
        nonzero: !determinant.is_zero(),
        matches_oracle: determinant == derivative_oracle,
        matches_closed_form: determinant == closed_form,
        determinant,
        derivative_oracle,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn plain_vandermonde() {
        let r = confluent_vandermonde_check(&nodes(&[2, 5]), &[1, 1]).unwrap();
        assert_eq!(r.determinant, rat(3));
        assert!(r.ok());
    }

    #[test]
    fn one_double_node() {
        // rows [1,x,x²], [0,1,2x], [1,y,y²]: det = (y−x)².
        let r = confluent_vandermonde_check(&nodes(&[1, 4]), &[2, 1]).unwrap();
        assert_eq!(r.determinant, rat(9));
        assert!(r.ok());
    }

    #[test]
    fn patterns() {
        for (xs, ms) in [
            (vec![0, 1, -2, 3], vec![2, 2, 2, 2]),
            (vec![0, 1, 3, -1, 5], vec![2, 2, 1, 1, 1]),
            (vec![2, -1, 4, 7], vec![2, 2, 2, 1]),
            (vec![1, 2], vec![3, 1]),
        ] {
            let r = confluent_vandermonde_check(&nodes(&xs), &ms).unwrap();
            assert!(r.ok(), "{ms:?}: {r:?}");
        }
    }

    #[test]
    fn degenerate() {
        assert!(confluent_vandermonde_check(&nodes(&[1, 1]), &[1, 1]).is_err());
        assert!(confluent_vandermonde_check(&nodes(&[1]), &[1, 1]).is_err());
    }
}
