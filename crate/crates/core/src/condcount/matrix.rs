//! Coefficient matrices of node and cusp conditions on a degree-`d` map.
//!
//! Column `j` (0 ≤ j ≤ d) holds the coefficient `a_{i,j}` of `t^{d−j} u^j`,
//! so evaluation at `(x:1)` is the row `[x^d, …, x, 1]`.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CondCountError;
use crate::gapseries::poly::{rat, Polynomial, Symbol};
use crate::linalg::{random_rational, PolyMatrix, RationalMatrix};

/// Where a simple cusp's preimage sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CuspAt {
    Infinity,
    Finite(BigRational),
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

fn value_row(x: &BigRational, d: u32) -> Vec<BigRational> {
    (0..=d).map(|j| pow(x, d - j)).collect()
}

/// Derivative in `t` of the value row.
fn derivative_row(x: &BigRational, d: u32) -> Vec<BigRational> {
    (0..=d)
        .map(|j| {
            let e = d - j;
            if e == 0 {
                BigRational::zero()
            } else {
                rat(i64::from(e)) * pow(x, e - 1)
            }
        })
        .collect()
}

fn unit_row(k: usize, d: u32) -> Vec<BigRational> {
    (0..=d as usize)
        .map(|j| if j == k { BigRational::one() } else { BigRational::zero() })
        .collect()
}

fn check_distinct(points: &[&BigRational]) -> Result<(), CondCountError> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert((*p).clone()) {
            return Err(CondCountError::DegenerateInput(format!("repeated parameter {p}")));
        }
    }
    Ok(())
}

/// Rows `[x^d, …, 1]` for each node preimage, plus `[1, 0, …, 0]` when a
/// preimage sits at infinity.
pub fn node_condition_matrix(points: &[BigRational], d: u32, infinity: bool) -> Result<RationalMatrix, CondCountError> {
    check_distinct(&points.iter().collect::<Vec<_>>())?;
    let mut rows: Vec<Vec<BigRational>> = points.iter().map(|x| value_row(x, d)).collect();
    if infinity {
        rows.push(unit_row(0, d));
    }
    Ok(RationalMatrix::from_rows(rows))
}

/// Condition matrix for simple cusps and simple nodes, one coordinate at a
/// time: a cusp at infinity kills `a_{i,1}`; a finite cusp at `p` is the
/// derivative row at `p`; a node `(x, y)` contributes both value rows.
pub fn mixed_cusp_matrix(cusps: &[CuspAt], nodes: &[(BigRational, BigRational)], d: u32) -> Result<RationalMatrix, CondCountError> {
    let mut params: Vec<&BigRational> = cusps
        .iter()
        .filter_map(|c| match c {
            CuspAt::Finite(p) => Some(p),
            CuspAt::Infinity => None,
        })
        .collect();
    params.extend(nodes.iter().flat_map(|(x, y)| [x, y]));
    check_distinct(&params)?;
    if cusps.iter().filter(|c| **c == CuspAt::Infinity).count() > 1 {
        return Err(CondCountError::DegenerateInput("two cusps at infinity".into()));
    }
    let mut rows = Vec::new();
    for c in cusps {
        rows.push(match c {
            CuspAt::Infinity => unit_row(1, d),
            CuspAt::Finite(p) => derivative_row(p, d),
        });
    }
    for (x, y) in nodes {
        rows.push(value_row(x, d));
        rows.push(value_row(y, d));
    }
    Ok(RationalMatrix::from_rows(rows))
}

/// The three-cusp, one-node matrix: cusps at ∞, 0, 1 and a node at `(x, y)`.
pub fn three_cusps_one_node(x: &BigRational, y: &BigRational, d: u32) -> Result<RationalMatrix, CondCountError> {
    if [x, y].iter().any(|v| v.is_zero() || v.is_one()) {
        return Err(CondCountError::DegenerateInput("node preimages must avoid 0 and 1".into()));
    }
    mixed_cusp_matrix(
        &[CuspAt::Infinity, CuspAt::Finite(rat(0)), CuspAt::Finite(rat(1))],
        &[(x.clone(), y.clone())],
        d,
    )
}

fn xy() -> (Polynomial, Polynomial) {
    (Polynomial::var("x"), Polynomial::var("y"))
}

/// The same matrix with `x`, `y` symbolic.
pub fn three_cusps_one_node_symbolic(d: u32) -> PolyMatrix {
    let (x, y) = xy();
    let unit = |k: u32| (0..=d).map(|j| if j == k { Polynomial::one() } else { Polynomial::zero() }).collect();
    let values = |v: &Polynomial| (0..=d).map(|j| v.pow(d - j)).collect();
    PolyMatrix::new(vec![
        unit(1),
        unit(d - 1),
        (0..=d).map(|j| Polynomial::int(i64::from(d - j))).collect(),
        values(&x),
        values(&y),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCuspMatrices {
    pub a1: PolyMatrix,
    pub a2: PolyMatrix,
}

/// `A₁` and `A₂`: rows 3–5 of the three-cusp matrix on the columns with
/// `d − j ∈ {3,2,1}` and `{4,3,2}`.
pub fn designated_minors(d: u32) -> MixedCuspMatrices {
    let a = three_cusps_one_node_symbolic(d);
    let pick = |exps: [u32; 3]| {
        PolyMatrix::new(
            a.rows[2..5]
                .iter()
                .map(|row| exps.iter().map(|&e| row[(d - e) as usize].clone()).collect())
                .collect(),
        )
    };
    MixedCuspMatrices {
        a1: pick([3, 2, 1]),
        a2: pick([4, 3, 2]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofCertificate {
    pub checks: Vec<IdentityCheck>,
    pub verified: bool,
}

fn parse(s: &str) -> Polynomial {
    Polynomial::parse(s).expect("fixed polynomial literal")
}

/// `det A₁ = xy(x−y)B₁`, `det A₂ = x²y²(x−y)B₂` and `B₂ − B₁ = (x−1)(y−1)`:
/// a common zero with `x ≠ y`, `x, y ∉ {0, 1}` is impossible.
pub fn simultaneous_vanishing_excluded() -> ProofCertificate {
    let m = designated_minors(8);
    let (d1, d2) = (m.a1.det(), m.a2.det());
    let b1 = parse("(x-1)*(y-1)-(x-1)-(y-1)");
    let b2 = parse("2*(x-1)*(y-1)-(x-1)-(y-1)");
    let mut checks = vec![
        IdentityCheck {
            statement: "det A1 = x*y*(x-y)*((x-1)*(y-1)-(x-1)-(y-1))".into(),
            holds: d1 == &parse("x*y*(x-y)") * &b1,
        },
        IdentityCheck {
            statement: "det A2 = x^2*y^2*(x-y)*(2*(x-1)*(y-1)-(x-1)-(y-1))".into(),
            holds: d2 == &parse("x^2*y^2*(x-y)") * &b2,
        },
        IdentityCheck {
            statement: "B2 - B1 = (x-1)*(y-1)".into(),
            holds: &b2 - &b1 == parse("(x-1)*(y-1)"),
        },
    ];
    let env = |x: i64, y: i64| HashMap::from([(Symbol::var("x"), rat(x)), (Symbol::var("y"), rat(y))]);
    let at = |p: &Polynomial, x, y| p.eval(&env(x, y)).expect("closed polynomial");
    checks.push(IdentityCheck {
        statement: "at (2,3): det A1 or det A2 is nonzero".into(),
        holds: !at(&d1, 2, 3).is_zero() || !at(&d2, 2, 3).is_zero(),
    });
    checks.push(IdentityCheck {
        statement: "on x = y both determinants vanish".into(),
        holds: at(&d1, 5, 5).is_zero() && at(&d2, 5, 5).is_zero(),
    });
    let verified = checks.iter().all(|c| c.holds);
    ProofCertificate { checks, verified }
}

/// A `5×5` minor of the three-cusp matrix on columns `{1, d−1}` and the
/// columns of `A₂`, as a polynomial. Needs `d ≥ 6`.
pub fn five_by_five_minor(d: u32) -> Polynomial {
    assert!(d >= 6, "columns of A2 collide with the cusp columns below d = 6");
    let a = three_cusps_one_node_symbolic(d);
    let cols = [1, (d - 4) as usize, (d - 3) as usize, (d - 2) as usize, (d - 1) as usize];
    PolyMatrix::new(a.rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect()).det()
}

/// One genus-2 tacnode with branches at `x`, `y` and a `⟨3,4,5⟩` cusp at
/// infinity: value and derivative rows at `x`, `y`, and `a_{i,1} = a_{i,2} = 0`.
pub fn two_two_matrix(x: &BigRational, y: &BigRational, d: u32) -> Result<RationalMatrix, CondCountError> {
    check_distinct(&[x, y])?;
    Ok(RationalMatrix::from_rows(vec![
        value_row(x, d),
        value_row(y, d),
        derivative_row(x, d),
        derivative_row(y, d),
        unit_row(1, d),
        unit_row(2, d),
    ]))
}

/// Rank of the Jacobian of all `3×3` minors of an `n×3` matrix at a random
/// point of the rank-2 locus, i.e. the codimension of that locus.
pub fn determinantal_codimension(n: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<Vec<Symbol>> = (0..n)
        .map(|i| (0..3).map(|k| Symbol::var(&format!("m{i}_{k}"))).collect())
        .collect();
    // A rank-2 point: third column a combination of the first two.
    let (s, t) = (random_rational(&mut rng, 9), random_rational(&mut rng, 9));
    let mut env = HashMap::new();
    for row in &vars {
        let (u, v) = (random_rational(&mut rng, 9), random_rational(&mut rng, 9));
        env.insert(row[0].clone(), u.clone());
        env.insert(row[1].clone(), v.clone());
        env.insert(row[2].clone(), &s * u + &t * v);
    }
    let mut jac = RationalMatrix::zeros(0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let m = PolyMatrix::new(
                    [a, b, c]
                        .iter()
                        .map(|&i| vars[i].iter().map(|s| Polynomial::symbol(s.clone())).collect())
                        .collect(),
                );
                let det = m.det();
                let grad = vars
                    .iter()
                    .flatten()
                    .map(|v| det.derivative(v).eval(&env).expect("all entries assigned"))
                    .collect();
                jac.push_row(grad);
            }
        }
    }
    if jac.nrows() == 0 {
        0
    } else {
        jac.rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSweep {
    pub samples: usize,
    pub three_cusp_rank5: usize,
    pub two_two_full: usize,
    pub failures: Vec<String>,
}

fn generic_pair<R: Rng>(rng: &mut R) -> (BigRational, BigRational) {
    loop {
        let (x, y) = (random_rational(rng, 1 << 20), random_rational(rng, 1 << 20));
        if x != y && ![&x, &y].iter().any(|v| v.is_zero() || v.is_one()) {
            return (x, y);
        }
    }
}

/// Seeded random rational points; each failed check is retried at three
/// fresh points before it counts as a failure.
pub fn rank_sweep(samples: usize, d: u32, seed: u64) -> RankSweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RankSweep {
        samples,
        three_cusp_rank5: 0,
        two_two_full: 0,
        failures: Vec::new(),
    };
    for k in 0..samples {
        let ok_a = (0..4).any(|_| {
            let (x, y) = generic_pair(&mut rng);
            three_cusps_one_node(&x, &y, d).is_ok_and(|m| m.rank() == 5)
        });
        let ok_b = (0..4).any(|_| {
            let (x, y) = generic_pair(&mut rng);
            two_two_matrix(&x, &y, d).is_ok_and(|m| m.rank() == 6)
        });
        out.three_cusp_rank5 += usize::from(ok_a);
        out.two_two_full += usize::from(ok_b);
        if !ok_a {
            out.failures.push(format!("sample {k}: three-cusp matrix rank < 5"));
        }
        if !ok_b {
            out.failures.push(format!("sample {k}: (2,2) matrix rank < 6"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_rows() {
        let m = node_condition_matrix(&[rat(2), rat(3)], 4, false).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.row(0)[0], rat(16));
        let pts: Vec<BigRational> = (2..10).map(rat).collect();
        assert_eq!(node_condition_matrix(&pts, 7, false).unwrap().rank(), 8);
        let pts: Vec<BigRational> = (2..9).map(rat).collect();
        assert_eq!(node_condition_matrix(&pts, 7, true).unwrap().rank(), 8);
        assert!(node_condition_matrix(&[rat(2), rat(2)], 4, false).is_err());
    }

    #[test]
    fn three_cusp_rows() {
        let a = three_cusps_one_node(&rat(2), &rat(3), 6).unwrap();
        assert_eq!(a.row(0)[1], rat(1));
        assert_eq!(a.row(1)[5], rat(1));
        assert_eq!(a.row(2)[0], rat(6));
        assert_eq!(a.rank(), 5);
        assert!(three_cusps_one_node(&rat(1), &rat(3), 6).is_err());
    }

    #[test]
    fn certificate() {
        let c = simultaneous_vanishing_excluded();
        assert!(c.verified, "{c:?}");
    }

    #[test]
    fn minor_is_a2_up_to_sign() {
        let a2 = designated_minors(7).a2.det();
        assert!(five_by_five_minor(7).eq_up_to_sign(&a2));
    }

    #[test]
    fn codimension_of_rank_two_locus() {
        for n in 3..=5 {
            assert_eq!(determinantal_codimension(n, 11), n - 2);
        }
    }

    #[test]
    fn small_sweep() {
        let s = rank_sweep(5, 8, 1);
        assert_eq!((s.three_cusp_rank5, s.two_two_full), (5, 5));
    }
}
