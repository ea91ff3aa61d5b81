//! Exact linear algebra over the rationals and over polynomial rings.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::gapseries::poly::{Polynomial, Symbol};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_rows(
            (0..self.rows)
                .map(|i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    /// Rows scaled to integers, plus the product of the scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    /// Fraction-free (Bareiss) elimination; returns the rank and, for square
    /// input, the determinant of the integer-scaled matrix.
    fn bareiss(&self) -> (usize, BigInt) {
        let (mut m, _) = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            if p != rank {
                m.swap(p, rank);
                sign = -sign;
            }
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        let det = if rank == rows && rows == cols {
            if rows == 0 {
                BigInt::one()
            } else {
                sign * &m[rows - 1][cols - 1]
            }
        } else {
            BigInt::zero()
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (_, d) = self.bareiss();
        let (_, scale) = self.integer_rows();
        BigRational::new(d, scale)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Square matrix of polynomials; determinants by cofactor expansion, which is
/// fine at the sizes used here (≤ 6).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<Polynomial>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows }
    }

    pub fn det(&self) -> Polynomial {
        let n = self.rows.len();
        assert!(self.rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
        let cols: Vec<usize> = (0..n).collect();
        let mut memo = HashMap::new();
        self.minor(0, &cols, &mut memo)
    }

    fn minor(&self, row: usize, cols: &[usize], memo: &mut HashMap<Vec<usize>, Polynomial>) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        for (k, &c) in cols.iter().enumerate() {
            let entry = &self.rows[row][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.minor(row + 1, &rest, memo);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        memo.insert(cols.to_vec(), acc.clone());
        acc
    }

    pub fn eval(&self, env: &HashMap<Symbol, BigRational>) -> Option<RationalMatrix> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut out = Vec::with_capacity(r.len());
            for p in r {
                out.push(p.eval(env)?);
            }
            rows.push(out);
        }
        Some(RationalMatrix::from_rows(rows))
    }
}

/// Random rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigRational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    BigRational::new(p.into(), q.into())
}

/// `(Π_{i<j} (x_j − x_i))` evaluated exactly.
pub fn vandermonde_product(nodes: &[BigRational]) -> BigRational {
    let mut out = BigRational::one();
    for j in 0..nodes.len() {
        for i in 0..j {
            out *= &nodes[j] - &nodes[i];
        }
    }
    out
}

pub fn abs_eq(a: &BigRational, b: &BigRational) -> bool {
    a.abs() == b.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapseries::poly::rat;

    #[test]
    fn rank_and_det() {
        let m = RationalMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), rat(0));
        let m = RationalMatrix::from_i64(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(m.det(), rat(6));
        let m = RationalMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), rat(-1));
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RationalMatrix::from_rows(vec![vec![half.clone(), rat(1)], vec![rat(1), half]]);
        assert_eq!(m.det(), BigRational::new((-3).into(), 4.into()));
    }

    #[test]
    fn wide_rank() {
        let m = RationalMatrix::from_i64(&[vec![0, 0, 1, 2], vec![0, 0, 2, 4]]);
        assert_eq!(m.rank(), 1);
        assert!(!m.is_full_rank());
    }

    #[test]
    fn poly_det_matches_vandermonde() {
        let xs = ["x", "y", "z"].map(Polynomial::var);
        let rows = xs
            .iter()
            .map(|x| (0..3).map(|k| x.pow(k)).collect())
            .collect();
        let d = PolyMatrix::new(rows).det();
        let expected = Polynomial::parse("(y-x)*(z-x)*(z-y)").unwrap();
        assert_eq!(d, expected);
    }
}
