//! Exact linear algebra over the rationals and other exact fields.
//!
//! Everything here is fraction-exact: ranks are computed by Gaussian
//! elimination without any tolerance.

use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field usable by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Rank of a dense matrix given as rows. Consumes the rows.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = F::one() / rows[r][col].clone();
        for j in col..ncols {
            rows[r][j] = rows[r][j].clone() * inv.clone();
        }
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..ncols {
                let sub = factor.clone() * rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - sub;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of a set of rational vectors.
pub fn rational_rank(vectors: &[&[BigRational]]) -> usize {
    rank(vectors.iter().map(|v| v.to_vec()).collect())
}

/// Incremental row echelon form for sparse rows.
///
/// Rows are inserted one at a time; each is reduced against the stored
/// pivots and kept if a nonzero remainder survives. Pivot rows are
/// normalized to have leading coefficient one.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, BigRational)>) -> bool {
        let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, v) in entries {
            if !v.is_zero() {
                let e = row.entry(c).or_insert_with(BigRational::zero);
                *e += v;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
        }
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = lead_val.clone();
                    for (c, v) in pivot {
                        let e = row.entry(*c).or_insert_with(BigRational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / lead_val.clone();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_determinant(matrix: &[Vec<i64>]) -> Result<BigInt> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * m[n - 1][n - 1].clone())
}

/// True if the integer matrix is invertible over the integers.
pub fn is_unimodular(matrix: &[Vec<i64>]) -> Result<bool> {
    Ok(integer_determinant(matrix)?.abs().is_one())
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(-1)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ];
        assert_eq!(rank(m), 3);
        let m = vec![vec![rat(1), rat(-1), rat(0)], vec![rat(0), rat(1), rat(-1)], vec![rat(1), rat(0), rat(-1)]];
        assert_eq!(rank(m), 2);
        assert_eq!(rank::<BigRational>(vec![]), 0);
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let rows = vec![
            vec![(0, rat(1)), (2, rat(2))],
            vec![(1, rat(1)), (2, rat(1))],
            vec![(0, rat(2)), (1, rat(1)), (2, rat(5))],
            vec![(2, ratio(1, 3))],
        ];
        let mut e = SparseEchelon::new();
        let added: Vec<bool> = rows.iter().map(|r| e.insert(r.clone())).collect();
        assert_eq!(added, vec![true, true, false, true]);
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn determinants() {
        assert_eq!(integer_determinant(&[vec![2, 1], vec![1, 1]]).unwrap(), BigInt::one());
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]).unwrap(), -BigInt::one());
        assert_eq!(
            integer_determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(),
            BigInt::from(-3)
        );
        assert!(!is_unimodular(&[vec![2, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
