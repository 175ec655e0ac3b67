//! Univariate integer polynomials (Poincaré and chromatic polynomials).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Polynomial with arbitrary-precision integer coefficients, index = degree.
///
/// Stored without trailing zeros; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let mut p = Self { coefficients };
        p.trim();
        p
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `c0 + c1 T`
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_i64s(&[c0, c1])
    }

    pub fn monomial(coefficient: BigInt, degree: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[degree] = coefficient;
        Self::new(c)
    }

    /// `∏ (1 + d T)` over the given exponents.
    pub fn exponent_product(exponents: &[usize]) -> Self {
        exponents
            .iter()
            .fold(Self::one(), |acc, &d| &acc * &Self::linear(1, d as i64))
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Coefficient of `T^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coefficients.iter().take(max_degree + 1).cloned().collect())
    }

    /// Evaluate at an integer.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n).all(|k| self.coeff(k) >= other.coeff(k))
    }

    /// Coefficients as machine integers (panics on overflow; only used for small reports).
    pub fn to_i64s(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Serialize a big integer as a JSON number when it fits, as a string otherwise.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_exponents() {
        let p = IntPolynomial::exponent_product(&[1, 2, 3]);
        assert_eq!(p, IntPolynomial::from_i64s(&[1, 6, 11, 6]));
        assert_eq!(IntPolynomial::exponent_product(&[]), IntPolynomial::one());
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = IntPolynomial::from_i64s(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert!(IntPolynomial::from_i64s(&[0, 0]).is_zero());
        let q = &IntPolynomial::linear(1, 1) - &IntPolynomial::linear(1, 1);
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64s(&[1, -3, 0, 2]).to_string(), "1 - 3T + 2T^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn dominance_and_binomials() {
        let a = IntPolynomial::from_i64s(&[1, 4, 6, 4, 1]);
        let b = IntPolynomial::from_i64s(&[1, 4, 6, 3]);
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
        assert_eq!(binomial(9, 2), BigInt::from(36));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
