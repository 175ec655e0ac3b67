//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! These model entries of boundary and presentation matrices over the group
//! ring of a (partially) abelian group. Exponent vectors may be negative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::serialize_bigint;

/// An exact point coordinate: a Gaussian rational `a + b i`.
pub type GaussianRational = Complex<BigRational>;

/// Laurent polynomial in a fixed number of commuting variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

/// One term in the sparse serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct TermRecord {
    pub exps: Vec<i32>,
    #[serde(serialize_with = "serialize_bigint")]
    pub coeff: BigInt,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn term(nvars: usize, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(exps, c.into());
        p
    }

    /// The monomial `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::term(nvars, exps, 1)
    }

    /// `x_i^{-1} - 1`, the boundary entry of a one-cell in the right-module convention.
    pub fn inv_minus_one(nvars: usize, i: usize) -> Self {
        &Self::var_pow(nvars, i, -1) - &Self::one(nvars)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    /// Re-expresses the polynomial in `total` variables, placing its own
    /// variables at `offset..offset + nvars`.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= total, "embedding out of range");
        Self::from_terms(
            total,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0; total];
                v[offset..offset + self.nvars].copy_from_slice(e);
                (v, c.clone())
            }),
        )
    }

    /// Image under the augmentation `x_i ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    /// The involution `x_i ↦ x_i^{-1}` on every variable.
    pub fn invert_variables(&self) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())),
        )
    }

    /// Substitutes `x_i ↦ ∏_j x_j^{phi[i][j]}`.
    pub fn substitute_monomial(&self, phi: &[Vec<i64>]) -> Self {
        let n = self.nvars;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut out = vec![0i64; n];
            for (i, &ei) in e.iter().enumerate() {
                for j in 0..n {
                    out[j] += ei as i64 * phi[i][j];
                }
            }
            (out.into_iter().map(|x| x as i32).collect::<Vec<_>>(), c.clone())
        });
        Self::from_terms(n, terms)
    }

    /// Normal form up to multiplication by a unit `± x^a`: the smallest
    /// exponent of each variable is shifted to zero and the leading
    /// coefficient made positive.
    pub fn unit_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins: Vec<i32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect();
        let mut p = Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&mins).map(|(a, m)| a - m).collect(), c.clone())),
        );
        if p.terms.values().next_back().is_some_and(Signed::is_negative) {
            p = -&p;
        }
        p
    }

    /// Evaluates at a point of the torus. Every coordinate must be nonzero.
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut m = GaussianRational::new(BigRational::from_integer(c.clone()), BigRational::zero());
            for (t, &k) in point.iter().zip(e) {
                if k != 0 {
                    m = m * gaussian_pow(t, k);
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Sparse record form for JSON output.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord { exps: e.clone(), coeff: c.clone() })
            .collect()
    }

    /// Human-readable rendering with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Constant term last, so entries read like `x - 1`.
        let mut ordered: Vec<(&Vec<i32>, &BigInt)> = self.terms.iter().rev().collect();
        ordered.sort_by_key(|(e, _)| e.iter().all(|&x| x == 0));
        for (k, (e, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// `t^k` for nonzero `t` and any integer `k`.
pub fn gaussian_pow(t: &GaussianRational, k: i32) -> GaussianRational {
    let base = if k < 0 { GaussianRational::one() / t.clone() } else { t.clone() };
    let mut e = k.unsigned_abs();
    let mut result = GaussianRational::one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    result
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}
