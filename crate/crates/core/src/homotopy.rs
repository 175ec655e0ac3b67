//! Order of π₁-connectivity and coinvariant ranks for hypersolvable
//! arrangements, read off from `P` and `P̄ = ∏ (1 + d_i T)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::hypersolv::{is_supersolvable, search_series, CompositionSeries, SearchConfig};
use crate::osalg::{poincare, quadratic_os_dims, DEFAULT_DEGREE_BOUND};
use crate::poly::IntPolynomial;

/// A positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
    Finite(usize),
    Infinite,
}

impl Connectivity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Connectivity::Finite(p) => Some(p),
            Connectivity::Infinite => None,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(p) => write!(f, "{p}"),
            Connectivity::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(p) => s.serialize_u64(*p as u64),
            Connectivity::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub p: Connectivity,
    pub aspherical: bool,
    /// Coefficient of `T^{p+1}` in `P̄ - P`; zero when `p` is infinite.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub c_next: BigInt,
    pub p_poly: IntPolynomial,
    pub pbar_poly: IntPolynomial,
    pub series: CompositionSeries,
    pub supersolvable: bool,
    /// Quadratic OS dimensions from linear algebra, through the degree bound.
    pub pbar_linear_algebra: Vec<usize>,
    /// True when the linear-algebra dimensions match the exponent product
    /// and the supersolvability verdict matches `P = P̄`.
    pub consistent: bool,
}

/// Largest `k` with `P ≡ P̄ mod T^{k+1}`.
pub fn agreement_order(p: &IntPolynomial, pbar: &IntPolynomial) -> Connectivity {
    if p == pbar {
        return Connectivity::Infinite;
    }
    let top = p.coefficients().len().max(pbar.coefficients().len());
    let first = (0..top).find(|&k| p.coeff(k) != pbar.coeff(k)).expect("polynomials differ");
    Connectivity::Finite(first.saturating_sub(1))
}

pub fn connectivity(arr: &Arrangement, config: SearchConfig) -> Result<ConnectivityReport> {
    connectivity_with_degree(arr, config, DEFAULT_DEGREE_BOUND)
}

/// As [`connectivity`], cross-checking `P̄` by linear algebra up to `degree`.
pub fn connectivity_with_degree(arr: &Arrangement, config: SearchConfig, degree: usize) -> Result<ConnectivityReport> {
    let outcome = search_series(arr, config)?;
    let Some(series) = outcome.series else {
        let frontier: Vec<String> = outcome
            .frontier
            .iter()
            .map(|f| format!("{:?}", f.iter().map(|i| i + 1).collect::<Vec<_>>()))
            .collect();
        return Err(Error::NotHypersolvable(format!(
            "no composition series; maximal chains reach {}",
            frontier.join(", ")
        )));
    };
    let p_poly = poincare(arr)?;
    let pbar_poly = IntPolynomial::exponent_product(&series.exponents);
    let p = agreement_order(&p_poly, &pbar_poly);
    let c_next = match p {
        Connectivity::Finite(k) => pbar_poly.coeff(k + 1) - p_poly.coeff(k + 1),
        Connectivity::Infinite => BigInt::zero(),
    };
    let supersolvable = is_supersolvable(arr, config)?.supersolvable;
    let pbar_linear_algebra = quadratic_os_dims(arr, degree)?.dims;
    let la_agrees = pbar_linear_algebra
        .iter()
        .enumerate()
        .all(|(k, &d)| pbar_poly.coeff(k) == BigInt::from(d));
    let infinite = p == Connectivity::Infinite;
    let consistent = la_agrees
        && infinite == supersolvable
        && infinite == series.is_supersolvable()
        && (infinite || c_next.is_positive());
    Ok(ConnectivityReport {
        p,
        aspherical: infinite && supersolvable,
        c_next,
        p_poly,
        pbar_poly,
        series,
        supersolvable,
        pbar_linear_algebra,
        consistent,
    })
}

/// `c_{p+1}`, refusing aspherical input.
pub fn coinvariants_rank(report: &ConnectivityReport) -> Result<BigInt> {
    match report.p {
        Connectivity::Infinite => Err(Error::Aspherical),
        Connectivity::Finite(_) => Ok(report.c_next.clone()),
    }
}

/// Elementary symmetric polynomial `e_k` of the given values.
pub fn elementary_symmetric(values: &[usize], k: usize) -> BigInt {
    IntPolynomial::exponent_product(values).coeff(k)
}

/// Third Betti number of the decone's fiber-type deformation, `e_3(d_2, ..., d_ℓ)`.
pub fn decone_b3(series: &CompositionSeries) -> BigInt {
    elementary_symmetric(&series.exponents[1..], 3)
}
