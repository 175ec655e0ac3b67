//! Fitting ideals, their varieties in the algebraic torus, characteristic
//! varieties by specialization, and Hilbert functions of `I`-adic graded modules.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::chaincx::{skeleton_presentation, LaurentMatrix, MinimalChainComplex, PresentationMatrix};
use crate::error::{Error, Result};
use crate::laurent::{GaussianRational, LaurentPoly};
use crate::linalg::{is_unimodular, parse_rational, rat, SparseEchelon};
use crate::poly::binomial;

pub const DEFAULT_MINOR_CAP: u64 = 200_000;

/// The ideal generated by the `(b - k + 1)`-minors of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingIdeal {
    pub k: usize,
    pub n_generators: usize,
    pub nvars: usize,
    /// Nonzero minors, up to sign and monomial units, in sorted order.
    /// Empty means the zero ideal.
    pub generators: Vec<LaurentPoly>,
}

impl FittingIdeal {
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.num_terms() == 1)
    }
}

/// The abelianized matrix; entries are already commutative here.
pub fn abelianized_matrix(p: &PresentationMatrix) -> LaurentMatrix {
    p.matrix.clone()
}

pub fn fitting_ideal(p: &PresentationMatrix, k: usize) -> Result<FittingIdeal> {
    fitting_ideal_capped(p, k, DEFAULT_MINOR_CAP)
}

pub fn fitting_ideal_capped(p: &PresentationMatrix, k: usize, cap: u64) -> Result<FittingIdeal> {
    let b = p.n_generators;
    let nvars = p.symbols.len();
    if k == 0 {
        return Err(Error::InvalidInput("Fitting index k must be at least 1".into()));
    }
    let mk = |generators| FittingIdeal { k, n_generators: b, nvars, generators };
    if k > b {
        return Ok(mk(vec![LaurentPoly::one(nvars)]));
    }
    let size = b - k + 1;
    if size > p.n_relations {
        return Ok(mk(Vec::new()));
    }
    let count = binomial(p.n_relations, size) * binomial(b, size);
    if count > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: "minors",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            cap: cap as usize,
        });
    }
    let mut found = BTreeSet::new();
    let rows_list = subsets(p.n_relations, size);
    let cols_list = subsets(b, size);
    for rows in &rows_list {
        let mut memo = HashMap::new();
        for cols in &cols_list {
            let d = minor(&p.matrix, rows, cols, 0, &mut memo);
            if !d.is_zero() {
                found.insert(KeyedPoly(d.unit_normalized()));
            }
        }
    }
    Ok(mk(found.into_iter().map(|k| k.0).collect()))
}

#[derive(PartialEq, Eq)]
struct KeyedPoly(LaurentPoly);

impl PartialOrd for KeyedPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KeyedPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.0.terms().collect();
        let b: Vec<_> = other.0.terms().collect();
        a.len().cmp(&b.len()).then_with(|| a.cmp(&b))
    }
}

/// Determinant of the submatrix on `rows[depth..]` and the columns left in
/// `cols`, by expansion along the first remaining row.
fn minor(
    m: &LaurentMatrix,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    memo: &mut HashMap<Vec<usize>, LaurentPoly>,
) -> LaurentPoly {
    if depth == rows.len() {
        return LaurentPoly::one(m.nvars());
    }
    if let Some(v) = memo.get(cols) {
        return v.clone();
    }
    let r = rows[depth];
    let mut acc = LaurentPoly::zero(m.nvars());
    for (pos, &c) in cols.iter().enumerate() {
        let e = m.get(r, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(m, rows, &rest, depth + 1, memo);
        let term = e * &sub;
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    memo.insert(cols.to_vec(), acc.clone());
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_point(nvars: usize, t: &[GaussianRational]) -> Result<()> {
    if t.len() != nvars {
        return Err(Error::DimensionMismatch { expected: nvars, got: t.len() });
    }
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(i));
    }
    Ok(())
}

/// True iff every generator of `F` vanishes at `t`.
pub fn variety_membership(f: &FittingIdeal, t: &[GaussianRational]) -> Result<bool> {
    check_point(f.nvars, t)?;
    Ok(f.generators.iter().all(|g| g.eval(t).is_zero()))
}

/// `b` minus the rank of the presentation specialized at `t`.
pub fn coker_dim_at(p: &PresentationMatrix, t: &[GaussianRational]) -> Result<usize> {
    check_point(p.symbols.len(), t)?;
    Ok(p.n_generators - p.matrix.rank_at(t))
}

/// Whether `dim H_{p+1}(Y, Y^{(p)}; C_t) ≥ k`.
pub fn char_variety_membership(y: &MinimalChainComplex, p: usize, k: usize, t: &[GaussianRational]) -> Result<bool> {
    let pres = skeleton_presentation(y, p)?;
    if k > pres.n_generators {
        check_point(pres.symbols.len(), t)?;
        return Ok(false);
    }
    Ok(coker_dim_at(&pres, t)? >= k)
}

/// Floating-point cokernel dimension with pivot tolerance `tol`. Exploratory only.
pub fn coker_dim_at_approx(p: &PresentationMatrix, t: &[Complex<f64>], tol: f64) -> Result<usize> {
    let n = p.symbols.len();
    if t.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: t.len() });
    }
    if let Some(i) = t.iter().position(|z| z.norm() <= tol) {
        return Err(Error::ZeroCoordinate(i));
    }
    let eval = |e: &LaurentPoly| -> Complex<f64> {
        e.terms()
            .map(|(ex, c)| {
                let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
                ex.iter().zip(t).fold(Complex::new(c, 0.0), |acc, (&k, z)| acc * z.powi(k))
            })
            .sum()
    };
    let mut rows: Vec<Vec<Complex<f64>>> = (0..p.n_relations)
        .map(|r| (0..p.n_generators).map(|c| eval(p.matrix.get(r, c))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..p.n_generators {
        let Some(piv) = (rank..rows.len())
            .filter(|&i| rows[i][col].norm() > tol)
            .max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()))
        else {
            continue;
        };
        rows.swap(rank, piv);
        let lead = rows[rank][col];
        for i in rank + 1..rows.len() {
            let f = rows[i][col] / lead;
            for j in col..p.n_generators {
                let v = rows[rank][j];
                rows[i][j] -= f * v;
            }
        }
        rank += 1;
    }
    Ok(p.n_generators - rank)
}

/// Substitutes `x_i ↦ ∏_j x_j^{phi[i][j]}` in every entry.
pub fn monomial_substitution(p: &PresentationMatrix, phi: &[Vec<i64>]) -> Result<PresentationMatrix> {
    let n = p.symbols.len();
    if phi.len() != n || phi.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: phi.len() });
    }
    if !is_unimodular(phi)? {
        return Err(Error::NotUnimodular(format!("{phi:?}")));
    }
    let mut out = p.clone();
    out.matrix = p.matrix.map(|e| e.substitute_monomial(phi));
    Ok(out)
}

/// The point `Φ(t)` with coordinates `∏_j t_j^{phi[i][j]}`.
pub fn apply_monomial_map(phi: &[Vec<i64>], t: &[GaussianRational]) -> Vec<GaussianRational> {
    phi.iter()
        .map(|row| {
            row.iter().zip(t).fold(GaussianRational::one(), |acc, (&k, z)| {
                acc * crate::laurent::gaussian_pow(z, k as i32)
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
    /// `values[D] > 0` at the top computed degree, so the series is not a
    /// polynomial as far as computed.
    pub not_nilpotent: bool,
}

type Monomial = Vec<u32>;
type Series = HashMap<Monomial, BigRational>;

/// Generalized binomial coefficients of `(1 + s)^e` up to `s^max`.
fn binomial_series(e: i32, max: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(max + 1);
    let mut c = BigRational::one();
    for j in 0..=max {
        out.push(c.clone());
        c = c * rat(i64::from(e) - j as i64) / rat(j as i64 + 1);
    }
    out
}

fn series_mul(a: &Series, b: &Series, below: usize) -> Series {
    let mut out = Series::new();
    for (ma, ca) in a {
        let da: u32 = ma.iter().sum();
        for (mb, cb) in b {
            let db: u32 = mb.iter().sum();
            if (da + db) as usize >= below {
                continue;
            }
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Expansion of a Laurent polynomial in `s_i = x_i - 1` below total degree `below`.
fn expand(p: &LaurentPoly, below: usize) -> Series {
    let n = p.nvars();
    let mut out = Series::new();
    for (exps, c) in p.terms() {
        let mut acc: Series = [(vec![0; n], BigRational::from_integer(c.clone()))].into_iter().collect();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let coeffs = binomial_series(e, below.saturating_sub(1));
            let factor: Series = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| {
                    let mut m = vec![0; n];
                    m[i] = j as u32;
                    (m, v)
                })
                .collect();
            acc = series_mul(&acc, &factor, below);
        }
        for (m, v) in acc {
            let e = out.entry(m).or_insert_with(BigRational::zero);
            *e += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn monomials_below(n: usize, below: usize) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if below > 0 {
        rec(0, n, below as u32 - 1, &mut vec![0; n], &mut out);
    }
    out
}

/// `dim_Q M / I^k M` for the module presented by `p`.
fn truncated_dim(p: &PresentationMatrix, k: usize) -> usize {
    let n = p.symbols.len();
    let b = p.n_generators;
    let monos = monomials_below(n, k);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = SparseEchelon::new();
    let rows: Vec<Vec<Series>> = (0..p.n_relations)
        .map(|r| (0..b).map(|c| expand(p.matrix.get(r, c), k)).collect())
        .collect();
    let shifts: Vec<&Monomial> = monos.iter().filter(|m| (m.iter().sum::<u32>() as usize) + 2 <= k).collect();
    for row in &rows {
        for shift in &shifts {
            let mut entries = Vec::new();
            for (c, series) in row.iter().enumerate() {
                for (m, v) in series {
                    let prod: Monomial = m.iter().zip(shift.iter()).map(|(x, y)| x + y).collect();
                    if let Some(&j) = index.get(&prod) {
                        entries.push((c * monos.len() + j, v.clone()));
                    }
                }
            }
            echelon.insert(entries);
        }
    }
    b * monos.len() - echelon.rank()
}

/// Hilbert function of `gr_I M` in degrees `0..=max_degree`.
pub fn hilbert_function(p: &PresentationMatrix, max_degree: usize) -> Result<HilbertFunction> {
    if let Some((row, col)) = p.matrix.epsilon_violation() {
        return Err(Error::NotEpsilonMinimal { row, col });
    }
    let dims: Vec<usize> = (0..=max_degree + 1).map(|k| truncated_dim(p, k)).collect();
    let values: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
    let not_nilpotent = values.last().is_some_and(|&v| v > 0);
    Ok(HilbertFunction { values, not_nilpotent })
}

/// Parses `a`, `a/b`, `bi`, `a+bi` and `a/b-c/di` style Gaussian rationals.
pub fn parse_gaussian(s: &str) -> Option<GaussianRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Some(Complex::new(parse_rational(&s)?, BigRational::zero()));
    };
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, &body[i..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        x => parse_rational(x.strip_prefix('+').unwrap_or(x))?,
    };
    Some(Complex::new(re, im))
}

/// Parses a comma-separated point.
pub fn parse_point(s: &str) -> Result<Vec<GaussianRational>> {
    s.split(',')
        .map(|x| parse_gaussian(x).ok_or_else(|| Error::InvalidInput(format!("bad coordinate {x:?}"))))
        .collect()
}

pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return z.re.to_string();
    }
    let im = if z.im.is_one() {
        String::new()
    } else if (-z.im.clone()).is_one() {
        "-".to_string()
    } else {
        z.im.to_string()
    };
    if z.re.is_zero() {
        format!("{im}i")
    } else if z.im.is_negative() {
        format!("{}{im}i", z.re)
    } else {
        format!("{}+{im}i", z.re)
    }
}

/// A random point of `(C*)^n` with small Gaussian-rational coordinates.
pub fn random_torus_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<GaussianRational> {
    (0..n)
        .map(|_| loop {
            let re = BigRational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
            let im = if rng.gen_bool(0.3) {
                BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into())
            } else {
                BigRational::zero()
            };
            let z = Complex::new(re, im);
            if !z.is_zero() {
                break z;
            }
        })
        .collect()
}
