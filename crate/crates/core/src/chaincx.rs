//! Minimal equivariant chain complexes over commutative Laurent rings.
//!
//! Complexes are built from tori and wedges of circles by Künneth products.
//! Boundary matrices use the row convention: row `i` of `∂_q` is the
//! boundary of the `i`-th cell of degree `q`, written in the basis of
//! degree `q - 1`, with right-module entries `x^{-1} - 1`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{GaussianRational, LaurentPoly};
use crate::linalg::{rank, rat};
use crate::poly::{binomial, IntPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// Free abelian group: the generators commute.
    Abelian,
    /// Free group: generators do not commute with each other.
    Free,
}

/// One direct-product factor of the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    /// Indices into the generator list.
    pub vars: Vec<usize>,
}

/// A basis cell with its per-factor degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub parts: Vec<String>,
    pub multidegree: Vec<usize>,
}

impl Cell {
    pub fn label(&self) -> String {
        let s: String = self.parts.concat();
        if s.is_empty() {
            "pt".to_string()
        } else {
            s
        }
    }
}

/// Dense matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        Self { rows, cols, nvars, entries: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c, nvars);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.nvars() != nvars {
                    return Err(Error::DimensionMismatch { expected: nvars, got: e.nvars() });
                }
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let entries: Vec<LaurentPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, LaurentPoly::nvars);
        Self { rows: self.rows, cols: self.cols, nvars, entries }
    }

    /// Nonzero entries as `(row, col, entry)`, row-major.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &LaurentPoly)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .map(|(r, c)| (r, c, self.get(r, c)))
            .collect()
    }

    /// First entry not in the augmentation ideal, if any.
    pub fn epsilon_violation(&self) -> Option<(usize, usize)> {
        self.nonzero_entries()
            .into_iter()
            .find(|(_, _, e)| !e.augmentation().is_zero())
            .map(|(r, c, _)| (r, c))
    }

    pub fn is_epsilon_minimal(&self) -> bool {
        self.epsilon_violation().is_none()
    }

    /// Specialization at a torus point.
    pub fn eval(&self, point: &[GaussianRational]) -> Vec<Vec<GaussianRational>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).eval(point)).collect())
            .collect()
    }

    /// Rank of the specialization at a torus point.
    pub fn rank_at(&self, point: &[GaussianRational]) -> usize {
        rank(self.eval(point))
    }

    /// Product `self · other`, refusing to multiply two entries that both
    /// involve generators of the same free factor.
    pub fn compose(&self, other: &Self, factors: &[Factor]) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zero(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = checked_product(a, b, factors)?;
                    let sum = out.get(i, j) + &prod;
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    /// Rows rendered with the given generator names.
    pub fn render(&self, names: &[String]) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).render(names)).collect())
            .collect()
    }
}

/// Product of two entries, refused when both involve the same free factor.
pub fn checked_product(a: &LaurentPoly, b: &LaurentPoly, factors: &[Factor]) -> Result<LaurentPoly> {
    let sa = a.support_vars();
    let sb = b.support_vars();
    for (fi, f) in factors.iter().enumerate() {
        if f.kind == FactorKind::Free
            && sa.iter().any(|v| f.vars.contains(v))
            && sb.iter().any(|v| f.vars.contains(v))
        {
            return Err(Error::NonCommutingProduct(fi));
        }
    }
    Ok(a * b)
}

/// A minimal chain complex of free modules over the group ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalChainComplex {
    generators: Vec<String>,
    factors: Vec<Factor>,
    cells: Vec<Vec<Cell>>,
    /// `boundaries[q - 1]` is `∂_q`.
    boundaries: Vec<LaurentMatrix>,
}

impl MinimalChainComplex {
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// Top degree with a nonzero chain group.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn rank(&self, q: usize) -> usize {
        self.cells.get(q).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, q: usize) -> &[Cell] {
        self.cells.get(q).map_or(&[], Vec::as_slice)
    }

    /// `∂_q : C_q → C_{q-1}` for `1 ≤ q ≤ dim`.
    pub fn boundary(&self, q: usize) -> Option<&LaurentMatrix> {
        q.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn rank_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.ranks().into_iter().map(BigInt::from).collect())
    }

    /// True if every composite `∂_{q-1} ∘ ∂_q` vanishes.
    pub fn is_complex(&self) -> Result<bool> {
        for q in 2..=self.dim() {
            let m = self.boundary(q).expect("degree in range");
            let n = self.boundary(q - 1).expect("degree in range");
            if !m.compose(n, &self.factors)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True if every boundary entry vanishes under augmentation.
    pub fn is_epsilon_minimal(&self) -> bool {
        self.boundaries.iter().all(LaurentMatrix::is_epsilon_minimal)
    }

    /// Renames generators `x{first+1}, x{first+2}, ...` and relabels cells to match.
    pub fn renumbered(&self, first: usize) -> Self {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", first + i + 1)).collect();
        let mut out = self.clone();
        let relabel = |part: &str| -> String {
            let (head, digits) = part.split_at(part.char_indices().nth(1).map_or(part.len(), |(i, _)| i));
            if digits.is_empty() {
                return part.to_string();
            }
            let idx: Vec<usize> = if digits.contains(',') {
                digits.split(',').filter_map(|d| d.parse().ok()).collect()
            } else {
                digits.chars().filter_map(|d| d.to_digit(10)).map(|d| d as usize).collect()
            };
            let shifted: Vec<usize> = idx.iter().map(|&i| self.position_of(i) + first + 1).collect();
            format!("{head}{}", join_indices(&shifted))
        };
        for level in &mut out.cells {
            for cell in level {
                cell.parts = cell.parts.iter().map(|p| relabel(p)).collect();
            }
        }
        out.generators = names;
        out
    }

    fn position_of(&self, one_based: usize) -> usize {
        let name = format!("x{one_based}");
        self.generators.iter().position(|g| *g == name).unwrap_or(one_based - 1)
    }
}

fn join_indices(idx: &[usize]) -> String {
    let sep = if idx.iter().all(|&i| i < 10) { "" } else { "," };
    idx.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// The minimal complex of the `n`-torus with generators `x1..xn`.
pub fn torus_complex(n: usize) -> Result<MinimalChainComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("torus dimension must be positive".into()));
    }
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|q| index_subsets(n, q)).collect();
    let cells: Vec<Vec<Cell>> = subsets
        .iter()
        .enumerate()
        .map(|(q, level)| {
            level
                .iter()
                .map(|s| Cell {
                    parts: vec![if s.is_empty() {
                        String::new()
                    } else {
                        format!("σ{}", join_indices(&s.iter().map(|i| i + 1).collect::<Vec<_>>()))
                    }],
                    multidegree: vec![q],
                })
                .collect()
        })
        .collect();
    let mut boundaries = Vec::with_capacity(n);
    for q in 1..=n {
        let rows = &subsets[q];
        let cols = &subsets[q - 1];
        let mut m = LaurentMatrix::zero(rows.len(), cols.len(), n);
        for (ri, s) in rows.iter().enumerate() {
            for (r, &i) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
                let ci = cols.binary_search(&face).expect("faces are listed");
                let mut e = LaurentPoly::inv_minus_one(n, i);
                if r % 2 == 1 {
                    e = -&e;
                }
                m.set(ri, ci, e);
            }
        }
        boundaries.push(m);
    }
    Ok(MinimalChainComplex {
        generators: (1..=n).map(|i| format!("x{i}")).collect(),
        factors: vec![Factor { kind: FactorKind::Abelian, vars: (0..n).collect() }],
        cells,
        boundaries,
    })
}

/// The minimal complex of a wedge of `d` circles (free group on `x1..xd`).
pub fn wedge_complex(d: usize) -> Result<MinimalChainComplex> {
    if d == 0 {
        return Err(Error::InvalidInput("wedge must have at least one circle".into()));
    }
    let cells = vec![
        vec![Cell { parts: vec![String::new()], multidegree: vec![0] }],
        (1..=d).map(|i| Cell { parts: vec![format!("τ{i}")], multidegree: vec![1] }).collect(),
    ];
    let mut m = LaurentMatrix::zero(d, 1, d);
    for i in 0..d {
        m.set(i, 0, LaurentPoly::inv_minus_one(d, i));
    }
    Ok(MinimalChainComplex {
        generators: (1..=d).map(|i| format!("x{i}")).collect(),
        factors: vec![Factor { kind: if d == 1 { FactorKind::Abelian } else { FactorKind::Free }, vars: (0..d).collect() }],
        cells,
        boundaries: vec![m],
    })
}

/// Tensor product complex over the direct product of the two groups.
///
/// Degree-`q` cells are `c ⊗ d` ordered by factor degrees, first factor's
/// degree descending, then by the factors' own bases.
pub fn kunneth_product(c: &MinimalChainComplex, d: &MinimalChainComplex) -> Result<MinimalChainComplex> {
    let names: HashSet<&String> = c.generators.iter().collect();
    if let Some(dup) = d.generators.iter().find(|g| names.contains(g)) {
        return Err(Error::SymbolCollision(dup.clone()));
    }
    let nc = c.nvars();
    let total = nc + d.nvars();
    let top = c.dim() + d.dim();
    // blocks[q] = list of (a, b) with a + b = q, a descending
    let blocks: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|q| {
            (0..=q.min(c.dim()))
                .rev()
                .filter(|&a| q - a <= d.dim())
                .map(|a| (a, q - a))
                .collect()
        })
        .collect();
    let offset = |q: usize, a: usize| -> usize {
        blocks[q]
            .iter()
            .take_while(|&&(x, _)| x != a)
            .map(|&(x, y)| c.rank(x) * d.rank(y))
            .sum()
    };
    let mut cells = Vec::with_capacity(top + 1);
    for level in &blocks {
        let mut v = Vec::new();
        for &(a, b) in level {
            for ci in c.cells(a) {
                for di in d.cells(b) {
                    let mut parts = ci.parts.clone();
                    parts.extend(di.parts.iter().cloned());
                    let mut md = ci.multidegree.clone();
                    md.extend(di.multidegree.iter().copied());
                    v.push(Cell { parts, multidegree: md });
                }
            }
        }
        cells.push(v);
    }
    let mut boundaries = Vec::with_capacity(top);
    for q in 1..=top {
        let mut m = LaurentMatrix::zero(cells[q].len(), cells[q - 1].len(), total);
        for &(a, b) in &blocks[q] {
            let row0 = offset(q, a);
            let nd_b = d.rank(b);
            if a >= 1 {
                let bc = c.boundary(a).expect("degree in range");
                let col0 = offset(q - 1, a - 1);
                for (i, k, e) in bc.nonzero_entries() {
                    let e = e.embed(total, 0);
                    for j in 0..nd_b {
                        m.set(row0 + i * nd_b + j, col0 + k * nd_b + j, e.clone());
                    }
                }
            }
            if b >= 1 {
                let bd = d.boundary(b).expect("degree in range");
                let col0 = offset(q - 1, a);
                let nd_b1 = d.rank(b - 1);
                for (j, l, e) in bd.nonzero_entries() {
                    let mut e = e.embed(total, nc);
                    if a % 2 == 1 {
                        e = -&e;
                    }
                    for i in 0..c.rank(a) {
                        m.set(row0 + i * nd_b + j, col0 + i * nd_b1 + l, e.clone());
                    }
                }
            }
        }
        boundaries.push(m);
    }
    let mut factors = c.factors.clone();
    factors.extend(d.factors.iter().map(|f| Factor { kind: f.kind, vars: f.vars.iter().map(|v| v + nc).collect() }));
    let mut generators = c.generators.clone();
    generators.extend(d.generators.iter().cloned());
    Ok(MinimalChainComplex { generators, factors, cells, boundaries })
}

/// Product of tori and wedges, numbering generators `x1, x2, ...` in order.
pub fn product_model(parts: &[(FactorKind, usize)]) -> Result<MinimalChainComplex> {
    let mut acc: Option<MinimalChainComplex> = None;
    let mut next = 0;
    for &(kind, size) in parts {
        let piece = match kind {
            FactorKind::Abelian => torus_complex(size)?,
            FactorKind::Free => wedge_complex(size)?,
        }
        .renumbered(next);
        next += size;
        acc = Some(match acc {
            None => piece,
            Some(a) => kunneth_product(&a, &piece)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidInput("empty product model".into()))
}

/// Product model for the decone of a hypersolvable arrangement with the
/// given exponents: one exponent 1 is dropped, the remaining 1s form a torus
/// and each larger exponent `d` a wedge of `d` circles.
pub fn decone_model(exponents: &[usize]) -> Result<MinimalChainComplex> {
    let mut rest: Vec<usize> = exponents.to_vec();
    rest.sort_unstable();
    if rest.first() != Some(&1) {
        return Err(Error::InvalidInput("exponents of a central arrangement start with 1".into()));
    }
    rest.remove(0);
    let ones = rest.iter().filter(|&&d| d == 1).count();
    let mut parts = Vec::new();
    if ones > 0 {
        parts.push((FactorKind::Abelian, ones));
    }
    parts.extend(rest.iter().filter(|&&d| d > 1).map(|&d| (FactorKind::Free, d)));
    if parts.is_empty() {
        return Err(Error::InvalidInput("a single hyperplane has a contractible decone".into()));
    }
    product_model(&parts)
}

/// Parses `torus:3*wedge:2` style model descriptions.
pub fn parse_model(text: &str) -> Result<MinimalChainComplex> {
    let mut parts = Vec::new();
    for piece in text.split('*') {
        let (kind, size) = piece
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("bad model factor {piece:?}")))?;
        let size: usize = size
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad factor size in {piece:?}")))?;
        let kind = match kind.trim() {
            "torus" => FactorKind::Abelian,
            "wedge" => FactorKind::Free,
            other => return Err(Error::InvalidInput(format!("unknown factor kind {other:?}"))),
        };
        parts.push((kind, size));
    }
    product_model(&parts)
}

/// Presentation of a module: `n_relations` rows over `n_generators` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub matrix: LaurentMatrix,
    pub n_generators: usize,
    pub n_relations: usize,
    pub symbols: Vec<String>,
    pub generator_cells: Vec<Cell>,
    pub relation_cells: Vec<Cell>,
}

impl PresentationMatrix {
    pub fn free(symbols: Vec<String>, generator_cells: Vec<Cell>) -> Self {
        let n = generator_cells.len();
        Self {
            matrix: LaurentMatrix::zero(0, n, symbols.len()),
            n_generators: n,
            n_relations: 0,
            symbols,
            generator_cells,
            relation_cells: Vec::new(),
        }
    }

    /// Presentation of an arbitrary matrix, with trivially graded cells.
    pub fn from_matrix(matrix: LaurentMatrix) -> Self {
        let cell = Cell { parts: Vec::new(), multidegree: Vec::new() };
        Self {
            n_generators: matrix.cols(),
            n_relations: matrix.rows(),
            symbols: (1..=matrix.nvars()).map(|i| format!("x{i}")).collect(),
            generator_cells: vec![cell.clone(); matrix.cols()],
            relation_cells: vec![cell; matrix.rows()],
            matrix,
        }
    }

    /// Rank of the cokernel after `x_i ↦ 1`: `b` for ε-minimal matrices.
    pub fn coinvariant_rank(&self) -> usize {
        let ones = vec![GaussianRational::new(rat(1), rat(0)); self.symbols.len()];
        self.n_generators - self.matrix.rank_at(&ones)
    }
}

/// `∂_{p+2}` of `Y`, presenting `π_p` of its `p`-skeleton.
pub fn skeleton_presentation(y: &MinimalChainComplex, p: usize) -> Result<PresentationMatrix> {
    if p + 1 > y.dim() {
        return Err(Error::InvalidInput(format!(
            "p + 1 = {} exceeds the dimension {} of the model",
            p + 1,
            y.dim()
        )));
    }
    let gens = y.cells(p + 1).to_vec();
    match y.boundary(p + 2) {
        None => Ok(PresentationMatrix::free(y.generators.clone(), gens)),
        Some(m) => Ok(PresentationMatrix {
            matrix: m.clone(),
            n_generators: m.cols(),
            n_relations: m.rows(),
            symbols: y.generators.clone(),
            generator_cells: gens,
            relation_cells: y.cells(p + 2).to_vec(),
        }),
    }
}

fn basis_sign(multidegree: &[usize]) -> bool {
    let mut odd = false;
    for (i, &a) in multidegree.iter().enumerate() {
        for &b in &multidegree[i + 1..] {
            if (a + 1) * b % 2 == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Left-module form: apply `x ↦ x^{-1}` and change basis signs by
/// `(-1)^{Σ_{i<j} (a_i + 1) a_j}` on cells of multidegree `a`.
pub fn left_module_form(p: &PresentationMatrix) -> PresentationMatrix {
    let mut out = p.clone();
    for r in 0..p.n_relations {
        for c in 0..p.n_generators {
            let mut e = p.matrix.get(r, c).invert_variables();
            if basis_sign(&p.relation_cells[r].multidegree) != basis_sign(&p.generator_cells[c].multidegree) {
                e = -&e;
            }
            out.matrix.set(r, c, e);
        }
    }
    out
}

/// Truncated free resolution `0 → C_d → ... → C_{p+2} → C_{p+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub p: usize,
    /// Ranks of `C_d, ..., C_{p+1}`.
    pub ranks: Vec<usize>,
    /// `∂_d, ..., ∂_{p+2}`.
    pub maps: Vec<LaurentMatrix>,
}

impl Resolution {
    /// Number of free modules, `d - p`.
    pub fn length(&self) -> usize {
        self.ranks.len()
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

pub fn pi_p_resolution(y: &MinimalChainComplex, p: usize) -> Result<Resolution> {
    skeleton_presentation(y, p)?;
    let d = y.dim();
    let ranks = (p + 1..=d).rev().map(|q| y.rank(q)).collect();
    let maps = (p + 2..=d).rev().map(|q| y.boundary(q).expect("degree in range").clone()).collect();
    Ok(Resolution { p, ranks, maps })
}

/// The torus model of `n` generic hyperplanes in `C^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HattoriModel {
    pub n: usize,
    pub ell: usize,
    pub complex: MinimalChainComplex,
    /// Degrees `k`, `1 < k < ℓ`, where `π_k` vanishes.
    pub vanishing: Vec<usize>,
    /// True when the skeleton is the whole torus.
    pub trivial: bool,
    pub presentation: Option<PresentationMatrix>,
    pub resolution: Option<Resolution>,
    pub coinvariant_rank: BigInt,
}

pub fn hattori_model(n: usize, ell: usize) -> Result<HattoriModel> {
    if ell < 2 {
        return Err(Error::InvalidInput("ℓ must be at least 2".into()));
    }
    let complex = torus_complex(n)?;
    let trivial = ell >= n;
    let (presentation, resolution, coinvariant_rank) = if trivial {
        (None, None, BigInt::zero())
    } else {
        let pres = skeleton_presentation(&complex, ell)?;
        let res = pi_p_resolution(&complex, ell)?;
        (Some(pres), Some(res), binomial(n, ell + 1))
    };
    Ok(HattoriModel {
        n,
        ell,
        complex,
        vanishing: (2..ell.min(n + 1)).collect(),
        trivial,
        presentation,
        resolution,
        coinvariant_rank,
    })
}

fn index_subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= n {
        rec(0, n, q, &mut Vec::new(), &mut out);
    }
    out
}
