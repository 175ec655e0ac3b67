//! Solvable extensions and hypersolvable composition series.
//!
//! Hyperplanes are viewed as points of the dual projective space; only the
//! collinearity relations among them enter the axioms. Subsets are `u64`
//! bitmasks over hyperplane indices.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::arrangement::{indices_to_mask, mask_to_indices, Arrangement, CollinearityData};
use crate::error::{Error, Result};

/// Default cap on |A| for the series search.
pub const DEFAULT_SEARCH_CAP: usize = 18;
/// Default node budget for the series search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Result of looking for the point of `B` on the line through `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "points", rename_all = "snake_case")]
pub enum CollinearOutcome {
    Empty,
    Unique(usize),
    Ambiguous(Vec<usize>),
}

/// The point `f(a, b)` of `b_set` on the line through `a` and `b`.
pub fn collinear_point(a: usize, b: usize, b_set: &[usize], coll: &CollinearityData) -> CollinearOutcome {
    let Some(line) = coll.line_through(a, b) else {
        return CollinearOutcome::Empty;
    };
    let hits: Vec<usize> = line.iter().copied().filter(|p| b_set.contains(p)).collect();
    match hits.len() {
        0 => CollinearOutcome::Empty,
        1 => CollinearOutcome::Unique(hits[0]),
        _ => CollinearOutcome::Ambiguous(hits),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    NotSolvable,
    Fibered,
    Singular,
}

/// Which axiom failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// `point` of B̄ lies on the line through two points of B.
    AxiomI { point: usize, on_line_of: [usize; 2] },
    /// No point of B on the line through `pair`.
    AxiomII { pair: [usize; 2] },
    /// The three images are pairwise distinct and not collinear.
    AxiomIII { triple: [usize; 3], images: [usize; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionVerdict {
    pub kind: ExtensionKind,
    pub witness: Option<Violation>,
}

/// A hypersolvable composition series `A_1 ⊂ ... ⊂ A_ℓ = A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionSeries {
    pub steps: Vec<Vec<usize>>,
    pub exponents: Vec<usize>,
    pub fibered_flags: Vec<bool>,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    pub fn is_supersolvable(&self) -> bool {
        self.fibered_flags.iter().all(|&f| f)
    }

    /// Exponents in ascending order.
    pub fn exponent_multiset(&self) -> Vec<usize> {
        let mut e = self.exponents.clone();
        e.sort_unstable();
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub cap: usize,
    pub fibered_only: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, cap: DEFAULT_SEARCH_CAP, fibered_only: false }
    }
}

/// Outcome of an exhaustive series search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub series: Option<CompositionSeries>,
    /// Maximal sub-arrangements reached when no series exists.
    pub frontier: Vec<Vec<usize>>,
    pub nodes: u64,
}

/// Collinearity lookups and ranks for one central arrangement.
pub struct Context<'a> {
    arr: &'a Arrangement,
    coll: CollinearityData,
    line_masks: Vec<u64>,
    point_lines: Vec<Vec<usize>>,
    ranks: HashMap<u64, usize>,
}

impl<'a> Context<'a> {
    pub fn new(arr: &'a Arrangement) -> Result<Self> {
        let n = arr.len();
        if n > 64 {
            return Err(Error::CapExceeded { what: "hypersolvability |A|", size: n, cap: 64 });
        }
        let coll = arr.rank2_flats()?;
        let line_masks: Vec<u64> = coll.lines.iter().map(|l| indices_to_mask(l)).collect();
        let mut point_lines = vec![Vec::new(); n];
        for (li, l) in coll.lines.iter().enumerate() {
            for &p in l {
                point_lines[p].push(li);
            }
        }
        Ok(Self { arr, coll, line_masks, point_lines, ranks: HashMap::new() })
    }

    pub fn collinearity(&self) -> &CollinearityData {
        &self.coll
    }

    fn rank(&mut self, mask: u64) -> usize {
        if let Some(&r) = self.ranks.get(&mask) {
            return r;
        }
        let r = self.arr.mask_rank(mask);
        self.ranks.insert(mask, r);
        r
    }

    /// Axiom (I) for a single point against `b`.
    fn axiom_one(&self, a: usize, b: u64) -> Option<[usize; 2]> {
        for &li in &self.point_lines[a] {
            let hit = self.line_masks[li] & b;
            if hit.count_ones() >= 2 {
                let pts = mask_to_indices(hit);
                return Some([pts[0], pts[1]]);
            }
        }
        None
    }

    /// `f(a, b)` assuming axiom (I) holds for both points.
    fn image(&self, a: usize, b: usize, bmask: u64) -> Option<usize> {
        let li = self.coll.line_index(a, b)?;
        let hit = self.line_masks[li] & bmask;
        (hit.count_ones() == 1).then(|| hit.trailing_zeros() as usize)
    }

    fn images_compatible(&self, x: usize, y: usize, z: usize) -> bool {
        x == y || x == z || y == z || self.coll.collinear(x, y, z)
    }

    /// Checks axioms (I)-(III) for `(A, B)` given as masks with `B ⊊ A`.
    pub fn violation(&self, a_mask: u64, b_mask: u64) -> Option<Violation> {
        let bbar = mask_to_indices(a_mask & !b_mask);
        for &a in &bbar {
            if let Some(pair) = self.axiom_one(a, b_mask) {
                return Some(Violation::AxiomI { point: a, on_line_of: pair });
            }
        }
        let mut f = HashMap::new();
        for (i, &a) in bbar.iter().enumerate() {
            for &b in &bbar[i + 1..] {
                match self.image(a, b, b_mask) {
                    Some(p) => {
                        f.insert((a, b), p);
                    }
                    None => return Some(Violation::AxiomII { pair: [a, b] }),
                }
            }
        }
        for (i, &a) in bbar.iter().enumerate() {
            for (j, &b) in bbar.iter().enumerate().skip(i + 1) {
                for &c in &bbar[j + 1..] {
                    let (x, y, z) = (f[&(a, b)], f[&(a, c)], f[&(b, c)]);
                    if !self.images_compatible(x, y, z) {
                        return Some(Violation::AxiomIII { triple: [a, b, c], images: [x, y, z] });
                    }
                }
            }
        }
        None
    }

    pub fn classify(&mut self, a_mask: u64, b_mask: u64) -> ExtensionVerdict {
        if let Some(v) = self.violation(a_mask, b_mask) {
            return ExtensionVerdict { kind: ExtensionKind::NotSolvable, witness: Some(v) };
        }
        let ra = self.rank(a_mask);
        let rb = self.rank(b_mask);
        let kind = if ra == rb + 1 { ExtensionKind::Fibered } else { ExtensionKind::Singular };
        ExtensionVerdict { kind, witness: None }
    }

    /// All B̄ ⊆ `within ∖ b` making `(b ∪ B̄, b)` solvable, smallest first,
    /// then lexicographically.
    fn candidates(&self, b: u64, within: u64) -> Vec<u64> {
        let pool: Vec<usize> = mask_to_indices(within & !b)
            .into_iter()
            .filter(|&a| self.axiom_one(a, b).is_none())
            .collect();
        let k = pool.len();
        let mut f = vec![None; k * k];
        for i in 0..k {
            for j in i + 1..k {
                f[i * k + j] = self.image(pool[i], pool[j], b);
                f[j * k + i] = f[i * k + j];
            }
        }
        let mut out = Vec::new();
        let mut level: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for clique in &level {
                out.push(clique.iter().fold(0u64, |m, &i| m | 1 << pool[i]));
                let last = *clique.last().expect("cliques are nonempty");
                'ext: for c in last + 1..k {
                    let mut fc = Vec::with_capacity(clique.len());
                    for &x in clique {
                        match f[x * k + c] {
                            Some(p) => fc.push(p),
                            None => continue 'ext,
                        }
                    }
                    for (s, &x) in clique.iter().enumerate() {
                        for (t, &y) in clique.iter().enumerate().skip(s + 1) {
                            let fxy = f[x * k + y].expect("clique members are compatible");
                            if !self.images_compatible(fxy, fc[s], fc[t]) {
                                continue 'ext;
                            }
                        }
                    }
                    let mut grown = clique.clone();
                    grown.push(c);
                    next.push(grown);
                }
            }
            level = next;
        }
        out
    }
}

/// Verdict for the extension `(A_idx, B_idx)` of index sets.
pub fn solvable_extension(arr: &Arrangement, a_idx: &[usize], b_idx: &[usize]) -> Result<ExtensionVerdict> {
    let mut ctx = Context::new(arr)?;
    for &i in a_idx.iter().chain(b_idx) {
        if i >= arr.len() {
            return Err(Error::IndexOutOfRange { index: i, size: arr.len() });
        }
    }
    let a = indices_to_mask(a_idx);
    let b = indices_to_mask(b_idx);
    if b == 0 || b & !a != 0 || a == b {
        return Err(Error::InvalidInput("extension requires ∅ ≠ B ⊊ A".into()));
    }
    Ok(ctx.classify(a, b))
}

struct Search<'c, 'a> {
    ctx: &'c mut Context<'a>,
    full: u64,
    config: SearchConfig,
    nodes: u64,
    failed: HashSet<u64>,
    path: Vec<u64>,
}

impl Search<'_, '_> {
    fn run(&mut self, b: u64) -> Result<bool> {
        if b == self.full {
            return Ok(true);
        }
        if self.failed.contains(&b) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.config.budget {
            return Err(Error::BudgetExceeded { budget: self.config.budget });
        }
        let rb = self.ctx.rank(b);
        for bbar in self.ctx.candidates(b, self.full) {
            let next = b | bbar;
            if self.config.fibered_only && self.ctx.rank(next) != rb + 1 {
                continue;
            }
            self.path.push(next);
            if self.run(next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        self.failed.insert(b);
        Ok(false)
    }
}

fn series_from_path(ctx: &mut Context<'_>, path: &[u64]) -> CompositionSeries {
    let mut steps = Vec::new();
    let mut exponents = Vec::new();
    let mut fibered_flags = Vec::new();
    let mut prev = 0u64;
    for &m in path {
        steps.push(mask_to_indices(m));
        exponents.push((m & !prev).count_ones() as usize);
        let fibered = ctx.rank(m) == ctx.rank(prev) + 1;
        fibered_flags.push(fibered);
        prev = m;
    }
    CompositionSeries { steps, exponents, fibered_flags }
}

/// Backtracking search for a composition series.
pub fn search_series(arr: &Arrangement, config: SearchConfig) -> Result<SearchOutcome> {
    if !arr.is_central() {
        return Err(Error::NotCentral);
    }
    if arr.is_empty() {
        return Err(Error::InvalidInput("empty arrangement".into()));
    }
    if arr.len() > config.cap {
        return Err(Error::CapExceeded { what: "series search |A|", size: arr.len(), cap: config.cap });
    }
    let mut ctx = Context::new(arr)?;
    let full = if arr.len() == 64 { u64::MAX } else { (1u64 << arr.len()) - 1 };
    let mut search = Search { ctx: &mut ctx, full, config, nodes: 0, failed: HashSet::new(), path: Vec::new() };
    for i in 0..arr.len() {
        let start = 1u64 << i;
        search.path = vec![start];
        if search.run(start)? {
            let path = std::mem::take(&mut search.path);
            let nodes = search.nodes;
            let series = series_from_path(&mut ctx, &path);
            return Ok(SearchOutcome { series: Some(series), frontier: Vec::new(), nodes });
        }
    }
    let nodes = search.nodes;
    let failed: Vec<u64> = search.failed.iter().copied().collect();
    let best = failed.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let mut frontier: Vec<Vec<usize>> = failed
        .into_iter()
        .filter(|m| m.count_ones() == best)
        .map(mask_to_indices)
        .collect();
    frontier.sort();
    Ok(SearchOutcome { series: None, frontier, nodes })
}

/// A composition series, if the arrangement is hypersolvable.
pub fn composition_series(arr: &Arrangement, config: SearchConfig) -> Result<Option<CompositionSeries>> {
    Ok(search_series(arr, SearchConfig { fibered_only: false, ..config })?.series)
}

/// Supersolvability verdict with its cross-check against `ℓ(A) = rank(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupersolvReport {
    pub supersolvable: bool,
    pub series: Option<CompositionSeries>,
    /// True when the fibered-only search agrees with the length criterion.
    pub consistent: bool,
}

pub fn is_supersolvable(arr: &Arrangement, config: SearchConfig) -> Result<SupersolvReport> {
    let fibered = search_series(arr, SearchConfig { fibered_only: true, ..config })?.series;
    let any = composition_series(arr, config)?;
    let by_length = any.as_ref().is_some_and(|s| s.length() == arr.rank());
    Ok(SupersolvReport { supersolvable: fibered.is_some(), consistent: by_length == fibered.is_some(), series: fibered })
}

/// Every exponent multiset (sorted) realized by some composition series.
/// Exhaustive, so meant for small arrangements.
pub fn all_exponent_multisets(arr: &Arrangement, cap: usize) -> Result<BTreeSet<Vec<usize>>> {
    if !arr.is_central() {
        return Err(Error::NotCentral);
    }
    if arr.len() > cap {
        return Err(Error::CapExceeded { what: "exhaustive series enumeration |A|", size: arr.len(), cap });
    }
    let ctx = Context::new(arr)?;
    let full = (1u64 << arr.len()) - 1;
    let mut memo: HashMap<u64, BTreeSet<Vec<usize>>> = HashMap::new();
    fn tails(ctx: &Context<'_>, b: u64, full: u64, memo: &mut HashMap<u64, BTreeSet<Vec<usize>>>) -> BTreeSet<Vec<usize>> {
        if b == full {
            return BTreeSet::from([Vec::new()]);
        }
        if let Some(t) = memo.get(&b) {
            return t.clone();
        }
        let mut out = BTreeSet::new();
        for bbar in ctx.candidates(b, full) {
            let d = bbar.count_ones() as usize;
            for t in tails(ctx, b | bbar, full, memo) {
                let mut v = t.clone();
                v.push(d);
                v.sort_unstable();
                out.insert(v);
            }
        }
        memo.insert(b, out.clone());
        out
    }
    let mut all = BTreeSet::new();
    for i in 0..arr.len() {
        for mut t in tails(&ctx, 1 << i, full, &mut memo) {
            t.push(1);
            t.sort_unstable();
            all.insert(t);
        }
    }
    Ok(all)
}
