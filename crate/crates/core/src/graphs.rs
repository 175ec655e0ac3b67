//! Graphs and their graphic arrangements.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::chaincx::{torus_complex, LaurentMatrix, PresentationMatrix};
use crate::error::{Error, Result};
use crate::hypersolv::{CompositionSeries, DEFAULT_BUDGET};
use crate::laurent::LaurentPoly;
use crate::osalg::{kernel_rank, poincare};
use crate::poly::IntPolynomial;

pub const PI2_MODEL_TAG: &str = "torus-skeleton (heuristic beyond coinvariants)";

/// A simple graph on vertices `0..m` with ordered edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates a 0-based edge list: no loops, no repeats, no isolated vertices.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidInput("graph has no edges".into()));
        }
        if num_vertices > 64 {
            return Err(Error::CapExceeded { what: "graph vertices", size: num_vertices, cap: 64 });
        }
        let mut seen = HashSet::new();
        let mut touched = vec![false; num_vertices];
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= num_vertices {
                    return Err(Error::IndexOutOfRange { index: v, size: num_vertices });
                }
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {}", a + 1)));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidInput(format!("repeated edge {} {}", e.0 + 1, e.1 + 1)));
            }
            touched[a] = true;
            touched[b] = true;
            norm.push(e);
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(Error::InvalidInput(format!("vertex {} is isolated", v + 1)));
        }
        Ok(Self { num_vertices, edges: norm })
    }

    /// Builds from 1-based edges.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::InvalidInput("vertices are numbered from 1".into()));
        }
        Self::new(num_vertices, edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect())
    }

    /// Parses `vertices m` followed by one `i j` edge per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = None;
        let mut edges = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: n + 1, message };
            let words: Vec<&str> = line.split_whitespace().collect();
            if m.is_none() {
                match words.as_slice() {
                    ["vertices", k] => m = Some(k.parse::<usize>().map_err(|_| bad(format!("bad vertex count {k:?}")))?),
                    _ => return Err(bad("expected `vertices m`".into())),
                }
                continue;
            }
            let [a, b] = words.as_slice() else {
                return Err(bad("expected an edge `i j`".into()));
            };
            let a: usize = a.parse().map_err(|_| bad(format!("bad vertex {a:?}")))?;
            let b: usize = b.parse().map_err(|_| bad(format!("bad vertex {b:?}")))?;
            if a == 0 || b == 0 {
                return Err(bad("vertices are numbered from 1".into()));
            }
            edges.push((a - 1, b - 1));
        }
        let m = m.ok_or(Error::Parse { line: 1, message: "missing `vertices m` header".into() })?;
        Self::new(m, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.num_vertices);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn complete(m: usize) -> Result<Self> {
        Self::new(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect())
    }

    pub fn path(m: usize) -> Result<Self> {
        Self::new(m, (1..m).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(m: usize) -> Result<Self> {
        let mut e: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        e.push((0, m - 1));
        Self::new(m, e)
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.num_vertices];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn edge_index(&self) -> HashMap<(usize, usize), usize> {
        self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }

    fn edge_between(&self, idx: &HashMap<(usize, usize), usize>, a: usize, b: usize) -> Option<usize> {
        idx.get(&(a.min(b), a.max(b))).copied()
    }

    /// All triangles as sorted edge-index triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let idx = self.edge_index();
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            let common = adj[a] & adj[b];
            for c in bits(common) {
                if c > b {
                    let mut t = [idx[&(a, b)], self.edge_between(&idx, a, c).unwrap(), self.edge_between(&idx, b, c).unwrap()];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices touched by the edges in `mask`.
    fn vertex_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, e| acc | 1 << self.edges[e].0 | 1 << self.edges[e].1)
    }

    /// Rank of the graphic matroid on the edges in `mask`.
    pub fn edge_rank(&self, mask: u64) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut rank = 0;
        for e in bits(mask) {
            let (a, b) = self.edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                rank += 1;
            }
        }
        rank
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

/// One form `z_i - z_j` per edge, in edge order.
pub fn graphic_arrangement(g: &Graph) -> Arrangement {
    let rows: Vec<Vec<i64>> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let mut r = vec![0i64; g.num_vertices];
            r[a] = 1;
            r[b] = -1;
            r
        })
        .collect();
    Arrangement::central_from_rows(g.num_vertices, &rows).expect("edges are distinct")
}

/// Chromatic polynomial by deletion and contraction.
pub fn chromatic_polynomial(g: &Graph) -> IntPolynomial {
    let mut memo = HashMap::new();
    chromatic_rec(&g.adjacency(), &mut memo)
}

fn chromatic_rec(adj: &[u64], memo: &mut HashMap<Vec<u64>, IntPolynomial>) -> IntPolynomial {
    let n = adj.len();
    let Some(u) = (0..n).find(|&i| adj[i] != 0) else {
        return IntPolynomial::monomial(BigInt::one(), n);
    };
    let edges: u32 = adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
    if edges as usize == n * (n - 1) / 2 {
        return falling_factorial(n);
    }
    let key = adj.to_vec();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let v = adj[u].trailing_zeros() as usize;
    let mut deleted = adj.to_vec();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let contracted = contract(adj, u, v);
    let p = &chromatic_rec(&deleted, memo) - &chromatic_rec(&contracted, memo);
    memo.insert(key, p.clone());
    p
}

/// Merges `v` into `u` and removes `v`.
fn contract(adj: &[u64], u: usize, v: usize) -> Vec<u64> {
    let n = adj.len();
    let merged = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
    let squeeze = |m: u64| -> u64 {
        let low = m & ((1u64 << v) - 1);
        let high = if v + 1 < 64 { (m >> (v + 1)) << v } else { 0 };
        low | high
    };
    let mut out = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == v {
            continue;
        }
        let mut m = if i == u { merged } else { adj[i] };
        if i != u && merged & (1 << i) != 0 {
            m |= 1 << u;
        }
        m &= !(1 << v);
        out.push(squeeze(m));
    }
    out
}

fn falling_factorial(n: usize) -> IntPolynomial {
    (0..n).fold(IntPolynomial::one(), |acc, k| &acc * &IntPolynomial::linear(-(k as i64), 1))
}

/// `(-T)^m χ_G(-1/T)`. The lowest power of `T` in `χ_G` is the number of
/// components, so the result is already a polynomial of degree `rank A_G`.
pub fn poincare_from_chromatic(g: &Graph) -> IntPolynomial {
    let chi = chromatic_polynomial(g);
    let m = g.num_vertices;
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for (k, a) in chi.coefficients().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        coeffs[m - k] = if (m - k) % 2 == 0 { a.clone() } else { -a.clone() };
    }
    IntPolynomial::new(coeffs)
}

/// Removes simplicial vertices, lowest index first. Returns the removal
/// order if every vertex goes.
fn elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let adj = g.adjacency();
    let mut alive: u64 = (0..g.num_vertices).fold(0, |m, i| m | 1 << i);
    let mut order = Vec::with_capacity(g.num_vertices);
    while alive != 0 {
        let v = bits(alive).find(|&v| {
            let nb = adj[v] & alive;
            bits(nb).all(|w| (adj[w] | 1 << w) & nb == nb)
        })?;
        order.push(v);
        alive &= !(1 << v);
    }
    Some(order)
}

pub fn is_chordal(g: &Graph) -> bool {
    elimination_order(g).is_some()
}

/// An ordering `v_1, ..., v_m` in which each `v_i` has a complete
/// neighbourhood among `v_1, ..., v_{i-1}`.
pub fn supersolvable_series(g: &Graph) -> Option<Vec<usize>> {
    elimination_order(g).map(|mut o| {
        o.reverse();
        o
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GraphViolation {
    /// A triangle with two old edges and one new edge.
    Triangle { edges: [usize; 3] },
    /// The new edges are neither an isolated edge nor a star over a clique.
    NotStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphExtensionVerdict {
    pub solvable: bool,
    pub fibered: bool,
    pub violation: Option<GraphViolation>,
}

fn triangle_violation(tri: &[[usize; 3]], k: u64, full: u64) -> Option<[usize; 3]> {
    tri.iter()
        .find(|t| {
            let inside = t.iter().filter(|&&e| k & 1 << e != 0).count();
            let new = t.iter().filter(|&&e| full & !k & 1 << e != 0).count();
            inside == 2 && new == 1
        })
        .copied()
}

fn star_condition(g: &Graph, adj_k: &[u64], vk: u64, new: u64) -> bool {
    let new_edges: Vec<(usize, usize)> = bits(new).map(|e| g.edges[e]).collect();
    if let [(a, b)] = new_edges.as_slice() {
        if vk & (1 << a | 1 << b) == 0 {
            return true;
        }
    }
    let (a0, b0) = new_edges[0];
    [a0, b0].into_iter().any(|v| {
        let mut others = 0u64;
        for &(a, b) in &new_edges {
            if a == v {
                others |= 1 << b;
            } else if b == v {
                others |= 1 << a;
            } else {
                return false;
            }
        }
        others & !vk == 0 && bits(others).all(|w| (adj_k[w] | 1 << w) & others == others)
    })
}

fn adjacency_of(g: &Graph, mask: u64) -> Vec<u64> {
    let mut adj = vec![0u64; g.num_vertices];
    for e in bits(mask) {
        let (a, b) = g.edges[e];
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn classify(g: &Graph, tri: &[[usize; 3]], full: u64, k: u64) -> GraphExtensionVerdict {
    let fibered = g.edge_rank(full) == g.edge_rank(k) + 1;
    if let Some(edges) = triangle_violation(tri, k, full) {
        return GraphExtensionVerdict { solvable: false, fibered, violation: Some(GraphViolation::Triangle { edges }) };
    }
    let adj_k = adjacency_of(g, k);
    if !star_condition(g, &adj_k, g.vertex_mask(k), full & !k) {
        return GraphExtensionVerdict { solvable: false, fibered, violation: Some(GraphViolation::NotStar) };
    }
    GraphExtensionVerdict { solvable: true, fibered, violation: None }
}

/// Whether `(G_E, G_K)` is a solvable extension, for edge-index sets
/// `∅ ≠ K ⊊ E` of `g`.
pub fn solvable_graph_extension(g: &Graph, e_idx: &[usize], k_idx: &[usize]) -> Result<GraphExtensionVerdict> {
    if g.num_edges() > 64 {
        return Err(Error::CapExceeded { what: "graph edges", size: g.num_edges(), cap: 64 });
    }
    for &i in e_idx.iter().chain(k_idx) {
        if i >= g.num_edges() {
            return Err(Error::IndexOutOfRange { index: i, size: g.num_edges() });
        }
    }
    let full = mask_of(e_idx);
    let k = mask_of(k_idx);
    if k == 0 || k & !full != 0 || k == full {
        return Err(Error::InvalidInput("extension requires ∅ ≠ K ⊊ G".into()));
    }
    Ok(classify(g, &g.triangles(), full, k))
}

/// Backtracking search for a hypersolvable series of subgraphs.
pub fn hypersolvable_graph_series(g: &Graph, budget: u64) -> Result<Option<CompositionSeries>> {
    if g.num_edges() > 64 {
        return Err(Error::CapExceeded { what: "graph edges", size: g.num_edges(), cap: 64 });
    }
    let tri = g.triangles();
    let full = if g.num_edges() == 64 { u64::MAX } else { (1u64 << g.num_edges()) - 1 };
    let mut s = GraphSearch { g, tri: &tri, full, budget, nodes: 0, failed: HashSet::new(), path: Vec::new() };
    for e in 0..g.num_edges() {
        s.path = vec![1 << e];
        if s.run(1 << e)? {
            let mut steps = Vec::new();
            let mut exponents = Vec::new();
            let mut fibered_flags = Vec::new();
            let mut prev = 0u64;
            for &m in &s.path {
                steps.push(bits(m).collect());
                exponents.push((m & !prev).count_ones() as usize);
                fibered_flags.push(g.edge_rank(m) == g.edge_rank(prev) + 1);
                prev = m;
            }
            return Ok(Some(CompositionSeries { steps, exponents, fibered_flags }));
        }
    }
    Ok(None)
}

pub fn hypersolvable_graph_series_default(g: &Graph) -> Result<Option<CompositionSeries>> {
    hypersolvable_graph_series(g, DEFAULT_BUDGET)
}

struct GraphSearch<'a> {
    g: &'a Graph,
    tri: &'a [[usize; 3]],
    full: u64,
    budget: u64,
    nodes: u64,
    failed: HashSet<u64>,
    path: Vec<u64>,
}

impl GraphSearch<'_> {
    /// Candidate new-edge sets over `k`, smallest first.
    fn candidates(&self, k: u64) -> Vec<u64> {
        let rest = self.full & !k;
        let mut out: BTreeSet<(u32, u64)> = bits(rest).map(|e| (1, 1u64 << e)).collect();
        let adj_k = adjacency_of(self.g, k);
        let vk = self.g.vertex_mask(k);
        for v in 0..self.g.num_vertices {
            let spokes: Vec<usize> = bits(rest)
                .filter(|&e| {
                    let (a, b) = self.g.edges[e];
                    let w = if a == v { b } else if b == v { a } else { return false };
                    vk & 1 << w != 0
                })
                .collect();
            if spokes.len() < 2 || spokes.len() > 20 {
                continue;
            }
            for sub in 1u64..(1 << spokes.len()) {
                if sub.count_ones() < 2 {
                    continue;
                }
                let mask = bits(sub).fold(0u64, |m, i| m | 1 << spokes[i]);
                let ends: Vec<usize> = bits(mask)
                    .map(|e| {
                        let (a, b) = self.g.edges[e];
                        if a == v { b } else { a }
                    })
                    .collect();
                let clique = ends.iter().all(|&x| ends.iter().all(|&y| x == y || adj_k[x] & 1 << y != 0));
                if clique {
                    out.insert((mask.count_ones(), mask));
                }
            }
        }
        out.into_iter()
            .map(|(_, m)| m)
            .filter(|&m| classify(self.g, self.tri, k | m, k).solvable)
            .collect()
    }

    fn run(&mut self, k: u64) -> Result<bool> {
        if k == self.full {
            return Ok(true);
        }
        if self.failed.contains(&k) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        for m in self.candidates(k) {
            self.path.push(k | m);
            if self.run(k | m)? {
                return Ok(true);
            }
            self.path.pop();
        }
        self.failed.insert(k);
        Ok(false)
    }
}

/// All simple 4-cycles as sorted edge-index lists, in sorted order.
pub fn four_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let idx = g.edge_index();
    let mut out = BTreeSet::new();
    for a in 0..g.num_vertices {
        for c in a + 1..g.num_vertices {
            let common: Vec<usize> = bits(adj[a] & adj[c]).collect();
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    let mut cyc: Vec<usize> = [(a, b), (b, c), (c, d), (d, a)]
                        .iter()
                        .map(|&(x, y)| g.edge_between(&idx, x, y).expect("adjacent"))
                        .collect();
                    cyc.sort_unstable();
                    out.insert(cyc);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Simple cycles as edge masks, by depth-first search from each lowest vertex.
pub fn simple_cycles(g: &Graph) -> Vec<u64> {
    let adj = g.adjacency();
    let idx = g.edge_index();
    let mut out = BTreeSet::new();
    fn dfs(
        g: &Graph,
        adj: &[u64],
        idx: &HashMap<(usize, usize), usize>,
        start: usize,
        v: usize,
        visited: u64,
        edges: u64,
        out: &mut BTreeSet<u64>,
    ) {
        for w in bits(adj[v]) {
            let e = g.edge_between(idx, v, w).expect("adjacent");
            if w == start && edges.count_ones() >= 2 {
                out.insert(edges | 1 << e);
            } else if w > start && visited & 1 << w == 0 {
                dfs(g, adj, idx, start, w, visited | 1 << w, edges | 1 << e, out);
            }
        }
    }
    for s in 0..g.num_vertices {
        dfs(g, &adj, &idx, s, s, 1 << s, 0, &mut out);
    }
    out.into_iter().collect()
}

/// Number of `q`-edge sets containing no broken circuit (a cycle minus its
/// highest edge), for each `q`.
pub fn nbc_edge_counts(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    if g.num_edges() > cap {
        return Err(Error::CapExceeded { what: "graph nbc enumeration edges", size: g.num_edges(), cap });
    }
    let broken: Vec<u64> = simple_cycles(g)
        .into_iter()
        .map(|c| c & !(1u64 << (63 - c.leading_zeros())))
        .collect();
    let mut counts = vec![0usize; g.num_edges() + 1];
    for s in 0u64..(1 << g.num_edges()) {
        if broken.iter().all(|&b| s & b != b) {
            counts[s.count_ones() as usize] += 1;
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi2Presentation {
    pub model: &'static str,
    pub n_generators: usize,
    pub n_relations: usize,
    #[serde(skip)]
    pub presentation: PresentationMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleFreeReport {
    pub num_edges: usize,
    pub series: CompositionSeries,
    pub exponents: Vec<usize>,
    pub pi1_rank: usize,
    pub four_cycles: Vec<Vec<usize>>,
    pub pi2_zero: bool,
    pub coinvariant_rank: usize,
    /// Rank of the degree-3 kernel of the exterior algebra onto the
    /// Orlik-Solomon algebra; equals the number of 4-cycles.
    pub kernel_rank_3: usize,
    pub poincare: IntPolynomial,
    pub pi2: Pi2Presentation,
}

/// Signed boundary `∂(e_a e_b e_c e_d)` in the basis of 3-subsets.
fn boundary_vector(n: usize, cycle: &[usize]) -> Vec<i64> {
    let triples = crate::osalg::subsets_of_size(n, 3);
    let pos: HashMap<u64, usize> = triples.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut v = vec![0i64; triples.len()];
    let full = mask_of(cycle);
    for (r, &e) in cycle.iter().enumerate() {
        let face = full & !(1u64 << e);
        v[pos[&face]] += if r % 2 == 0 { 1 } else { -1 };
    }
    v
}

pub fn triangle_free_report(g: &Graph) -> Result<TriangleFreeReport> {
    if let Some(t) = g.triangles().first() {
        return Err(Error::TriangleFound(*t));
    }
    let n = g.num_edges();
    let steps: Vec<Vec<usize>> = (1..=n).map(|i| (0..i).collect()).collect();
    let fibered_flags = (1..=n).map(|i| {
        let m = mask_of(&steps[i - 1]);
        let prev = if i == 1 { 0 } else { mask_of(&steps[i - 2]) };
        g.edge_rank(m) == g.edge_rank(prev) + 1
    });
    let series = CompositionSeries { fibered_flags: fibered_flags.collect(), steps, exponents: vec![1; n] };
    let cycles = four_cycles(g);
    let arr = graphic_arrangement(g);
    let kernel_rank_3 = kernel_rank(&arr, 3)?;
    let pi2 = pi2_presentation(n, &cycles)?;
    Ok(TriangleFreeReport {
        num_edges: n,
        exponents: vec![1; n],
        series,
        pi1_rank: n,
        pi2_zero: cycles.is_empty(),
        coinvariant_rank: cycles.len(),
        four_cycles: cycles,
        kernel_rank_3,
        poincare: poincare(&arr)?,
        pi2,
    })
}

/// `∂_4` of the `n`-torus composed with the 4-cycle boundary vectors.
fn pi2_presentation(n: usize, cycles: &[Vec<usize>]) -> Result<Pi2Presentation> {
    let gens = cycles.len();
    let matrix = if n >= 4 && gens > 0 {
        let t = torus_complex(n)?;
        let d4 = t.boundary(4).expect("n ≥ 4");
        let cols: Vec<Vec<i64>> = cycles.iter().map(|c| boundary_vector(n, c)).collect();
        let mut m = LaurentMatrix::zero(d4.rows(), gens, n);
        for r in 0..d4.rows() {
            for (j, col) in cols.iter().enumerate() {
                let mut acc = LaurentPoly::zero(n);
                for (k, &c) in col.iter().enumerate() {
                    if c != 0 && !d4.get(r, k).is_zero() {
                        acc = &acc + &d4.get(r, k).scale(&BigInt::from(c));
                    }
                }
                m.set(r, j, acc);
            }
        }
        m
    } else {
        LaurentMatrix::zero(0, gens, n)
    };
    let presentation = PresentationMatrix::from_matrix(matrix);
    Ok(Pi2Presentation {
        model: PI2_MODEL_TAG,
        n_generators: presentation.n_generators,
        n_relations: presentation.n_relations,
        presentation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi2Comparison {
    pub first: TriangleFreeReport,
    pub second: TriangleFreeReport,
    /// Poincaré polynomials agree through degree 2.
    pub same_b2: bool,
    pub same_pi1: bool,
    /// Set when the coinvariant ranks differ, so the homotopy 2-types differ.
    pub distinct_two_type: bool,
}

pub fn compare_pi2(g1: &Graph, g2: &Graph) -> Result<Pi2Comparison> {
    let first = triangle_free_report(g1)?;
    let second = triangle_free_report(g2)?;
    Ok(Pi2Comparison {
        same_b2: first.poincare.truncate(2) == second.poincare.truncate(2),
        same_pi1: first.pi1_rank == second.pi1_rank,
        distinct_two_type: first.coinvariant_rank != second.coinvariant_rank,
        first,
        second,
    })
}
