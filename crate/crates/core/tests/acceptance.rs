//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arrhom::arrangement::Arrangement;
use arrhom::catalog;
use arrhom::chaincx::{
    decone_model, hattori_model, left_module_form, product_model, skeleton_presentation, FactorKind,
    LaurentMatrix, MinimalChainComplex, PresentationMatrix,
};
use arrhom::fitcv::{
    apply_monomial_map, coker_dim_at, fitting_ideal, hilbert_function, monomial_substitution, random_torus_point,
    variety_membership,
};
use arrhom::graphs::{
    compare_pi2, graphic_arrangement, hypersolvable_graph_series_default, is_chordal, poincare_from_chromatic,
    solvable_graph_extension, supersolvable_series, Graph,
};
use arrhom::homotopy::{connectivity, Connectivity};
use arrhom::hypersolv::{
    all_exponent_multisets, composition_series, is_supersolvable, solvable_extension, ExtensionKind, SearchConfig,
};
use arrhom::linalg::rat;
use arrhom::osalg::{poincare_polynomial, quadratic_os_dims};
use arrhom::poly::binomial;
use arrhom::{GaussianRational, IntPolynomial, LaurentPoly};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn one() -> GaussianRational {
    Complex::new(rat(1), rat(0))
}

fn supersolvable_cone() -> Check {
    let a = catalog::five_lines_supersolvable().cone().map_err(err)?;
    let r = connectivity(&a, SearchConfig::default()).map_err(err)?;
    ensure!(r.supersolvable, "not reported supersolvable");
    ensure!(r.series.length() == 3, "series length {}", r.series.length());
    ensure!(r.series.exponent_multiset() == [1, 2, 3], "exponents {:?}", r.series.exponent_multiset());
    ensure!(r.p == Connectivity::Infinite, "p = {}", r.p);
    ensure!(r.aspherical && r.consistent, "aspherical {} consistent {}", r.aspherical, r.consistent);
    Ok(())
}

fn fan_cone() -> Check {
    let a = catalog::fan_lines().cone().map_err(err)?;
    let r = connectivity(&a, SearchConfig::default()).map_err(err)?;
    ensure!(r.series.length() == 4, "series length {}", r.series.length());
    ensure!(r.series.exponent_multiset() == [1, 2, 2, 2], "exponents {:?}", r.series.exponent_multiset());
    ensure!(r.p == Connectivity::Finite(2), "p = {}", r.p);
    ensure!(r.c_next == BigInt::from(8), "c_3 = {}", r.c_next);
    let y = decone_model(&r.series.exponents).map_err(err)?;
    ensure!(y.ranks() == [1, 6, 12, 8], "model ranks {:?}", y.ranks());
    let pres = skeleton_presentation(&y, 2).map_err(err)?;
    ensure!(pres.n_generators == 8 && pres.n_relations == 0, "presentation {}x{}", pres.n_relations, pres.n_generators);
    ensure!(pres.coinvariant_rank() == 8, "coinvariant rank {}", pres.coinvariant_rank());
    let f1 = fitting_ideal(&pres, 1).map_err(err)?;
    ensure!(f1.is_zero_ideal(), "F_1 is not zero");
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa1);
    for _ in 0..25 {
        let t = random_torus_point(&mut rng, pres.symbols.len());
        ensure!(variety_membership(&f1, &t).map_err(err)?, "V_1 misses a point");
        ensure!(coker_dim_at(&pres, &t).map_err(err)? == 8, "coker dimension drops");
    }
    Ok(())
}

fn five_line_expected() -> LaurentMatrix {
    let n = 5;
    let one = LaurentPoly::one(n);
    let x = |i: usize| LaurentPoly::var_pow(n, i - 1, 1);
    let z = LaurentPoly::zero(n);
    LaurentMatrix::from_rows(
        n,
        vec![
            vec![&one - &x(4), &one - &x(3), z.clone(), &x(2) - &one, z.clone(), &one - &x(1), z.clone()],
            vec![&one - &x(5), z.clone(), &one - &x(3), z.clone(), &x(2) - &one, z.clone(), &one - &x(1)],
        ],
    )
    .expect("rectangular")
}

/// Coefficients of `(7 - 2t)/(1 - t)^5` through `t^d`.
fn hilbert_oracle(d: usize) -> Vec<usize> {
    (0..=d)
        .map(|k| {
            let c = |j: usize| binomial(j + 4, 4);
            let v = BigInt::from(7) * c(k) - if k >= 1 { BigInt::from(2) * c(k - 1) } else { BigInt::from(0) };
            usize::try_from(v).expect("positive")
        })
        .collect()
}

fn five_line_hypersolvable() -> Check {
    let a = catalog::five_lines_hypersolvable().cone().map_err(err)?;
    let r = connectivity(&a, SearchConfig::default()).map_err(err)?;
    ensure!(r.series.length() == 5, "series length {}", r.series.length());
    ensure!(r.series.exponent_multiset() == [1, 1, 1, 1, 2], "exponents {:?}", r.series.exponent_multiset());
    ensure!(r.p == Connectivity::Finite(2), "p = {}", r.p);
    let y = decone_model(&r.series.exponents).map_err(err)?;
    let right = skeleton_presentation(&y, 2).map_err(err)?;
    ensure!(right.n_relations == 2 && right.n_generators == 7, "presentation {}x{}", right.n_relations, right.n_generators);
    ensure!(BigInt::from(right.coinvariant_rank()) == r.c_next, "coinvariants {} vs c_3 {}", right.coinvariant_rank(), r.c_next);
    let left = left_module_form(&right);
    ensure!(left.matrix == five_line_expected(), "left-module matrix differs:\n{:?}", left.matrix.render(&left.symbols));

    let f6 = fitting_ideal(&left, 6).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x558);
    for _ in 0..25 {
        let mut t = random_torus_point(&mut rng, 5);
        t[0] = one();
        t[1] = one();
        t[2] = one();
        ensure!(variety_membership(&f6, &t).map_err(err)?, "V_6 misses a point with t1=t2=t3=1");
    }
    let mut off = 0;
    while off < 50 {
        let mut t = random_torus_point(&mut rng, 5);
        for z in t.iter_mut().take(3) {
            if rng.gen_bool(0.4) {
                *z = one();
            }
        }
        if t[..3].iter().all(|z| *z == one()) {
            continue;
        }
        ensure!(!variety_membership(&f6, &t).map_err(err)?, "V_6 contains a point off the locus");
        off += 1;
    }
    let h = hilbert_function(&left, 3).map_err(err)?;
    let oracle = hilbert_oracle(3);
    ensure!(oracle == [7, 33, 95, 215], "oracle expansion {oracle:?}");
    ensure!(h.values == oracle, "Hilbert function {:?}", h.values);
    ensure!(h.not_nilpotent, "nilpotency flag not raised");
    let hr = hilbert_function(&right, 3).map_err(err)?;
    ensure!(hr.values == oracle, "right-module Hilbert function {:?}", hr.values);
    Ok(())
}

fn figure_graph(second: bool) -> Graph {
    let mut e = vec![(1, 2), (2, 3), (3, 4), (5, 4), (7, 5), (6, 7), (1, 6), (1, 5), (6, 3)];
    if second {
        e[7] = (2, 7);
    }
    Graph::from_edges(7, &e).expect("valid graph")
}

fn figure_graphs() -> Check {
    let (g1, g2) = (figure_graph(false), figure_graph(true));
    for g in [&g1, &g2] {
        ensure!(g.triangles().is_empty(), "triangle found");
        let s = hypersolvable_graph_series_default(g).map_err(err)?.ok_or("no series")?;
        ensure!(s.length() == 9, "series length {}", s.length());
        let trivial: Vec<Vec<usize>> = (1..=9).map(|i| (0..i).collect()).collect();
        ensure!(s.steps == trivial, "series is not one edge at a time");
        ensure!(!is_chordal(g), "chordal");
        let p = poincare_from_chromatic(g);
        ensure!(p.coeff(1) == BigInt::from(9) && p.coeff(2) == BigInt::from(36), "b1, b2 = {}, {}", p.coeff(1), p.coeff(2));
    }
    let c = compare_pi2(&g1, &g2).map_err(err)?;
    ensure!(c.first.four_cycles == [vec![0, 1, 6, 8], vec![4, 5, 6, 7]], "G1 4-cycles {:?}", c.first.four_cycles);
    ensure!(
        c.second.four_cycles == [vec![0, 1, 6, 8], vec![0, 5, 6, 7], vec![1, 5, 7, 8]],
        "G2 4-cycles {:?}",
        c.second.four_cycles
    );
    ensure!(c.first.coinvariant_rank == 2 && c.second.coinvariant_rank == 3, "coinvariant ranks");
    ensure!(c.first.kernel_rank_3 == 2 && c.second.kernel_rank_3 == 3, "kernel ranks disagree with 4-cycles");
    ensure!(c.first.pi1_rank == 9 && c.same_pi1 && c.same_b2, "π1 or b2 differ");
    ensure!(c.distinct_two_type, "distinct 2-type flag not set");
    Ok(())
}

fn hattori() -> Check {
    let ell = 2;
    for n in 3..=6usize {
        let h = hattori_model(n, ell).map_err(err)?;
        ensure!(h.vanishing == (2..ell).collect::<Vec<_>>(), "vanishing degrees {:?}", h.vanishing);
        let res = h.resolution.as_ref().ok_or("no resolution")?;
        ensure!(res.length() == n - ell, "n={n}: resolution length {}", res.length());
        let pres = h.presentation.as_ref().ok_or("no presentation")?;
        let expected = binomial(n, ell + 1);
        ensure!(h.coinvariant_rank == expected, "n={n}: closed form {}", h.coinvariant_rank);
        ensure!(BigInt::from(pres.coinvariant_rank()) == expected, "n={n}: presentation gives {}", pres.coinvariant_rank());
        let r = connectivity(&catalog::generic_cone(n), SearchConfig::default()).map_err(err)?;
        ensure!(r.p == Connectivity::Finite(ell), "n={n}: p = {}", r.p);
        ensure!(r.c_next == expected, "n={n}: c_3 = {}", r.c_next);
        if n == 3 {
            ensure!(pres.n_generators == 1 && pres.n_relations == 0, "n=3: π2 not free of rank 1");
        }
    }
    Ok(())
}

fn braid_centroid() -> Check {
    let a = catalog::braid_with_centroid_plane(5).map_err(err)?;
    ensure!(a.len() == 11, "|A| = {}", a.len());
    let r = connectivity(&a, SearchConfig::default()).map_err(err)?;
    ensure!(r.p == Connectivity::Finite(2), "p = {}", r.p);
    let dims = quadratic_os_dims(&a, 3).map_err(err)?.dims;
    let p3 = r.p_poly.coeff(3);
    ensure!(BigInt::from(dims[3]) > p3, "rank Ā³ = {} vs rank A³ = {}", dims[3], p3);
    for k in 0..=2 {
        ensure!(BigInt::from(dims[k]) == r.p_poly.coeff(k), "degree {k} disagrees");
    }
    ensure!(r.consistent, "report inconsistent");
    Ok(())
}

// ---- generators for the property suites ----

fn random_arrangement(rng: &mut ChaCha8Rng, dim: usize, max: usize) -> Arrangement {
    loop {
        let n = rng.gen_range(dim..=max);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut tries = 0;
        while rows.len() < n && tries < 200 {
            tries += 1;
            let r: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
            if r.iter().all(|&x| x == 0) {
                continue;
            }
            let g = r.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            let lead = *r.iter().find(|&&x| x != 0).expect("nonzero");
            let norm: Vec<i64> = r.iter().map(|x| x / g * lead.signum()).collect();
            if seen.insert(norm.clone()) {
                rows.push(norm);
            }
        }
        if let Ok(a) = Arrangement::central_from_rows(dim, &rows) {
            if a.rank() == dim {
                return a;
            }
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> Graph {
    loop {
        let m = rng.gen_range(3..=max_vertices);
        let mut all: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        all.shuffle(rng);
        let k = rng.gen_range(2..=max_edges.min(all.len()));
        let mut edges: Vec<(usize, usize)> = all[..k].to_vec();
        let used: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let relabel: Vec<usize> = (0..m).map(|v| used.range(..v).count()).collect();
        for e in &mut edges {
            *e = (relabel[e.0], relabel[e.1]);
        }
        if let Ok(g) = Graph::new(used.len(), edges) {
            return g;
        }
    }
}

fn random_model(rng: &mut ChaCha8Rng, max_vars: usize) -> MinimalChainComplex {
    loop {
        let nf = rng.gen_range(1..=3);
        let parts: Vec<(FactorKind, usize)> = (0..nf)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    (FactorKind::Abelian, rng.gen_range(1..=4))
                } else {
                    (FactorKind::Free, rng.gen_range(1..=3))
                }
            })
            .collect();
        if parts.iter().map(|p| p.1).sum::<usize>() <= max_vars {
            return product_model(&parts).expect("valid model");
        }
    }
}

/// Random point, sometimes with coordinates pinned to 1 to land on jump loci.
fn special_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    let mut t = random_torus_point(rng, n);
    let pin = rng.gen_range(0..=n);
    for z in t.iter_mut().take(pin) {
        *z = one();
    }
    t.shuffle(rng);
    t
}

const CASES: usize = 200;

fn ordering_independence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa);
    for case in 0..CASES {
        let dim = rng.gen_range(2..=4);
        let a = random_arrangement(&mut rng, dim, 8);
        let natural: Vec<usize> = (0..a.len()).collect();
        let base = poincare_polynomial(&a, &natural).map_err(err)?;
        let mut order = natural.clone();
        order.shuffle(&mut rng);
        let p = poincare_polynomial(&a, &order).map_err(err)?;
        ensure!(p == base, "case {case}: P depends on the ordering {order:?}");
    }
    Ok(())
}

fn complexes_are_minimal() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb);
    for case in 0..CASES {
        let y = random_model(&mut rng, 8);
        ensure!(y.is_complex().map_err(err)?, "case {case}: ∂∂ ≠ 0 for ranks {:?}", y.ranks());
        ensure!(y.is_epsilon_minimal(), "case {case}: not ε-minimal");
    }
    Ok(())
}

fn presentation_case(rng: &mut ChaCha8Rng) -> PresentationMatrix {
    loop {
        let y = random_model(rng, 6);
        if y.dim() < 2 {
            continue;
        }
        let p = rng.gen_range(0..=y.dim() - 1);
        let pres = skeleton_presentation(&y, p).expect("p + 1 ≤ dim");
        if pres.n_generators <= 8 && pres.n_relations <= 8 {
            return pres;
        }
    }
}

fn minors_match_coker() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc);
    let mut proper = 0;
    for case in 0..CASES {
        let pres = presentation_case(&mut rng);
        let t = special_point(&mut rng, pres.symbols.len());
        let dim = coker_dim_at(&pres, &t).map_err(err)?;
        if dim > 0 && dim < pres.n_generators {
            proper += 1;
        }
        for k in 1..=pres.n_generators {
            let f = fitting_ideal(&pres, k).map_err(err)?;
            let member = variety_membership(&f, &t).map_err(err)?;
            ensure!(member == (dim >= k), "case {case}: k={k}, coker dim {dim}, minors say {member}");
        }
    }
    ensure!(proper >= CASES / 4, "only {proper} cases with 0 < dim coker < b");
    Ok(())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(1..=2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                for r in m.iter_mut() {
                    r[j] += c * r[i];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    m
}

fn monomial_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd);
    for case in 0..CASES {
        let pres = presentation_case(&mut rng);
        let n = pres.symbols.len();
        let phi = random_unimodular(&mut rng, n);
        let sub = monomial_substitution(&pres, &phi).map_err(err)?;
        let s = special_point(&mut rng, n);
        let image = apply_monomial_map(&phi, &s);
        let d1 = coker_dim_at(&sub, &s).map_err(err)?;
        let d2 = coker_dim_at(&pres, &image).map_err(err)?;
        ensure!(d1 == d2, "case {case}: coker dims {d1} vs {d2}");
        let k = rng.gen_range(1..=pres.n_generators);
        let a = variety_membership(&fitting_ideal(&sub, k).map_err(err)?, &s).map_err(err)?;
        let b = variety_membership(&fitting_ideal(&pres, k).map_err(err)?, &image).map_err(err)?;
        ensure!(a == b, "case {case}: V_{k} membership differs");
    }
    Ok(())
}

fn graph_arrangement_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe);
    for case in 0..CASES {
        let g = random_graph(&mut rng, 8, 10);
        let arr = graphic_arrangement(&g);
        let n = g.num_edges();
        let full: Vec<usize> = (0..n).collect();
        for _ in 0..5 {
            let mut k: Vec<usize> = full.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            if k.is_empty() {
                k.push(0);
            }
            if k.len() == n {
                k.pop();
            }
            let gv = solvable_graph_extension(&g, &full, &k).map_err(err)?;
            let av = solvable_extension(&arr, &full, &k).map_err(err)?;
            ensure!(gv.solvable == (av.kind != ExtensionKind::NotSolvable), "case {case}: verdicts differ for K={k:?} in {g:?}");
        }
        let gs = hypersolvable_graph_series_default(&g).map_err(err)?;
        let as_ = composition_series(&arr, SearchConfig::default()).map_err(err)?;
        ensure!(gs.is_some() == as_.is_some(), "case {case}: hypersolvability differs for {g:?}");
        if let (Some(x), Some(y)) = (gs, as_) {
            ensure!(x.exponent_multiset() == y.exponent_multiset(), "case {case}: exponents differ");
        }
    }
    Ok(())
}

fn supersolvable_three_ways() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf);
    for case in 0..CASES {
        let g = random_graph(&mut rng, 8, 12);
        let chordal = is_chordal(&g);
        let order = supersolvable_series(&g).is_some();
        let arr = is_supersolvable(&graphic_arrangement(&g), SearchConfig::default()).map_err(err)?;
        ensure!(chordal == order && order == arr.supersolvable, "case {case}: {chordal} {order} {} for {g:?}", arr.supersolvable);
        ensure!(arr.consistent, "case {case}: supersolvability report inconsistent");
    }
    Ok(())
}

fn quadratic_dominates() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    for case in 0..CASES {
        let dim = rng.gen_range(3..=4);
        let a = random_arrangement(&mut rng, dim, 8);
        let p = arrhom::osalg::poincare(&a).map_err(err)?;
        let dims = quadratic_os_dims(&a, a.rank()).map_err(err)?.dims;
        for (k, &d) in dims.iter().enumerate() {
            let pk = p.coeff(k);
            ensure!(BigInt::from(d) >= pk, "case {case}: degree {k}: {d} < {pk}");
            if k <= 2 {
                ensure!(BigInt::from(d) == pk, "case {case}: degree {k}: {d} ≠ {pk}");
            }
        }
    }
    Ok(())
}

fn series_length_unique() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let mut found = 0;
    let mut attempts = 0;
    while found < CASES {
        attempts += 1;
        ensure!(attempts < 20 * CASES, "only {found} hypersolvable instances in {attempts} attempts");
        let a = if rng.gen_bool(0.5) {
            graphic_arrangement(&random_graph(&mut rng, 6, 8))
        } else {
            random_arrangement(&mut rng, 3, 7)
        };
        let all = all_exponent_multisets(&a, 8).map_err(err)?;
        if all.is_empty() {
            continue;
        }
        found += 1;
        ensure!(all.len() == 1, "several exponent multisets {all:?}");
        let lengths: BTreeSet<usize> = all.iter().map(Vec::len).collect();
        ensure!(lengths.len() == 1, "series lengths differ: {lengths:?}");
        let e = all.iter().next().expect("nonempty");
        let dims = quadratic_os_dims(&a, a.rank()).map_err(err)?.dims;
        let pbar = IntPolynomial::exponent_product(e);
        for (k, &d) in dims.iter().enumerate() {
            ensure!(pbar.coeff(k) == BigInt::from(d), "exponents {e:?} disagree with quadratic dimensions {dims:?}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, fn() -> Check)> = vec![
        ("supersolvable five-line cone", Duration::from_secs(1), supersolvable_cone),
        ("fan cone, free π2 of rank 8", Duration::from_secs(5), fan_cone),
        ("five-line hypersolvable cone", Duration::from_secs(30), five_line_hypersolvable),
        ("triangle-free figure graphs", Duration::from_secs(5), figure_graphs),
        ("generic arrangements n=3..6, l=2", Duration::from_secs(5), hattori),
        ("braid arrangement with centroid plane", Duration::from_secs(60), braid_centroid),
        ("property: ordering independence of P", Duration::MAX, ordering_independence),
        ("property: ∂∂=0 and ε-minimality", Duration::MAX, complexes_are_minimal),
        ("property: minors vs cokernel dimension", Duration::MAX, minors_match_coker),
        ("property: monomial invariance", Duration::MAX, monomial_invariance),
        ("property: graph and arrangement solvability", Duration::MAX, graph_arrangement_agreement),
        ("property: three-way supersolvability", Duration::MAX, supersolvable_three_ways),
        ("property: P̄ dominates P, equal through degree 2", Duration::MAX, quadratic_dominates),
        ("property: series length uniqueness", Duration::MAX, series_length_unique),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:.0?}")),
            other => other,
        };
        match outcome {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
