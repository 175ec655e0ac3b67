//! Orlik-Solomon algebras through nbc bases, and quadratic Orlik-Solomon
//! algebras through exterior-algebra linear algebra.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arrangement::{indices_to_mask, Arrangement};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::poly::{binomial, IntPolynomial};

/// Default degree bound for quadratic OS dimensions.
pub const DEFAULT_DEGREE_BOUND: usize = 5;
/// Default bound on C(n, q), the number of degree-q exterior monomials.
pub const DEFAULT_WORK_CAP: usize = 100_000;

/// nbc sets grouped by cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NbcBasis {
    pub degrees: Vec<Vec<Vec<usize>>>,
}

impl NbcBasis {
    pub fn counts(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

/// Graded dimensions, index = degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
}

impl GradedDims {
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.dims.iter().map(|&d| BigInt::from(d)).collect())
    }
}

/// The identity ordering `0 < 1 < ... < n-1`.
pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn positions(n: usize, ordering: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    if ordering.len() != n {
        return Err(Error::InvalidInput(format!(
            "ordering has {} entries for {n} hyperplanes",
            ordering.len()
        )));
    }
    for (p, &i) in ordering.iter().enumerate() {
        if i >= n || pos[i] != usize::MAX {
            return Err(Error::InvalidInput("ordering is not a permutation".into()));
        }
        pos[i] = p;
    }
    Ok(pos)
}

/// Circuits with their largest element (under `ordering`) removed.
pub fn broken_circuits(arr: &Arrangement, ordering: &[usize]) -> Result<Vec<Vec<usize>>> {
    let pos = positions(arr.len(), ordering)?;
    let circuits = arr.circuits(arr.rank() + 1)?;
    let mut out: Vec<Vec<usize>> = circuits
        .circuits
        .into_iter()
        .map(|mut c| {
            let top = *c.iter().max_by_key(|&&i| pos[i]).expect("circuits are nonempty");
            c.retain(|&i| i != top);
            c
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

/// All subsets containing no broken circuit, by cardinality.
pub fn nbc_basis(arr: &Arrangement, ordering: &[usize]) -> Result<NbcBasis> {
    let n = arr.len();
    positions(n, ordering)?;
    let rank = arr.rank();
    let bc_masks: Vec<u64> = broken_circuits(arr, ordering)?
        .iter()
        .map(|b| indices_to_mask(b))
        .collect();
    let mut degrees: Vec<Vec<Vec<usize>>> = vec![Vec::new(); rank + 1];
    degrees[0].push(Vec::new());
    // Depth-first over sets listed in increasing ordering position; a set
    // containing a broken circuit has no nbc supersets.
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    while let Some((mask, next_pos)) = stack.pop() {
        for p in next_pos..n {
            let e = ordering[p];
            let m = mask | (1u64 << e);
            if bc_masks.iter().any(|&b| m & b == b) {
                continue;
            }
            let size = m.count_ones() as usize;
            if size > rank {
                continue;
            }
            let mut set: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            set.sort_unstable();
            degrees[size].push(set);
            stack.push((m, p + 1));
        }
    }
    for d in &mut degrees {
        d.sort();
    }
    while degrees.len() > 1 && degrees.last().is_some_and(Vec::is_empty) {
        degrees.pop();
    }
    Ok(NbcBasis { degrees })
}

/// Poincaré polynomial from nbc counts.
pub fn poincare_polynomial(arr: &Arrangement, ordering: &[usize]) -> Result<IntPolynomial> {
    let basis = nbc_basis(arr, ordering)?;
    Ok(IntPolynomial::new(basis.counts().into_iter().map(BigInt::from).collect()))
}

/// Poincaré polynomial under the natural ordering.
pub fn poincare(arr: &Arrangement) -> Result<IntPolynomial> {
    poincare_polynomial(arr, &natural_order(arr.len()))
}

/// Dimensions of the quadratic OS algebra in degrees `0..=max_degree`.
pub fn quadratic_os_dims(arr: &Arrangement, max_degree: usize) -> Result<GradedDims> {
    quadratic_os_dims_capped(arr, max_degree, DEFAULT_WORK_CAP)
}

/// As [`quadratic_os_dims`], refusing degrees whose monomial count exceeds `work_cap`.
pub fn quadratic_os_dims_capped(arr: &Arrangement, max_degree: usize, work_cap: usize) -> Result<GradedDims> {
    let n = arr.len();
    if n > 64 {
        return Err(Error::CapExceeded { what: "exterior algebra generators", size: n, cap: 64 });
    }
    let top = max_degree.min(n);
    for q in 0..=top {
        let width = binomial(n, q).to_usize().unwrap_or(usize::MAX);
        if width > work_cap {
            return Err(Error::CapExceeded { what: "degree-q exterior monomials", size: width, cap: work_cap });
        }
    }
    let triples = arr.rank2_flats()?.dependent_triples();
    let mut dims = Vec::with_capacity(top + 1);
    for q in 0..=top {
        dims.push(quadratic_dim(n, q, &triples));
    }
    Ok(GradedDims { dims })
}

fn quadratic_dim(n: usize, q: usize, triples: &[[usize; 3]]) -> usize {
    let width = binomial(n, q).to_usize().expect("checked against the work cap");
    if q < 2 || triples.is_empty() {
        return width;
    }
    let basis: Vec<u64> = subsets_of_size(n, q);
    let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut ech = SparseEchelon::new();
    let ks = subsets_of_size(n, q - 2);
    for t in triples {
        let bmask = indices_to_mask(t);
        // ∂e_B = e_bc - e_ac + e_ab
        let parts: [(u64, i64); 3] = [
            (bmask & !(1 << t[0]), 1),
            (bmask & !(1 << t[1]), -1),
            (bmask & !(1 << t[2]), 1),
        ];
        for &k in &ks {
            if (k & bmask).count_ones() >= 2 {
                continue;
            }
            let mut row: Vec<(usize, BigRational)> = Vec::with_capacity(3);
            for &(pm, s) in &parts {
                if pm & k != 0 {
                    continue;
                }
                let sign = s * wedge_sign(pm, k);
                row.push((index[&(pm | k)], BigRational::from_integer(sign.into())));
            }
            ech.insert(row);
            if ech.rank() == width {
                return 0;
            }
        }
    }
    width - ech.rank()
}

/// Sign of `e_A ∧ e_B` relative to `e_{A ∪ B}` for disjoint sorted sets.
pub fn wedge_sign(a: u64, b: u64) -> i64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // elements of a greater than j
        inversions += a.checked_shr(j + 1).unwrap_or(0).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `q`-subsets of `0..n` as bitmasks, in lexicographic order.
pub fn subsets_of_size(n: usize, q: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if q <= n {
        rec(0, n, q, 0, &mut out);
    }
    out
}

/// Rank of the kernel of the projection from the quadratic OS algebra onto
/// the OS algebra in degree `q`.
pub fn kernel_rank(arr: &Arrangement, q: usize) -> Result<usize> {
    let quad = quadratic_os_dims(arr, q)?;
    let p = poincare(arr)?;
    let pq = p.coeff(q).to_usize().expect("Betti numbers fit in usize");
    Ok(quad.dims.get(q).copied().unwrap_or(0) - pq)
}

/// Exponent product `∏ (1 + d T)`, convenient for comparisons.
pub fn exponent_polynomial(exponents: &[usize]) -> IntPolynomial {
    IntPolynomial::exponent_product(exponents)
}

/// True if `P̄` dominates `P` coefficientwise through `degree`, with
/// equality in degrees up to two.
pub fn quadratic_dominates(pbar: &GradedDims, p: &IntPolynomial) -> bool {
    pbar.dims.iter().enumerate().all(|(q, &d)| {
        let b = p.coeff(q);
        if q <= 2 {
            BigInt::from(d) == b
        } else {
            BigInt::from(d) >= b
        }
    }) && !p.coefficients().is_empty()
        && p.coeff(0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn boolean(n: usize) -> Arrangement {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Arrangement::central_from_rows(n, &rows).unwrap()
    }

    fn braid(m: usize) -> Arrangement {
        let mut rows = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let mut r = vec![0i64; m];
                r[i] = 1;
                r[j] = -1;
                rows.push(r);
            }
        }
        Arrangement::central_from_rows(m, &rows).unwrap()
    }

    /// Betti numbers through the Möbius function of the lattice of flats.
    fn mobius_oracle(arr: &Arrangement) -> Vec<i64> {
        let n = arr.len();
        assert!(n <= 10);
        let full = 1u64 << n;
        let ranks: Vec<usize> = (0..full).map(|m| arr.mask_rank(m)).collect();
        // closure(S) = all elements not increasing the rank
        let closure = |m: u64| -> u64 {
            (0..n).fold(m, |acc, i| if ranks[(m | 1 << i) as usize] == ranks[m as usize] { acc | 1 << i } else { acc })
        };
        let mut flats: Vec<u64> = (0..full).filter(|&m| closure(m) == m).collect();
        flats.sort_by_key(|&f| (ranks[f as usize], f));
        let mut mu: HashMap<u64, i64> = HashMap::new();
        for &f in &flats {
            let v = if f == 0 {
                1
            } else {
                -flats
                    .iter()
                    .filter(|&&g| g != f && g & f == g)
                    .map(|g| mu[g])
                    .sum::<i64>()
            };
            mu.insert(f, v);
        }
        let r = arr.rank();
        let mut w = vec![0i64; r + 1];
        for &f in &flats {
            w[ranks[f as usize]] += mu[&f].abs();
        }
        w
    }

    #[test]
    fn broken_circuits_of_small_arrangements() {
        assert!(broken_circuits(&boolean(3), &natural_order(3)).unwrap().is_empty());
        // forms 12, 13, 23
        assert_eq!(broken_circuits(&braid(3), &natural_order(3)).unwrap(), vec![vec![0, 1]]);
        let rows: Vec<Vec<i64>> = (1..=4).map(|k: i64| vec![1, k, k * k]).collect();
        let gen = Arrangement::central_from_rows(3, &rows).unwrap();
        assert_eq!(broken_circuits(&gen, &natural_order(4)).unwrap(), vec![vec![0, 1, 2]]);
        assert!(broken_circuits(&gen, &[0, 1]).is_err());
    }

    #[test]
    fn nbc_examples() {
        let b = nbc_basis(&boolean(3), &natural_order(3)).unwrap();
        assert_eq!(b.counts(), vec![1, 3, 3, 1]);
        let b = nbc_basis(&braid(3), &natural_order(3)).unwrap();
        assert_eq!(b.counts(), vec![1, 3, 2]);
        assert_eq!(b.degrees[2], vec![vec![0, 2], vec![1, 2]]);
        assert_eq!(poincare(&braid(4)).unwrap(), IntPolynomial::exponent_product(&[1, 2, 3]));
    }

    #[test]
    fn quadratic_matches_os_for_supersolvable_braid() {
        let a = braid(4);
        let q = quadratic_os_dims(&a, 5).unwrap();
        assert_eq!(q.dims, vec![1, 6, 11, 6, 0, 0]);
        assert_eq!(kernel_rank(&a, 3).unwrap(), 0);
    }

    #[test]
    fn quadratic_of_generic_planes_is_exterior() {
        let rows: Vec<Vec<i64>> = (1..=5).map(|k: i64| vec![1, k, k * k]).collect();
        let a = Arrangement::central_from_rows(3, &rows).unwrap();
        let q = quadratic_os_dims(&a, 5).unwrap();
        assert_eq!(q.dims, vec![1, 5, 10, 10, 5, 1]);
        let p = poincare(&a).unwrap();
        assert_eq!(p, IntPolynomial::from_i64s(&[1, 5, 10, 6]));
        assert_eq!(kernel_rank(&a, 3).unwrap(), 4);
        assert!(matches!(quadratic_os_dims_capped(&a, 3, 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn oracle_agrees_on_braid_arrangements() {
        for m in 2..=4 {
            let a = braid(m);
            let p = poincare(&a).unwrap();
            let w = mobius_oracle(&a);
            assert_eq!(p, IntPolynomial::from_i64s(&w));
        }
    }

    #[test]
    fn wedge_signs_and_subsets() {
        // e_1 ∧ e_0 = -e_01
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        // e_{12} ∧ e_0 = e_0 e_1 e_2
        assert_eq!(wedge_sign(0b110, 0b001), 1);
        assert_eq!(subsets_of_size(5, 2).len(), 10);
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert!(subsets_of_size(2, 3).is_empty());
        assert_eq!(subsets_of_size(3, 3), vec![0b111]);
    }

    fn arb_central() -> impl Strategy<Value = Arrangement> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..9).prop_filter_map("distinct forms", |rows| {
            let mut forms = Vec::new();
            for r in rows {
                if let Ok(f) = crate::arrangement::LinearForm::from_i64s(&r, 0) {
                    if !forms.contains(&f) {
                        forms.push(f);
                    }
                }
            }
            (!forms.is_empty()).then(|| Arrangement::new(3, forms, true).ok()).flatten()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn poincare_is_ordering_independent_and_matches_oracle(a in arb_central(), seed in 0u64..1000) {
            let n = a.len();
            let mut order = natural_order(n);
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let p1 = poincare(&a).unwrap();
            let p2 = poincare_polynomial(&a, &order).unwrap();
            prop_assert_eq!(&p1, &p2);
            prop_assert_eq!(p1.clone(), IntPolynomial::from_i64s(&mobius_oracle(&a)));
            prop_assert!(p1.eval(&BigInt::from(-1)).is_zero() || n == 0 || a.rank() == 0);
        }

        #[test]
        fn quadratic_dominates_os(a in arb_central()) {
            let q = quadratic_os_dims(&a, 4).unwrap();
            let p = poincare(&a).unwrap();
            prop_assert!(quadratic_dominates(&q, &p));
        }

        #[test]
        fn nbc_sets_are_independent(a in arb_central()) {
            let b = nbc_basis(&a, &natural_order(a.len())).unwrap();
            for (q, sets) in b.degrees.iter().enumerate() {
                for s in sets {
                    prop_assert_eq!(s.len(), q);
                    prop_assert_eq!(rank(s.iter().map(|&i| a.forms()[i].coefficients().to_vec()).collect()), q);
                }
            }
        }
    }
}
