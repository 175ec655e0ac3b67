//! Exact hyperplane arrangements over the rationals.
//!
//! Forms are stored canonically (first nonzero coefficient equal to one), so
//! proportional forms compare equal. Matroid data (ranks, rank-2 flats,
//! circuits) is computed on central arrangements only; affine inputs are
//! coned first.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, rank};

/// Default cap on |A| for circuit enumeration.
pub const DEFAULT_CIRCUIT_CAP: usize = 20;

/// An affine or linear form `c·z + c0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coefficients: Vec<BigRational>,
    constant: BigRational,
}

impl LinearForm {
    /// Builds a canonical form: the first nonzero coefficient is scaled to one.
    pub fn new(coefficients: Vec<BigRational>, constant: BigRational) -> Result<Self> {
        let Some(lead) = coefficients.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidInput(
                "form has a zero coefficient vector".into(),
            ));
        };
        let inv = BigRational::one() / lead;
        Ok(Self {
            coefficients: coefficients.into_iter().map(|c| c * &inv).collect(),
            constant: constant * inv,
        })
    }

    pub fn linear(coefficients: Vec<BigRational>) -> Result<Self> {
        Self::new(coefficients, BigRational::zero())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64s(coefficients: &[i64], constant: i64) -> Result<Self> {
        Self::new(
            coefficients.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            BigRational::from_integer(constant.into()),
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_linear(&self) -> bool {
        self.constant.is_zero()
    }

    /// Index of the first coordinate with a nonzero coefficient.
    pub fn lead_index(&self) -> usize {
        self.coefficients
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical forms have a nonzero coefficient")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .chain(std::iter::once(&self.constant))
            .map(ToString::to_string)
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite set of distinct hyperplanes in `C^m`, kept in input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    ambient_dim: usize,
    forms: Vec<LinearForm>,
    central: bool,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, forms: Vec<LinearForm>, central: bool) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (i, f) in forms.iter().enumerate() {
            if f.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: f.dim() });
            }
            if central && !f.is_linear() {
                return Err(Error::InvalidInput(format!(
                    "form {} has a nonzero constant in a central arrangement",
                    i + 1
                )));
            }
            if !seen.insert(f) {
                return Err(Error::InvalidInput(format!(
                    "form {} repeats an earlier hyperplane",
                    i + 1
                )));
            }
        }
        Ok(Self { ambient_dim, forms, central })
    }

    /// Central arrangement from integer coefficient rows.
    pub fn central_from_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let forms = rows
            .iter()
            .map(|r| LinearForm::from_i64s(r, 0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, forms, true)
    }

    /// Affine arrangement from integer rows whose last entry is the constant.
    pub fn affine_from_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let forms = rows
            .iter()
            .map(|r| {
                if r.len() != ambient_dim + 1 {
                    return Err(Error::DimensionMismatch { expected: ambient_dim + 1, got: r.len() });
                }
                LinearForm::from_i64s(&r[..ambient_dim], r[ambient_dim])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, forms, false)
    }

    /// Parses the text format: a `dim m central|affine` header, then one form
    /// per line (`m` rationals, plus the constant for affine input).
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, bool)> = None;
        let mut forms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line_no = lineno + 1;
            let perr = |message: String| Error::Parse { line: line_no, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 3 || tokens[0] != "dim" {
                        return Err(perr("expected header `dim m central|affine`".into()));
                    }
                    let m: usize = tokens[1]
                        .parse()
                        .map_err(|_| perr(format!("bad dimension {:?}", tokens[1])))?;
                    let central = match tokens[2] {
                        "central" => true,
                        "affine" => false,
                        other => return Err(perr(format!("unknown kind {other:?}"))),
                    };
                    if m == 0 {
                        return Err(perr("dimension must be positive".into()));
                    }
                    header = Some((m, central));
                }
                Some((m, central)) => {
                    let want = if central { m } else { m + 1 };
                    if tokens.len() != want {
                        return Err(perr(format!("expected {want} entries, found {}", tokens.len())));
                    }
                    let values = tokens
                        .iter()
                        .map(|t| parse_rational(t).ok_or_else(|| perr(format!("bad rational {t:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    let (coeffs, constant) = if central {
                        (values, BigRational::zero())
                    } else {
                        let mut v = values;
                        let c = v.pop().unwrap_or_default();
                        (v, c)
                    };
                    let form = LinearForm::new(coeffs, constant).map_err(|e| perr(e.to_string()))?;
                    forms.push(form);
                }
            }
        }
        let Some((m, central)) = header else {
            return Err(Error::Parse { line: 0, message: "missing header".into() });
        };
        Self::new(m, forms, central)
    }

    /// Serializes back to the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dim {} {}\n",
            self.ambient_dim,
            if self.central { "central" } else { "affine" }
        );
        for f in &self.forms {
            let mut parts: Vec<String> = f.coefficients.iter().map(ToString::to_string).collect();
            if !self.central {
                parts.push(f.constant.to_string());
            }
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    fn require_central(&self) -> Result<()> {
        if self.central {
            Ok(())
        } else {
            Err(Error::NotCentral)
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.len() })
        }
    }

    /// Rank of the coefficient vectors. For affine input this equals the
    /// rank of the cone minus one.
    pub fn rank(&self) -> usize {
        self.subset_rank(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Rank of the coefficient vectors of the given forms.
    pub fn subset_rank(&self, indices: &[usize]) -> usize {
        rank(indices.iter().map(|&i| self.forms[i].coefficients.clone()).collect())
    }

    /// Rank of the forms selected by a bitmask.
    pub fn mask_rank(&self, mask: u64) -> usize {
        self.subset_rank(&mask_to_indices(mask))
    }

    pub fn is_independent(&self, indices: &[usize]) -> bool {
        self.subset_rank(indices) == indices.len()
    }

    /// Ambient dimension minus rank; zero for essential arrangements.
    pub fn rank_deficit(&self) -> usize {
        self.ambient_dim - self.rank()
    }

    /// Homogenizes with a new last coordinate `z0` and appends the form `z0`.
    pub fn cone(&self) -> Result<Self> {
        if self.central {
            return Err(Error::AlreadyCentral);
        }
        let m = self.ambient_dim;
        let mut forms = Vec::with_capacity(self.len() + 1);
        for f in &self.forms {
            let mut c = f.coefficients.clone();
            c.push(f.constant.clone());
            forms.push(LinearForm::linear(c)?);
        }
        let mut z0 = vec![BigRational::zero(); m + 1];
        z0[m] = BigRational::one();
        forms.push(LinearForm::linear(z0)?);
        Self::new(m + 1, forms, true)
    }

    /// Sets form `h` equal to one, eliminates its leading coordinate and drops it.
    pub fn decone(&self, h: usize) -> Result<Self> {
        self.require_central()?;
        self.check_index(h)?;
        let m = self.ambient_dim;
        if m < 2 {
            return Err(Error::InvalidInput("cannot decone an arrangement in dimension 1".into()));
        }
        let hf = &self.forms[h];
        let j = hf.lead_index();
        let mut forms = Vec::with_capacity(self.len() - 1);
        for (i, f) in self.forms.iter().enumerate() {
            if i == h {
                continue;
            }
            // z_j = 1 - sum_{k != j} a_k z_k
            let bj = &f.coefficients[j];
            let coeffs: Vec<BigRational> = (0..m)
                .filter(|&k| k != j)
                .map(|k| &f.coefficients[k] - bj * &hf.coefficients[k])
                .collect();
            forms.push(LinearForm::new(coeffs, bj.clone())?);
        }
        Self::new(m - 1, forms, false)
    }

    /// Sub-arrangement on the given indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        Self::new(
            self.ambient_dim,
            indices.iter().map(|&i| self.forms[i].clone()).collect(),
            self.central,
        )
    }

    /// All maximal sets of at least three forms spanning a rank-2 subspace.
    pub fn rank2_flats(&self) -> Result<CollinearityData> {
        self.require_central()?;
        let n = self.len();
        let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut assigned = vec![false; n * n];
        for a in 0..n {
            for b in a + 1..n {
                if assigned[a * n + b] {
                    continue;
                }
                let mut line = vec![a, b];
                for c in b + 1..n {
                    if self.subset_rank(&[a, b, c]) == 2 {
                        line.push(c);
                    }
                }
                // Points earlier than b on this line would have been found
                // from an earlier pair, so `assigned` already covers them.
                for (x, &p) in line.iter().enumerate() {
                    for &q in &line[x + 1..] {
                        assigned[p * n + q] = true;
                    }
                }
                if line.len() >= 3 {
                    lines.insert(line);
                }
            }
        }
        Ok(CollinearityData::from_lines(n, lines.into_iter().collect()))
    }

    /// Circuits of size at most `max_size`, with the default size cap.
    pub fn circuits(&self, max_size: usize) -> Result<CircuitList> {
        self.circuits_capped(max_size, DEFAULT_CIRCUIT_CAP)
    }

    /// Minimal dependent subsets of size at most `max_size`, refusing
    /// arrangements larger than `cap`.
    pub fn circuits_capped(&self, max_size: usize, cap: usize) -> Result<CircuitList> {
        self.require_central()?;
        let n = self.len();
        if n > cap.min(64) {
            return Err(Error::CapExceeded { what: "circuit enumeration |A|", size: n, cap: cap.min(64) });
        }
        let mut circuits = Vec::new();
        // Independent sets of the current size, as sorted index lists.
        let mut level: Vec<Vec<usize>> = vec![vec![]];
        let mut level_masks: HashSet<u64> = HashSet::from([0]);
        for size in 1..=max_size.min(n) {
            let mut next = Vec::new();
            let mut next_masks = HashSet::new();
            for s in &level {
                let start = s.last().map_or(0, |&x| x + 1);
                for e in start..n {
                    let mut t = s.clone();
                    t.push(e);
                    let mask = indices_to_mask(&t);
                    let subsets_independent = t
                        .iter()
                        .all(|&x| level_masks.contains(&(mask & !(1u64 << x))));
                    if !subsets_independent {
                        continue;
                    }
                    if self.subset_rank(&t) == size {
                        next_masks.insert(mask);
                        next.push(t);
                    } else {
                        circuits.push(t);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
            level_masks = next_masks;
        }
        circuits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(CircuitList { circuits })
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Maximal collinear sets of dual projective points, with a pair lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollinearityData {
    pub lines: Vec<Vec<usize>>,
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    pair_line: Vec<Option<usize>>,
}

impl CollinearityData {
    pub fn from_lines(n: usize, lines: Vec<Vec<usize>>) -> Self {
        let mut pair_line = vec![None; n * n];
        for (li, line) in lines.iter().enumerate() {
            for &a in line {
                for &b in line {
                    if a != b {
                        pair_line[a * n + b] = Some(li);
                    }
                }
            }
        }
        Self { lines, n, pair_line }
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    /// The listed line through two distinct points, if they lie on one.
    pub fn line_through(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.pair_line[a * self.n + b].map(|li| self.lines[li].as_slice())
    }

    pub fn line_index(&self, a: usize, b: usize) -> Option<usize> {
        self.pair_line[a * self.n + b]
    }

    /// True if three distinct points are collinear.
    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        match self.line_through(a, b) {
            Some(line) => line.contains(&c),
            None => false,
        }
    }

    /// Every dependent triple, sorted.
    pub fn dependent_triples(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for line in &self.lines {
            for (i, &a) in line.iter().enumerate() {
                for (j, &b) in line.iter().enumerate().skip(i + 1) {
                    for &c in &line[j + 1..] {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Circuits sorted by size, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitList {
    pub circuits: Vec<Vec<usize>>,
}

pub fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    fn boolean(n: usize) -> Arrangement {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Arrangement::central_from_rows(n, &rows).unwrap()
    }

    fn braid3() -> Arrangement {
        Arrangement::central_from_rows(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]]).unwrap()
    }

    fn generic_lines(n: usize) -> Arrangement {
        // z2 = k z1 + k^2 are in general position for distinct k
        let rows: Vec<Vec<i64>> = (1..=n as i64).map(|k| vec![k, -1, k * k]).collect();
        Arrangement::affine_from_rows(2, &rows).unwrap()
    }

    #[test]
    fn canonical_forms_identify_proportional_rows() {
        let a = LinearForm::from_i64s(&[2, -4], 6).unwrap();
        let b = LinearForm::from_i64s(&[-1, 2], -3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.constant(), &rat(3));
        assert!(Arrangement::new(2, vec![a, b], false).is_err());
        assert!(LinearForm::from_i64s(&[0, 0], 1).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# five lines\ndim 2 affine\n1 0 0\n0 1 0\n1 0 -1\n0 1 -1\n-1 1 0 # diagonal\n";
        let a = Arrangement::parse(text).unwrap();
        assert_eq!(a.len(), 5);
        assert!(!a.is_central());
        assert_eq!(Arrangement::parse(&a.to_text()).unwrap(), a);
        let b = Arrangement::parse("dim 2 central\n1/2 -3/4\n").unwrap();
        assert_eq!(b.forms()[0].coefficients()[1], ratio(-3, 2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Arrangement::parse("dim 2 central\n1 0\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Arrangement::parse("dim 2 central\n1 0 0\n").is_err());
        assert!(Arrangement::parse("dim 2 central\n1 1 \n").is_ok());
        assert!(Arrangement::parse("").is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(boolean(3).rank(), 3);
        assert_eq!(braid3().rank(), 2);
        assert_eq!(braid3().rank_deficit(), 1);
        let cone = generic_lines(3).cone().unwrap();
        assert_eq!(cone.len(), 4);
        assert_eq!(cone.rank(), 3);
        assert_eq!(generic_lines(3).rank(), 2);
        assert_eq!(boolean(1).rank(), 1);
    }

    #[test]
    fn cone_and_decone() {
        let a = Arrangement::affine_from_rows(1, &[vec![1, -1]]).unwrap();
        let c = a.cone().unwrap();
        assert_eq!(c, Arrangement::central_from_rows(2, &[vec![1, -1], vec![0, 1]]).unwrap());
        assert_eq!(c.decone(1).unwrap(), a);
        assert!(c.cone().is_err());
        assert!(a.decone(0).is_err());

        let d = boolean(3).decone(0).unwrap();
        assert_eq!(d, Arrangement::affine_from_rows(2, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
    }

    #[test]
    fn rank2_flats_examples() {
        assert!(boolean(3).rank2_flats().unwrap().lines.is_empty());
        assert_eq!(braid3().rank2_flats().unwrap().lines, vec![vec![0, 1, 2]]);
        // three generic lines: no three of the four cone planes share a line
        assert!(generic_lines(3).cone().unwrap().rank2_flats().unwrap().lines.is_empty());
        assert!(generic_lines(3).rank2_flats().is_err());
    }

    #[test]
    fn circuit_examples() {
        assert!(boolean(4).circuits(4).unwrap().circuits.is_empty());
        assert_eq!(braid3().circuits(3).unwrap().circuits, vec![vec![0, 1, 2]]);
        let rows: Vec<Vec<i64>> = (1..=6).map(|k: i64| vec![1, k, k * k]).collect();
        let generic = Arrangement::central_from_rows(3, &rows).unwrap();
        let cs = generic.circuits(6).unwrap().circuits;
        assert_eq!(cs.len(), 15);
        assert!(cs.iter().all(|c| c.len() == 4));
        let big = boolean(21);
        assert!(matches!(big.circuits(3), Err(Error::CapExceeded { .. })));
        assert!(big.circuits_capped(2, 30).unwrap().circuits.is_empty());
    }

    fn arb_central() -> impl Strategy<Value = Arrangement> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..8).prop_filter_map(
            "distinct nonzero forms",
            |rows| {
                let mut forms: Vec<LinearForm> = Vec::new();
                for r in rows {
                    if let Ok(f) = LinearForm::from_i64s(&r, 0) {
                        if !forms.contains(&f) {
                            forms.push(f);
                        }
                    }
                }
                if forms.is_empty() {
                    None
                } else {
                    Arrangement::new(3, forms, true).ok()
                }
            },
        )
    }

    proptest! {
        #[test]
        fn circuits_are_minimal_dependent(a in arb_central()) {
            for c in a.circuits(a.len()).unwrap().circuits {
                prop_assert_eq!(a.subset_rank(&c), c.len() - 1);
                for skip in 0..c.len() {
                    let sub: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                    prop_assert!(a.is_independent(&sub));
                }
            }
        }

        #[test]
        fn dependent_triples_lie_in_exactly_one_flat(a in arb_central()) {
            let coll = a.rank2_flats().unwrap();
            for line in &coll.lines {
                prop_assert!(line.len() >= 3);
                prop_assert_eq!(a.subset_rank(line), 2);
            }
            let n = a.len();
            for x in 0..n { for y in x + 1..n { for z in y + 1..n {
                let dep = a.subset_rank(&[x, y, z]) == 2;
                let hits = coll.lines.iter().filter(|l| l.contains(&x) && l.contains(&y) && l.contains(&z)).count();
                prop_assert_eq!(hits, usize::from(dep));
            }}}
            for (i, l1) in coll.lines.iter().enumerate() {
                for l2 in &coll.lines[i + 1..] {
                    prop_assert!(l1.iter().filter(|x| l2.contains(x)).count() <= 1);
                }
            }
        }

        #[test]
        fn decone_inverts_cone(rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 2), -3i64..=3), 1..6)) {
            let mut forms: Vec<LinearForm> = Vec::new();
            for (c, k) in rows {
                if let Ok(f) = LinearForm::from_i64s(&c, k) {
                    if !forms.contains(&f) { forms.push(f); }
                }
            }
            prop_assume!(!forms.is_empty());
            let a = Arrangement::new(2, forms, false).unwrap();
            let c = a.cone().unwrap();
            prop_assert_eq!(c.rank(), a.rank() + 1);
            prop_assert_eq!(c.decone(c.len() - 1).unwrap(), a);
        }
    }
}
