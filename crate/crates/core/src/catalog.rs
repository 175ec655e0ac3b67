//! Standard arrangements used as fixtures and in the CLI.

use crate::arrangement::Arrangement;
use crate::error::Result;

/// Coordinate hyperplanes in `C^n`.
pub fn boolean(n: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Arrangement::central_from_rows(n, &rows).expect("coordinate forms are distinct")
}

/// Braid arrangement `z_i - z_j`, `i < j`, in `C^m`.
pub fn braid(m: usize) -> Arrangement {
    Arrangement::central_from_rows(m, &braid_rows(m)).expect("braid forms are distinct")
}

fn braid_rows(m: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut r = vec![0i64; m];
            r[i] = 1;
            r[j] = -1;
            rows.push(r);
        }
    }
    rows
}

/// `n` affine lines `z_2 = k z_1 + k^2`, `k = 1..n`, in general position.
pub fn generic_lines(n: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (1..=n as i64).map(|k| vec![k, -1, k * k]).collect();
    Arrangement::affine_from_rows(2, &rows).expect("distinct slopes")
}

/// Cone of [`generic_lines`].
pub fn generic_cone(n: usize) -> Arrangement {
    generic_lines(n).cone().expect("affine input")
}

/// `z1 z2 (z1 - 1)(z2 - 1)(z2 - z1)`: a supersolvable line arrangement.
pub fn five_lines_supersolvable() -> Arrangement {
    Arrangement::affine_from_rows(
        2,
        &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, -1], vec![0, 1, -1], vec![-1, 1, 0]],
    )
    .expect("distinct lines")
}

/// `(z1-1)(z1+1)(2z1-2z2-1)(2z1-2z2+1)(3z1-6z2-1)(3z1-6z2+1)`: three pairs of
/// parallel lines, hypersolvable with exponents {1,2,2,2} after coning.
pub fn fan_lines() -> Arrangement {
    Arrangement::affine_from_rows(
        2,
        &[
            vec![1, 0, -1],
            vec![1, 0, 1],
            vec![2, -2, -1],
            vec![2, -2, 1],
            vec![3, -6, -1],
            vec![3, -6, 1],
        ],
    )
    .expect("distinct lines")
}

/// `z1 z2 (z1 - 1)(z2 - z1 - 1)(z2 + z1 - 2)`: hypersolvable with exponents
/// {1,1,1,1,2} after coning.
pub fn five_lines_hypersolvable() -> Arrangement {
    Arrangement::affine_from_rows(
        2,
        &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, -1], vec![-1, 1, -1], vec![1, 1, -2]],
    )
    .expect("distinct lines")
}

/// The braid arrangement in `C^m` together with `z1 + z2 + z3 - 3 z_m`.
pub fn braid_with_centroid_plane(m: usize) -> Result<Arrangement> {
    let mut rows = braid_rows(m);
    let mut extra = vec![0i64; m];
    extra[0] = 1;
    extra[1] = 1;
    extra[2] = 1;
    extra[m - 1] = -3;
    rows.push(extra);
    Arrangement::central_from_rows(m, &rows)
}
