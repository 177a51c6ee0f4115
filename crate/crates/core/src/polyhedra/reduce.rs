//! Canonical forms for affine and linear subspaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::vector::{primitive_from_rat, rats};

/// Reduced row echelon form over Q. Zero rows are dropped.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Spanning rows of a subspace in canonical primitive integer form.
pub(crate) fn canonical_span(
    vectors: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigRational>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    let (rows, pivots) = rref(vectors.iter().map(|v| rats(v)).collect());
    let ints = rows.iter().map(|r| primitive_from_rat(r)).collect();
    (ints, rows, pivots)
}

/// Subtracts multiples of reduced rows so that `v` vanishes at their pivot columns.
pub(crate) fn reduce_by(
    v: &[BigRational],
    rows: &[Vec<BigRational>],
    pivots: &[usize],
) -> Vec<BigRational> {
    let mut out = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, y) in out.iter_mut().zip(row) {
            *x -= &f * y;
        }
    }
    out
}

/// One rational solution of `a x = b` where `a` has `n` columns, or `None`.
pub(crate) fn solve_rational(
    a: &[Vec<BigInt>],
    b: &[BigRational],
    n: usize,
) -> Option<Vec<BigRational>> {
    if a.is_empty() {
        return Some(vec![BigRational::zero(); n]);
    }
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = rats(row);
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}
