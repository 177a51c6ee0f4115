use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == s` with `s` diagonal and the diagonal forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`; handy for lifting cokernel coordinates.
    pub u_inv: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries of `s`, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += k * row[src]
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        self.s.add_row_multiple(target, src, k);
        self.u.add_row_multiple(target, src, k);
        self.u_inv.add_col_multiple(src, target, &-k);
    }

    /// col[target] += k * col[src]
    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        self.s.add_col_multiple(target, src, k);
        self.v.add_col_multiple(target, src, k);
        self.v_inv.add_row_multiple(src, target, &-k);
    }

    fn negate_row(&mut self, r: usize) {
        self.s.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }
}

/// Smallest nonzero absolute value in the lower-right block starting at `t`,
/// ties broken by lowest row-major index.
fn pick_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if s.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// The pivot at each step is the entry of smallest absolute value in the
/// remaining block (lowest index on ties), so the output is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        s: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some(_) = pick_pivot(&w.s, t) else { break };
        loop {
            let (pi, pj) = pick_pivot(&w.s, t).expect("block is nonzero");
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let x = w.s.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                w.add_row(i, t, &-q);
                if !w.s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = w.s.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                w.add_col(j, t, &-q);
                if !w.s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.s.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.s.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let divisors = (0..m.min(n))
        .map(|i| w.s.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithDecomposition {
        u: w.u,
        s: w.s,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        divisors,
    }
}

/// Elementary divisors only (no transforms), for sparse matrices given as
/// `(row, col, value)` triples. Unit pivots are eliminated sparsely first and
/// the leftover block goes through the dense algorithm.
pub fn elementary_divisors_sparse(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
) -> Vec<BigInt> {
    let mut data: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
    let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, j, x) in entries {
        if x.is_zero() {
            continue;
        }
        let e = data[i].entry(j).or_insert_with(BigInt::zero);
        *e += x;
        if e.is_zero() {
            data[i].remove(&j);
            col_index[j].remove(&i);
        } else {
            col_index[j].insert(i);
        }
    }
    let mut active: Vec<bool> = vec![true; rows];
    let mut divisors = Vec::new();
    loop {
        // Unit entry whose column is sparsest.
        let mut pivot: Option<(usize, usize, usize)> = None;
        for (i, row) in data.iter().enumerate() {
            if !active[i] {
                continue;
            }
            for (j, x) in row {
                if x.abs().is_one() {
                    let load = col_index[*j].len();
                    if pivot.is_none_or(|(_, _, l)| load < l) {
                        pivot = Some((i, *j, load));
                    }
                }
            }
            if pivot.is_some_and(|(_, _, l)| l == 1) {
                break;
            }
        }
        let Some((r, c, _)) = pivot else { break };
        let prow = std::mem::take(&mut data[r]);
        active[r] = false;
        for j in prow.keys() {
            col_index[*j].remove(&r);
        }
        let e = prow[&c].clone();
        let targets: Vec<usize> = col_index[c].iter().copied().collect();
        for i in targets {
            let f = &data[i][&c] * &e;
            for (j, x) in &prow {
                let entry = data[i].entry(*j).or_insert_with(BigInt::zero);
                *entry -= &f * x;
                if entry.is_zero() {
                    data[i].remove(j);
                    col_index[*j].remove(&i);
                } else {
                    col_index[*j].insert(i);
                }
            }
        }
        divisors.push(BigInt::one());
    }
    let rest_rows: Vec<usize> = (0..rows)
        .filter(|&i| active[i] && !data[i].is_empty())
        .collect();
    if !rest_rows.is_empty() {
        let rest_cols: Vec<usize> = (0..cols).filter(|&j| !col_index[j].is_empty()).collect();
        let pos: BTreeMap<usize, usize> =
            rest_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut dense = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
        for (k, &i) in rest_rows.iter().enumerate() {
            for (j, x) in &data[i] {
                dense.set(k, pos[j], x.clone());
            }
        }
        divisors.extend(smith_normal_form(&dense).divisors);
    }
    divisors
}
