//! Exact linear programming with a fraction-free simplex tableau and Bland's rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::vector::rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Constraints `a·x >= b` and `a·x = b` over free variables `x ∈ Q^n`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    n: usize,
    ge: Vec<(Vec<BigInt>, BigInt)>,
    eq: Vec<(Vec<BigInt>, BigInt)>,
}

fn scaled_row(a: &[BigRational], b: &BigRational) -> (Vec<BigInt>, BigInt) {
    let l = a
        .iter()
        .chain(std::iter::once(b))
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let lr = rat(&l);
    let row = a.iter().map(|x| (x * &lr).to_integer()).collect();
    (row, (b * &lr).to_integer())
}

impl LinearProgram {
    pub fn new(n: usize) -> Self {
        LinearProgram {
            n,
            ge: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add_ge(&mut self, a: Vec<BigInt>, b: BigInt) -> &mut Self {
        assert_eq!(a.len(), self.n);
        self.ge.push((a, b));
        self
    }

    pub fn add_le(&mut self, a: Vec<BigInt>, b: BigInt) -> &mut Self {
        let a = a.into_iter().map(|x| -x).collect();
        self.add_ge(a, -b)
    }

    pub fn add_eq(&mut self, a: Vec<BigInt>, b: BigInt) -> &mut Self {
        assert_eq!(a.len(), self.n);
        self.eq.push((a, b));
        self
    }

    pub fn add_ge_rat(&mut self, a: &[BigRational], b: &BigRational) -> &mut Self {
        let (a, b) = scaled_row(a, b);
        self.add_ge(a, b)
    }

    pub fn add_eq_rat(&mut self, a: &[BigRational], b: &BigRational) -> &mut Self {
        let (a, b) = scaled_row(a, b);
        self.add_eq(a, b)
    }

    pub fn minimize_rat(&self, c: &[BigRational]) -> LpOutcome {
        let (ci, _) = scaled_row(c, &BigRational::zero());
        let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        match self.minimize(&ci) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: value / rat(&l),
                point,
            },
            o => o,
        }
    }

    pub fn maximize(&self, c: &[BigInt]) -> LpOutcome {
        let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            o => o,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        match self.minimize(&vec![BigInt::zero(); self.n]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// Minimizes `c·x`.
    pub fn minimize(&self, c: &[BigInt]) -> LpOutcome {
        assert_eq!(c.len(), self.n);
        let n = self.n;
        // Columns: x+ (n), x- (n), surplus (one per >= row), artificial (one per row).
        let m = self.ge.len() + self.eq.len();
        let ns = self.ge.len();
        let nart_start = 2 * n + ns;
        let ncols = nart_start + m;
        let rhs = ncols;
        if m == 0 {
            return if c.iter().all(Zero::is_zero) {
                LpOutcome::Optimal {
                    value: BigRational::zero(),
                    point: vec![BigRational::zero(); n],
                }
            } else {
                LpOutcome::Unbounded
            };
        }
        let mut t: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
        t.push(vec![BigInt::zero(); ncols + 1]);
        let rows = self
            .ge
            .iter()
            .map(|r| (r, true))
            .chain(self.eq.iter().map(|r| (r, false)));
        let mut surplus = 0;
        for (i, ((a, b), is_ge)) in rows.enumerate() {
            let mut row = vec![BigInt::zero(); ncols + 1];
            for j in 0..n {
                row[j] = a[j].clone();
                row[n + j] = -&a[j];
            }
            if is_ge {
                row[2 * n + surplus] = -BigInt::one();
                surplus += 1;
            }
            row[rhs] = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            row[nart_start + i] = BigInt::one();
            t.push(row);
        }
        let mut basis: Vec<usize> = (0..m).map(|i| nart_start + i).collect();
        // Phase one objective: sum of artificials, expressed in non-basic terms.
        for j in 0..=ncols {
            if (nart_start..ncols).contains(&j) {
                continue;
            }
            let s: BigInt = t[1..].iter().map(|r| &r[j]).sum();
            t[0][j] = -s;
        }
        let mut denom = BigInt::one();
        let allowed_all = |_: usize| true;
        if !run_simplex(&mut t, &mut basis, &mut denom, ncols, &allowed_all) {
            unreachable!("phase one is bounded below");
        }
        if !t[0][rhs].is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive artificial variables out of the basis.
        let mut i = 0;
        while i < basis.len() {
            if basis[i] >= nart_start {
                let r = i + 1;
                match (0..nart_start).find(|&j| !t[r][j].is_zero()) {
                    Some(q) => {
                        pivot(&mut t, r, q, &mut denom);
                        if denom.is_negative() {
                            // Keep the common denominator positive; the
                            // represented tableau is unchanged.
                            for row in t.iter_mut() {
                                for x in row.iter_mut() {
                                    *x = -&*x;
                                }
                            }
                            denom = -denom;
                        }
                        basis[i] = q;
                        i += 1;
                    }
                    None => {
                        t.remove(r);
                        basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        // Phase two objective row: denom * reduced costs.
        let cost = |j: usize| -> BigInt {
            if j < n {
                c[j].clone()
            } else if j < 2 * n {
                -&c[j - n]
            } else {
                BigInt::zero()
            }
        };
        let mut obj = vec![BigInt::zero(); ncols + 1];
        for (j, o) in obj.iter_mut().enumerate().take(nart_start) {
            *o = cost(j) * &denom;
        }
        for (k, &b) in basis.iter().enumerate() {
            let cb = cost(b);
            if cb.is_zero() {
                continue;
            }
            for j in 0..nart_start {
                obj[j] -= &cb * &t[k + 1][j];
            }
            obj[rhs] -= &cb * &t[k + 1][rhs];
        }
        t[0] = obj;
        let allowed = |j: usize| j < nart_start;
        if !run_simplex(&mut t, &mut basis, &mut denom, ncols, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut y = vec![BigRational::zero(); 2 * n];
        let dr = rat(&denom);
        for (k, &b) in basis.iter().enumerate() {
            if b < 2 * n {
                y[b] = rat(&t[k + 1][rhs]) / &dr;
            }
        }
        let point: Vec<BigRational> = (0..n).map(|j| &y[j] - &y[n + j]).collect();
        let value = point
            .iter()
            .zip(c)
            .fold(BigRational::zero(), |acc, (x, cj)| acc + x * rat(cj));
        LpOutcome::Optimal { value, point }
    }
}

fn pivot(t: &mut [Vec<BigInt>], p: usize, q: usize, denom: &mut BigInt) {
    let tp = t[p][q].clone();
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p {
            continue;
        }
        let f = row[q].clone();
        for (j, x) in row.iter_mut().enumerate() {
            let v = &tp * &*x - &f * &prow[j];
            *x = v / &*denom;
        }
    }
    *denom = tp;
}

/// Returns false when the objective is unbounded.
fn run_simplex(
    t: &mut [Vec<BigInt>],
    basis: &mut [usize],
    denom: &mut BigInt,
    ncols: usize,
    allowed: &dyn Fn(usize) -> bool,
) -> bool {
    let rhs = ncols;
    loop {
        let Some(q) = (0..ncols).find(|&j| allowed(j) && t[0][j].is_negative()) else {
            return true;
        };
        let mut best: Option<usize> = None;
        for r in 1..t.len() {
            if !t[r][q].is_positive() {
                continue;
            }
            best = match best {
                None => Some(r),
                Some(b) => {
                    // compare t[r][rhs]/t[r][q] with t[b][rhs]/t[b][q]
                    let lhs = &t[r][rhs] * &t[b][q];
                    let rhs_v = &t[b][rhs] * &t[r][q];
                    if lhs < rhs_v || (lhs == rhs_v && basis[r - 1] < basis[b - 1]) {
                        Some(r)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(p) = best else { return false };
        pivot(t, p, q, denom);
        basis[p - 1] = q;
    }
}
