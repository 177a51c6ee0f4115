//! Integer points of bounded rational polyhedra by coordinate-wise LP bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lp::{LinearProgram, LpOutcome};
use super::polyhedron::Inequality;
use crate::error::{Error, Result};
use crate::linalg::vector::{ceil, floor, rat};

struct Search<'a> {
    n: usize,
    ineqs: &'a [Inequality],
    eqs: &'a [Inequality],
    limit: Option<usize>,
    out: Vec<Vec<BigInt>>,
}

type Row = (Vec<BigInt>, BigRational);

impl Search<'_> {
    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    /// Constraints on the remaining variables once `prefix` is fixed.
    fn restricted(&self, prefix: &[BigInt]) -> (Vec<Row>, Vec<Row>) {
        let k = prefix.len();
        let fix = |c: &Inequality| -> Row {
            let fixed: BigInt = c.normal[..k].iter().zip(prefix).map(|(a, x)| a * x).sum();
            (c.normal[k..].to_vec(), &c.rhs - rat(&fixed))
        };
        (
            self.ineqs.iter().map(fix).collect(),
            self.eqs.iter().map(fix).collect(),
        )
    }

    fn bounds(&self, prefix: &[BigInt]) -> Result<Option<(BigInt, BigInt)>> {
        let (ge, eq) = self.restricted(prefix);
        let m = self.n - prefix.len();
        if m == 1 {
            return one_dim_bounds(&ge, &eq);
        }
        let mut lp = LinearProgram::new(m);
        for (a, b) in &ge {
            lp.add_ge_rat(&crate::linalg::vector::rats(a), b);
        }
        for (a, b) in &eq {
            lp.add_eq_rat(&crate::linalg::vector::rats(a), b);
        }
        let mut c = vec![BigInt::zero(); m];
        c[0] = BigInt::one();
        let lo = match lp.minimize(&c) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::UnboundedInput),
            LpOutcome::Optimal { value, .. } => ceil(&value),
        };
        let hi = match lp.maximize(&c) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::UnboundedInput),
            LpOutcome::Optimal { value, .. } => floor(&value),
        };
        Ok(if lo > hi { None } else { Some((lo, hi)) })
    }

    fn run(&mut self, prefix: &mut Vec<BigInt>) -> Result<()> {
        if self.full() {
            return Ok(());
        }
        if prefix.len() == self.n {
            let ok = self.ineqs.iter().all(|i| i.holds_int(prefix))
                && self.eqs.iter().all(|e| e.value_int(prefix).is_zero());
            if ok {
                self.out.push(prefix.clone());
            }
            return Ok(());
        }
        let Some((lo, hi)) = self.bounds(prefix)? else {
            return Ok(());
        };
        let mut x = lo;
        while x <= hi {
            prefix.push(x.clone());
            self.run(prefix)?;
            prefix.pop();
            if self.full() {
                break;
            }
            x += 1;
        }
        Ok(())
    }
}

/// Integer bounds for a single variable.
fn one_dim_bounds(
    ge: &[(Vec<BigInt>, BigRational)],
    eq: &[(Vec<BigInt>, BigRational)],
) -> Result<Option<(BigInt, BigInt)>> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let tighten_lo = |v: BigRational, lo: &mut Option<BigRational>| {
        if lo.as_ref().is_none_or(|l| &v > l) {
            *lo = Some(v);
        }
    };
    let tighten_hi = |v: BigRational, hi: &mut Option<BigRational>| {
        if hi.as_ref().is_none_or(|h| &v < h) {
            *hi = Some(v);
        }
    };
    for (a, b) in ge {
        let a = &a[0];
        if a.is_zero() {
            if b.is_positive() {
                return Ok(None);
            }
        } else if a.is_positive() {
            tighten_lo(b / rat(a), &mut lo);
        } else {
            tighten_hi(b / rat(a), &mut hi);
        }
    }
    for (a, b) in eq {
        let a = &a[0];
        if a.is_zero() {
            if !b.is_zero() {
                return Ok(None);
            }
        } else {
            let v = b / rat(a);
            tighten_lo(v.clone(), &mut lo);
            tighten_hi(v, &mut hi);
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::UnboundedInput);
    };
    let (lo, hi) = (ceil(&lo), floor(&hi));
    Ok((lo <= hi).then_some((lo, hi)))
}

/// Integer points of `{x : ineqs hold, eqs hold}` in lexicographic order,
/// stopping after `limit` points when given. Fails on unbounded input.
pub fn integer_points(
    dim: usize,
    ineqs: &[Inequality],
    eqs: &[Inequality],
    limit: Option<usize>,
) -> Result<Vec<Vec<BigInt>>> {
    if dim == 0 {
        let ok = ineqs.iter().all(|i| !i.rhs.is_positive()) && eqs.iter().all(|e| e.rhs.is_zero());
        return Ok(if ok { vec![Vec::new()] } else { Vec::new() });
    }
    let mut s = Search {
        n: dim,
        ineqs,
        eqs,
        limit,
        out: Vec::new(),
    };
    s.run(&mut Vec::with_capacity(dim))?;
    Ok(s.out)
}

/// Whether the (bounded) system has an integer solution.
pub fn has_integer_point(dim: usize, ineqs: &[Inequality], eqs: &[Inequality]) -> Result<bool> {
    Ok(!integer_points(dim, ineqs, eqs, Some(1))?.is_empty())
}
