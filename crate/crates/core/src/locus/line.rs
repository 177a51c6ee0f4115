use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg::vector::{primitive, sub};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::polyhedra::{Inequality, Polyhedron};

/// `base + Z·direction`, normalized: the direction is primitive with positive
/// leading entry and the base coordinate at that entry lies in `[0, |d_k|)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeLine {
    pub base: Vec<BigInt>,
    pub direction: Vec<BigInt>,
}

impl LatticeLine {
    pub fn new(base: Vec<BigInt>, direction: &[BigInt]) -> Self {
        let mut d = primitive(direction);
        let k = d
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero direction");
        if d[k].is_negative() {
            d.iter_mut().for_each(|x| *x = -&*x);
        }
        let t = base[k].div_floor(&d[k]);
        let base = base.iter().zip(&d).map(|(b, x)| b - &t * x).collect();
        LatticeLine { base, direction: d }
    }

    pub fn from_i64(base: &[i64], direction: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        LatticeLine::new(conv(base), &conv(direction))
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        let diff = sub(p, &self.base);
        let k = self
            .direction
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero direction");
        let (t, r) = diff[k].div_rem(&self.direction[k]);
        r.is_zero() && diff.iter().zip(&self.direction).all(|(a, d)| *a == &t * d)
    }
}

/// The lattice lines inside a polyhedron `Q + R·d` with `Q` bounded.
pub(crate) fn lattice_lines(region: &Polyhedron) -> Result<Vec<LatticeLine>> {
    let n = region.dim();
    let d = primitive(&region.lines()[0]);
    // Unimodular u with u·d = e_0.
    let snf = smith_normal_form(&IntMatrix::from_columns(std::slice::from_ref(&d), n));
    let mut u = snf.u.clone();
    let mut u_inv = snf.u_inv.clone();
    if u.apply(&d)[0].is_negative() {
        for j in 0..n {
            u.set(0, j, -u.get(0, j));
            u_inv.set(j, 0, -u_inv.get(j, 0));
        }
    }
    debug_assert_eq!(u.apply(&d)[0], BigInt::from(1));
    // In coordinates y = u·x the normals become a·u⁻¹, with zero first entry.
    let move_row = |i: &Inequality| -> Inequality {
        let row: Vec<BigInt> = (0..n)
            .map(|j| (0..n).map(|k| &i.normal[k] * u_inv.get(k, j)).sum())
            .collect();
        debug_assert!(row[0].is_zero());
        Inequality::new(row[1..].to_vec(), i.rhs.clone())
    };
    let ineqs = region.inequalities().iter().map(move_row).collect();
    let eqs = region.equations().iter().map(move_row).collect();
    let slice = Polyhedron::from_hrep_or_empty(n - 1, ineqs, eqs);
    let mut out: Vec<LatticeLine> = slice
        .lattice_points()?
        .into_iter()
        .map(|y| {
            let mut full = vec![BigInt::zero()];
            full.extend(y);
            LatticeLine::new(u_inv.apply(&full), &d)
        })
        .collect();
    out.sort();
    Ok(out)
}
