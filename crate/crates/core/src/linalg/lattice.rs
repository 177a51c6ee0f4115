use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// A lattice basis of `{x : a x = 0}`, returned as vectors of length `a.cols()`.
/// The basis spans a saturated sublattice.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// One integer solution of `a x = b`, or `None`.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let r = snf.rank();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = ub[i].div_rem(&snf.divisors[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.v.apply(&y))
}

/// Basis of the saturation `span_Q(vectors) ∩ Z^n` of the lattice spanned by `vectors`.
pub fn saturation(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // Orthogonal complement, then its complement again.
    let w = IntMatrix::from_rows(vectors, n);
    let perp = kernel_basis(&w);
    if perp.is_empty() {
        return (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
    }
    kernel_basis(&IntMatrix::from_rows(&perp, n))
}

/// Coordinates of a class in a finitely generated abelian group `Z^f ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    pub free: Vec<BigInt>,
    /// Reduced into `[0, d_i)`.
    pub torsion: Vec<BigInt>,
}

impl LatticeClass {
    pub fn free(free: Vec<BigInt>) -> Self {
        LatticeClass {
            free,
            torsion: Vec::new(),
        }
    }
}

/// `Z^ambient / im(relations)` with canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLattice {
    ambient: usize,
    relations: IntMatrix,
    /// `f x ambient`; the free coordinates of the class of `x` are `projection * x`.
    projection: IntMatrix,
    /// `t x ambient`; torsion coordinates before reduction.
    torsion_map: IntMatrix,
    moduli: Vec<BigInt>,
}

impl QuotientLattice {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn free_rank(&self) -> usize {
        self.projection.rows()
    }

    /// Orders of the cyclic torsion summands.
    pub fn torsion(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn is_torsion_free(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// The matrix sending `Z^ambient` onto the free coordinates.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn torsion_map(&self) -> &IntMatrix {
        &self.torsion_map
    }

    pub fn project(&self, x: &[BigInt]) -> LatticeClass {
        let free = self.projection.apply(x);
        let torsion = self
            .torsion_map
            .apply(x)
            .into_iter()
            .zip(&self.moduli)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        LatticeClass { free, torsion }
    }

    /// Some preimage of `c` in `Z^ambient`.
    pub fn lift(&self, c: &LatticeClass) -> Result<Vec<BigInt>> {
        if c.free.len() != self.free_rank() || c.torsion.len() != self.moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: self.free_rank(),
                found: c.free.len(),
            });
        }
        // [P; T | 0; diag(d)] (x, k) = (free, torsion)
        let f = self.free_rank();
        let t = self.moduli.len();
        let top = self.projection.hstack(&IntMatrix::zeros(f, t));
        let mut diag = IntMatrix::zeros(t, t);
        for (i, d) in self.moduli.iter().enumerate() {
            diag.set(i, i, d.clone());
        }
        let bottom = self.torsion_map.hstack(&diag);
        let sys = top.vstack(&bottom);
        let mut rhs = c.free.clone();
        rhs.extend(c.torsion.iter().cloned());
        let sol = solve_integral(&sys, &rhs).ok_or(Error::NotInLattice)?;
        Ok(sol[..self.ambient].to_vec())
    }

    /// Replaces the free coordinates by a supplied matrix `pi`.
    ///
    /// `pi` must kill the relations and map onto `Z^f` with kernel the
    /// saturation of the relation lattice.
    pub fn with_projection(self, pi: IntMatrix) -> Result<Self> {
        if pi.cols() != self.ambient || pi.rows() != self.free_rank() {
            return Err(Error::InvalidProjection(format!(
                "expected a {}x{} matrix, got {}x{}",
                self.free_rank(),
                self.ambient,
                pi.rows(),
                pi.cols()
            )));
        }
        if !pi.mul(&self.relations).is_zero() {
            return Err(Error::InvalidProjection(
                "pi does not vanish on the relations".into(),
            ));
        }
        let snf = smith_normal_form(&pi);
        if snf.rank() != pi.rows() || snf.divisors.iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidProjection(
                "pi is not surjective onto Z^f".into(),
            ));
        }
        Ok(QuotientLattice {
            projection: pi,
            ..self
        })
    }
}

/// Cokernel `Z^rows / im(a)`.
pub fn cokernel(a: &IntMatrix) -> QuotientLattice {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let free_rows: Vec<usize> = (r..a.rows()).collect();
    let tors_rows: Vec<usize> = (0..r).filter(|&i| !snf.divisors[i].is_one()).collect();
    QuotientLattice {
        ambient: a.rows(),
        relations: a.clone(),
        projection: snf.u.select_rows(&free_rows),
        torsion_map: snf.u.select_rows(&tors_rows),
        moduli: tors_rows.iter().map(|&i| snf.divisors[i].clone()).collect(),
    }
}
