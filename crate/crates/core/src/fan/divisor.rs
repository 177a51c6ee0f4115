use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::vector::{dot, dot_rat, rat};
use crate::linalg::{solve_integral, IntMatrix, LatticeClass};
use crate::polyhedra::reduce::solve_rational;
use crate::polyhedra::{Inequality, LinearProgram, Polyhedron};

/// A class in `Cl(X)`: free coordinates plus reduced torsion coordinates.
pub type DivisorClass = LatticeClass;

/// `D = Σ λ_ρ D_ρ`, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToricDivisor {
    coefficients: Vec<BigInt>,
}

impl ToricDivisor {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        ToricDivisor { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        ToricDivisor::new(coefficients.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        ToricDivisor::new(vec![BigInt::zero(); n])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &ToricDivisor) -> ToricDivisor {
        ToricDivisor::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ToricDivisor) -> ToricDivisor {
        ToricDivisor::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> ToricDivisor {
        ToricDivisor::new(self.coefficients.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> ToricDivisor {
        ToricDivisor::new(self.coefficients.iter().map(|a| -a).collect())
    }
}

/// Per maximal cone a vector `u_σ` with `⟨ρ, u_σ⟩ = -λ_ρ` for the rays of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    values: Vec<Vec<BigRational>>,
}

impl SupportFunction {
    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn on_cone(&self, i: usize) -> &[BigRational] {
        &self.values[i]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|u| u.iter().all(|x| x.is_integer()))
    }

    /// Value at `v`, using the first maximal cone containing it.
    pub fn evaluate(&self, fan: &Fan, v: &[BigInt]) -> Option<BigRational> {
        (0..fan.maximal_cones().len())
            .find(|&i| fan.cone(i).contains(v))
            .map(|i| dot_rat(v, &self.values[i]))
    }
}

/// `D ~ D⁺ - D⁻` with both parts nef, and their section polyhedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefPair {
    pub plus: Polyhedron,
    pub minus: Polyhedron,
    pub plus_divisor: ToricDivisor,
    pub minus_divisor: ToricDivisor,
}

impl NefPair {
    pub fn tail_cone(&self) -> crate::polyhedra::Cone {
        self.plus.tail_cone()
    }
}

impl Fan {
    fn check_len(&self, d: &ToricDivisor) -> Result<()> {
        if d.len() != self.n_rays() {
            return Err(Error::DimensionMismatch {
                expected: self.n_rays(),
                found: d.len(),
            });
        }
        Ok(())
    }

    fn cone_system(&self, i: usize) -> Vec<Vec<BigInt>> {
        self.maximal_cones()[i]
            .iter()
            .map(|&r| self.rays()[r].clone())
            .collect()
    }

    pub fn support_function(&self, d: &ToricDivisor) -> Result<SupportFunction> {
        self.check_len(d)?;
        let values = (0..self.maximal_cones().len())
            .map(|i| {
                let rhs: Vec<BigRational> = self.maximal_cones()[i]
                    .iter()
                    .map(|&r| rat(&-&d.coefficients[r]))
                    .collect();
                solve_rational(&self.cone_system(i), &rhs, self.dim()).ok_or(Error::NotQCartier)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SupportFunction { values })
    }

    pub fn is_q_cartier(&self, d: &ToricDivisor) -> bool {
        self.support_function(d).is_ok()
    }

    pub fn is_cartier(&self, d: &ToricDivisor) -> bool {
        d.len() == self.n_rays()
            && (0..self.maximal_cones().len()).all(|i| {
                let a = IntMatrix::from_rows(&self.cone_system(i), self.dim());
                let b: Vec<BigInt> = self.maximal_cones()[i]
                    .iter()
                    .map(|&r| -&d.coefficients[r])
                    .collect();
                solve_integral(&a, &b).is_some()
            })
    }

    /// `{m : ⟨ρ, m⟩ >= -λ_ρ for all rays}`, possibly empty.
    pub fn section_polyhedron(&self, d: &ToricDivisor) -> Polyhedron {
        let ineqs = self
            .rays()
            .iter()
            .zip(d.coefficients())
            .map(|(r, l)| Inequality::from_ints(r.clone(), -l))
            .collect();
        Polyhedron::from_hrep_or_empty(self.dim(), ineqs, Vec::new())
    }

    /// Every `u_σ` satisfies all ray inequalities of the section polyhedron.
    pub fn is_nef(&self, d: &ToricDivisor) -> Result<bool> {
        let u = self.support_function(d)?;
        for (i, cone) in self.maximal_cones().iter().enumerate() {
            if cone.len() >= self.dim() && self.cone(i).is_full_dimensional() {
                let ok = self
                    .rays()
                    .iter()
                    .zip(d.coefficients())
                    .all(|(r, l)| dot_rat(r, u.on_cone(i)) >= rat(&-l));
                if !ok {
                    return Ok(false);
                }
            } else {
                let mut lp = LinearProgram::new(self.dim());
                for (k, (r, l)) in self.rays().iter().zip(d.coefficients()).enumerate() {
                    if cone.contains(&k) {
                        lp.add_eq(r.clone(), -l);
                    } else {
                        lp.add_ge(r.clone(), -l);
                    }
                }
                if !lp.is_feasible() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A fixed ample divisor, from the strictly convex heights of the fan.
    pub fn ample_divisor(&self) -> Result<ToricDivisor> {
        if !self.has_convex_support() {
            return Err(Error::NotSemiprojective);
        }
        self.heights()
            .map(|h| ToricDivisor::new(h.to_vec()))
            .ok_or(Error::NotSemiprojective)
    }

    /// `D⁺ = D + cA`, `D⁻ = cA` with `A` the fixed ample divisor and `c >= 0` least
    /// such that `D⁺` is nef.
    pub fn nef_decompose(&self, d: &ToricDivisor) -> Result<NefPair> {
        self.check_len(d)?;
        let a = self.ample_divisor()?;
        self.support_function(d)?;
        let c = if self.is_nef(d)? {
            BigInt::zero()
        } else if self.is_simplicial() {
            self.least_multiple_by_walls(d, &a)
        } else {
            self.least_multiple_by_search(d, &a)?
        };
        let minus_divisor = a.scale(&c);
        let plus_divisor = d.add(&minus_divisor);
        debug_assert!(self.is_nef(&plus_divisor)?);
        Ok(NefPair {
            plus: self.section_polyhedron(&plus_divisor),
            minus: self.section_polyhedron(&minus_divisor),
            plus_divisor,
            minus_divisor,
        })
    }

    /// The default decomposition with the nef divisor `extra` added to both parts.
    pub fn nef_decompose_with(&self, d: &ToricDivisor, extra: &ToricDivisor) -> Result<NefPair> {
        let base = self.nef_decompose(d)?;
        if !self.is_nef(extra)? {
            return Err(Error::NotNef);
        }
        let plus_divisor = base.plus_divisor.add(extra);
        let minus_divisor = base.minus_divisor.add(extra);
        Ok(NefPair {
            plus: self.section_polyhedron(&plus_divisor),
            minus: self.section_polyhedron(&minus_divisor),
            plus_divisor,
            minus_divisor,
        })
    }

    fn least_multiple_by_walls(&self, d: &ToricDivisor, a: &ToricDivisor) -> BigInt {
        let mut c = BigInt::zero();
        for (idx, rel) in self.wall_relations() {
            let f = |x: &ToricDivisor| -> BigInt {
                idx.iter()
                    .zip(&rel)
                    .map(|(&r, k)| k * &x.coefficients[r])
                    .sum()
            };
            let (fd, fa) = (f(d), f(a));
            if fd.is_negative() {
                // fd + c fa >= 0 with fa >= 1
                let need = num_integer::Integer::div_ceil(&-fd, &fa);
                if need > c {
                    c = need;
                }
            }
        }
        c
    }

    fn least_multiple_by_search(&self, d: &ToricDivisor, a: &ToricDivisor) -> Result<BigInt> {
        let mut hi = BigInt::from(1);
        while !self.is_nef(&d.add(&a.scale(&hi)))? {
            hi *= 2;
        }
        let mut lo = BigInt::zero();
        while &hi - &lo > BigInt::from(1) {
            let mid: BigInt = (&lo + &hi) / 2;
            if self.is_nef(&d.add(&a.scale(&mid)))? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// `div(χ^m) = Σ ⟨ρ, m⟩ D_ρ`.
    pub fn principal_divisor(&self, m: &[BigInt]) -> ToricDivisor {
        ToricDivisor::new(self.rays().iter().map(|r| dot(r, m)).collect())
    }
}
