use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dd::{cone_from_constraints, dual_generators, ConeGenerators};
use super::reduce::{canonical_span, reduce_by};
use crate::linalg::vector::{dot, neg, primitive, primitive_from_rat, rats};

/// A rational polyhedral cone `cone(rays) + span(lines)` in `R^dim`, stored
/// together with its facet normals and the equations of its linear span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    lines: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// Sorted primitive rays reduced modulo a subspace.
fn canonical_rays(
    rays: &[Vec<BigInt>],
    span_rows: &[Vec<BigRational>],
    pivots: &[usize],
) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| primitive_from_rat(&reduce_by(&rats(r), span_rows, pivots)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    fn from_both(dim: usize, primal: ConeGenerators, dual: ConeGenerators) -> Cone {
        let (lines, lrows, lpiv) = canonical_span(&primal.lines);
        let (equations, erows, epiv) = canonical_span(&dual.lines);
        Cone {
            dim,
            rays: canonical_rays(&primal.rays, &lrows, &lpiv),
            lines,
            facets: canonical_rays(&dual.rays, &erows, &epiv),
            equations,
        }
    }

    /// The cone generated by `rays`.
    pub fn from_rays(dim: usize, rays: &[Vec<BigInt>]) -> Cone {
        let rays: Vec<Vec<BigInt>> = rays
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| primitive(r))
            .collect();
        let dual = dual_generators(
            dim,
            &ConeGenerators {
                lines: Vec::new(),
                rays,
            },
        );
        let primal = dual_generators(dim, &dual);
        Cone::from_both(dim, primal, dual)
    }

    /// `{x : a·x >= 0 for every a}`.
    pub fn from_inequalities(dim: usize, normals: &[Vec<BigInt>]) -> Cone {
        let primal = cone_from_constraints(dim, normals);
        let dual = dual_generators(dim, &primal);
        Cone::from_both(dim, primal, dual)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vec<BigInt>] {
        &self.lines
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// All generators including both directions of every line.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut g = self.rays.clone();
        for l in &self.lines {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    /// `{y : y·x >= 0 for all x in the cone}`.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lines: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lines.clone(),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_rat(&self, x: &[BigRational]) -> bool {
        let (v, _) = crate::linalg::vector::clear_denominators(x);
        self.contains(&v)
    }

    /// Points strictly inside the relative interior.
    pub fn contains_relative_interior(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }
}
