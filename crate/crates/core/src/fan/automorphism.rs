use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DivisorClass, Fan, RaySet};
use crate::error::Result;
use crate::linalg::vector::to_integral;
use crate::linalg::IntMatrix;
use crate::polyhedra::reduce::solve_rational;

/// A lattice automorphism of `N` permuting rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanAutomorphism {
    /// Acts on column vectors of `N`.
    pub matrix: IntMatrix,
    /// Ray `i` is sent to ray `permutation[i]`.
    pub permutation: Vec<usize>,
    /// Induced action on the free coordinates of `Cl(X)`.
    pub class_action: IntMatrix,
}

impl FanAutomorphism {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl Fan {
    /// All automorphisms of the fan, sorted by ray permutation.
    pub fn fan_automorphisms(&self) -> Result<Vec<FanAutomorphism>> {
        let n = self.n_rays();
        let d = self.dim();
        let cones: BTreeSet<RaySet> = self.cone_masks().iter().copied().collect();
        let degree: Vec<usize> = (0..n)
            .map(|i| {
                self.cone_masks()
                    .iter()
                    .filter(|&&m| m >> i & 1 == 1)
                    .count()
            })
            .collect();
        let adjacent = |i: usize, j: usize| self.in_single_cone(1 << i | 1 << j);
        // A basis of N_Q among the rays.
        let mut basis: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut trial: Vec<Vec<BigInt>> =
                basis.iter().map(|&b| self.rays()[b].clone()).collect();
            trial.push(self.rays()[i].clone());
            if IntMatrix::from_rows(&trial, d).rank() == trial.len() {
                basis.push(i);
            }
            if basis.len() == d {
                break;
            }
        }
        let ray_index: HashMap<&Vec<BigInt>, usize> = self
            .rays()
            .iter()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let b_rows: Vec<Vec<BigInt>> = basis.iter().map(|&b| self.rays()[b].clone()).collect();
        let search = Search {
            fan: self,
            basis: &basis,
            degree: &degree,
            adjacent: &adjacent,
        };
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(d);
        search.extend(&mut images, &mut |images| {
            if let Some(aut) = self.complete_candidate(&b_rows, images, &ray_index, &cones)? {
                found.push(aut);
            }
            Ok(())
        })?;
        found.sort_by(|a: &FanAutomorphism, b| a.permutation.cmp(&b.permutation));
        Ok(found)
    }

    fn complete_candidate(
        &self,
        b_rows: &[Vec<BigInt>],
        images: &[usize],
        ray_index: &HashMap<&Vec<BigInt>, usize>,
        cones: &BTreeSet<RaySet>,
    ) -> Result<Option<FanAutomorphism>> {
        let d = self.dim();
        // Row t of g solves B g_t = (images)_t.
        let mut g_rows = Vec::with_capacity(d);
        for t in 0..d {
            let rhs: Vec<BigRational> = images
                .iter()
                .map(|&i| BigRational::from(self.rays()[i][t].clone()))
                .collect();
            let Some(row) = solve_rational(b_rows, &rhs, d) else {
                return Ok(None);
            };
            let Some(row) = to_integral(&row) else {
                return Ok(None);
            };
            g_rows.push(row);
        }
        let g = IntMatrix::from_rows(&g_rows, d);
        if !g.is_unimodular() {
            return Ok(None);
        }
        let mut perm = Vec::with_capacity(self.n_rays());
        for r in self.rays() {
            match ray_index.get(&g.apply(r)) {
                Some(&j) => perm.push(j),
                None => return Ok(None),
            }
        }
        for &m in self.cone_masks() {
            let image = super::indices_of(m)
                .iter()
                .fold(0, |a, &i| a | 1 << perm[i]);
            if !cones.contains(&image) {
                return Ok(None);
            }
        }
        let class_action = self.class_action_of(&perm)?;
        Ok(Some(FanAutomorphism {
            matrix: g,
            permutation: perm,
            class_action,
        }))
    }

    fn class_action_of(&self, perm: &[usize]) -> Result<IntMatrix> {
        let cl = self.class_group()?;
        let f = cl.free_rank();
        let mut cols = Vec::with_capacity(f);
        for k in 0..f {
            let mut e = vec![BigInt::zero(); f];
            e[k] = BigInt::one();
            let unit = DivisorClass {
                free: e,
                torsion: vec![BigInt::zero(); cl.torsion().len()],
            };
            cols.push(self.permute_class(perm, &unit)?.free);
        }
        Ok(IntMatrix::from_columns(&cols, f))
    }

    /// The class of the divisor with coefficients moved along the ray permutation.
    pub fn permute_class(&self, perm: &[usize], c: &DivisorClass) -> Result<DivisorClass> {
        let cl = self.class_group()?;
        let lam = cl.lift(c)?;
        let mut moved = vec![BigInt::zero(); lam.len()];
        for (i, x) in lam.into_iter().enumerate() {
            moved[perm[i]] = x;
        }
        Ok(cl.project(&moved))
    }
}

struct Search<'a, A: Fn(usize, usize) -> bool> {
    fan: &'a Fan,
    basis: &'a [usize],
    degree: &'a [usize],
    adjacent: &'a A,
}

impl<A: Fn(usize, usize) -> bool> Search<'_, A> {
    fn extend(
        &self,
        images: &mut Vec<usize>,
        leaf: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let level = images.len();
        if level == self.basis.len() {
            return leaf(images);
        }
        let src = self.basis[level];
        for cand in 0..self.fan.n_rays() {
            if images.contains(&cand) || self.degree[cand] != self.degree[src] {
                continue;
            }
            if (0..level)
                .any(|k| (self.adjacent)(self.basis[k], src) != (self.adjacent)(images[k], cand))
            {
                continue;
            }
            images.push(cand);
            self.extend(images, leaf)?;
            images.pop();
        }
        Ok(())
    }
}
