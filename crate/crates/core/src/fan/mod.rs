//! Fans, their validation and the class map.

mod automorphism;
mod combinatorics;
mod divisor;
mod json;

use std::collections::HashMap;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::{Field, HomologyProfile};
use crate::linalg::vector::{content, dot, is_zero};
use crate::linalg::{cokernel, smith_normal_form, IntMatrix, LatticeClass, QuotientLattice};
use crate::locus::TemptingData;
use crate::polyhedra::{Cone, LinearProgram};

pub use automorphism::FanAutomorphism;
pub use divisor::{DivisorClass, NefPair, SupportFunction, ToricDivisor};
pub use json::FanJson;

/// Subsets of rays as bitmasks over the ray order.
pub type RaySet = u64;

pub fn mask_of(indices: &[usize]) -> RaySet {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: RaySet) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Properties reported by [`Fan::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub complete: bool,
    pub simplicial: bool,
    pub smooth: bool,
    pub convex_support: bool,
    pub semiprojective: bool,
}

impl FanReport {
    /// Complete and semiprojective.
    pub fn projective(&self) -> bool {
        self.complete && self.semiprojective
    }
}

/// A rational polyhedral fan in `N = Z^dim`, given by primitive rays and the
/// ray index sets of its maximal cones.
#[derive(Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
    cone_masks: Vec<RaySet>,
    pi: Option<IntMatrix>,
    caches: Caches,
}

/// Derived data, recomputed lazily and dropped on clone.
#[derive(Debug, Default)]
struct Caches {
    class_group: OnceLock<Result<QuotientLattice>>,
    primitive: OnceLock<Vec<RaySet>>,
    heights: OnceLock<Option<Vec<BigInt>>>,
    simplicial: OnceLock<bool>,
    complete: OnceLock<bool>,
    homology: Mutex<HashMap<(RaySet, Field), HomologyProfile>>,
    tempting: Mutex<HashMap<Field, Arc<TemptingData>>>,
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Fan {
            dim: self.dim,
            rays: self.rays.clone(),
            cones: self.cones.clone(),
            cone_masks: self.cone_masks.clone(),
            pi: self.pi.clone(),
            caches: Caches::default(),
        }
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rays == other.rays
            && self.cones == other.cones
            && self.pi == other.pi
    }
}

impl Eq for Fan {}

impl Fan {
    /// Checks the fan axioms: primitive rays, strictly convex cones whose
    /// listed rays are their extreme rays, every ray used, and pairwise
    /// intersections along common faces.
    pub fn new(rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let dim = rays
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::MalformedFan("no rays".into()))?;
        if rays.len() > 64 {
            return Err(Error::MalformedFan("more than 64 rays".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::MalformedFan(format!("ray {i} has the wrong length")));
            }
            if is_zero(r) || !content(r).is_one_abs() {
                return Err(Error::MalformedFan(format!(
                    "ray {i} is not a primitive nonzero vector"
                )));
            }
        }
        for i in 0..rays.len() {
            for j in 0..i {
                if rays[i] == rays[j] {
                    return Err(Error::MalformedFan(format!("rays {j} and {i} coincide")));
                }
            }
        }
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cones.sort();
        cones.dedup();
        let mut used = vec![false; rays.len()];
        for c in &cones {
            if c.is_empty() {
                return Err(Error::MalformedFan("empty maximal cone".into()));
            }
            for &i in c {
                if i >= rays.len() {
                    return Err(Error::MalformedFan(format!(
                        "cone refers to missing ray {i}"
                    )));
                }
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::MalformedFan(format!("ray {i} lies in no cone")));
        }
        let geo: Vec<Cone> = cones.iter().map(|c| cone_of(&rays, c, dim)).collect();
        for (c, g) in cones.iter().zip(&geo) {
            if !g.is_pointed() {
                return Err(Error::MalformedFan(format!(
                    "cone {c:?} is not strictly convex"
                )));
            }
            if g.rays().len() != c.len() {
                return Err(Error::MalformedFan(format!(
                    "cone {c:?} lists a ray that is not extreme"
                )));
            }
        }
        for a in 0..cones.len() {
            for b in 0..a {
                if cones[a].iter().all(|i| cones[b].contains(i))
                    || cones[b].iter().all(|i| cones[a].contains(i))
                {
                    return Err(Error::MalformedFan(format!(
                        "cone {:?} is contained in {:?}",
                        cones[a], cones[b]
                    )));
                }
                check_intersection(&rays, dim, (&cones[a], &geo[a]), (&cones[b], &geo[b]))?;
            }
        }
        let cone_masks = cones.iter().map(|c| mask_of(c)).collect();
        Ok(Fan {
            dim,
            rays,
            cones,
            cone_masks,
            pi: None,
            caches: Caches::default(),
        })
    }

    pub fn from_i64(rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Uses `pi` for class coordinates instead of the Smith-form section.
    pub fn with_class_map(mut self, pi: IntMatrix) -> Result<Fan> {
        let cl = cokernel(&self.ray_matrix_transpose());
        if cl.free_rank() + self.dim != self.rays.len() {
            return Err(Error::TorusFactor);
        }
        cl.with_projection(pi.clone())?;
        self.pi = Some(pi);
        self.caches = Caches::default();
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone_masks(&self) -> &[RaySet] {
        &self.cone_masks
    }

    pub fn all_rays_mask(&self) -> RaySet {
        if self.rays.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rays.len()) - 1
        }
    }

    pub fn supplied_class_map(&self) -> Option<&IntMatrix> {
        self.pi.as_ref()
    }

    /// The `n x d` matrix whose rows are the rays (the map `M -> Z^n`).
    pub fn ray_matrix_transpose(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.dim)
    }

    /// Geometric cone of a maximal cone.
    pub fn cone(&self, i: usize) -> Cone {
        cone_of(&self.rays, &self.cones[i], self.dim)
    }

    /// Is the ray set a face of some maximal cone?
    pub fn is_face(&self, s: RaySet) -> bool {
        if self.is_simplicial() {
            return self.cone_masks.iter().any(|&m| s & !m == 0);
        }
        (0..self.cones.len()).any(|i| {
            let m = self.cone_masks[i];
            s & !m == 0 && self.face_rays_in_cone(i, s) == s
        })
    }

    /// Rays of the smallest face of cone `i` containing the rays `s`.
    fn face_rays_in_cone(&self, i: usize, s: RaySet) -> RaySet {
        let c = self.cone(i);
        let idx = indices_of(s);
        let mut face = self.cone_masks[i];
        for f in c.facets() {
            if idx.iter().all(|&r| dot(f, &self.rays[r]).is_zero()) {
                face &= mask_of(
                    &self.cones[i]
                        .iter()
                        .copied()
                        .filter(|&r| dot(f, &self.rays[r]).is_zero())
                        .collect::<Vec<_>>(),
                );
            }
        }
        face
    }

    pub fn is_simplicial(&self) -> bool {
        *self.caches.simplicial.get_or_init(|| {
            self.cones.iter().all(|c| {
                IntMatrix::from_rows(
                    &c.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>(),
                    self.dim,
                )
                .rank()
                    == c.len()
            })
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial()
            && self.cones.iter().all(|c| {
                let m = IntMatrix::from_rows(
                    &c.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>(),
                    self.dim,
                );
                smith_normal_form(&m)
                    .divisors
                    .iter()
                    .all(|d| d.is_one_abs())
            })
    }

    /// Walls: codimension-one faces of full-dimensional maximal cones, with the
    /// maximal cones containing them.
    fn walls(&self) -> BTreeMap<RaySet, Vec<usize>> {
        let mut walls: BTreeMap<RaySet, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cones.iter().enumerate() {
            let g = self.cone(i);
            if !g.is_full_dimensional() {
                continue;
            }
            for f in g.facets() {
                let w: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&r| dot(f, &self.rays[r]).is_zero())
                    .collect();
                walls.entry(mask_of(&w)).or_default().push(i);
            }
        }
        walls
    }

    fn is_pure_full(&self) -> bool {
        (0..self.cones.len()).all(|i| self.cone(i).is_full_dimensional())
    }

    pub fn is_complete(&self) -> bool {
        *self
            .caches
            .complete
            .get_or_init(|| self.is_pure_full() && self.walls().values().all(|v| v.len() == 2))
    }

    /// Support is convex: every boundary wall supports the cone over all rays.
    pub fn has_convex_support(&self) -> bool {
        if !self.is_pure_full() {
            return false;
        }
        for (w, owners) in self.walls() {
            if owners.len() != 1 {
                continue;
            }
            let i = owners[0];
            let g = self.cone(i);
            let f = g
                .facets()
                .iter()
                .find(|f| {
                    indices_of(w)
                        .iter()
                        .all(|&r| dot(f, &self.rays[r]).is_zero())
                })
                .expect("wall comes from a facet");
            if self.rays.iter().any(|r| dot(f, r).is_negative()) {
                return false;
            }
        }
        true
    }

    /// Convex support plus a strictly convex piecewise linear function.
    pub fn is_semiprojective(&self) -> bool {
        self.has_convex_support() && self.heights().is_some()
    }

    /// Heights `h` on the rays such that the piecewise linear function with
    /// values `h` is strictly convex across every interior wall (simplicial fans).
    /// For non-simplicial fans per-cone linear functions are solved for.
    /// Cached heights of a strictly convex piecewise linear function.
    pub(crate) fn tempting_cache(&self) -> &Mutex<HashMap<Field, Arc<TemptingData>>> {
        &self.caches.tempting
    }

    pub(crate) fn heights(&self) -> Option<&Vec<BigInt>> {
        self.caches
            .heights
            .get_or_init(|| self.strictly_convex_heights())
            .as_ref()
    }

    /// For each interior wall of a simplicial fan, the linear relation among
    /// its rays and the two opposite rays, scaled so the opposite rays have
    /// positive coefficients. Returns `(ray indices, coefficients)`.
    pub(crate) fn wall_relations(&self) -> Vec<(Vec<usize>, Vec<BigInt>)> {
        let mut out = Vec::new();
        for (w, owners) in self.walls() {
            if owners.len() != 2 {
                continue;
            }
            let (a, b) = (owners[0], owners[1]);
            let ia = (self.cone_masks[a] & !w).trailing_zeros() as usize;
            let ib = (self.cone_masks[b] & !w).trailing_zeros() as usize;
            let mut idx = indices_of(w);
            idx.push(ia);
            idx.push(ib);
            let cols: Vec<Vec<BigInt>> = idx.iter().map(|&r| self.rays[r].clone()).collect();
            let ker = crate::linalg::kernel_basis(&IntMatrix::from_columns(&cols, self.dim));
            let mut rel = ker[0].clone();
            if rel[rel.len() - 1].is_negative() {
                rel = rel.iter().map(|x| -x).collect();
            }
            out.push((idx, rel));
        }
        out
    }

    /// Heights `h` on the rays whose piecewise linear interpolation is strictly
    /// convex across every interior wall.
    fn strictly_convex_heights(&self) -> Option<Vec<BigInt>> {
        if !self.is_simplicial() {
            return self.strictly_convex_heights_general();
        }
        let n = self.rays.len();
        // Many walls share a relation; each distinct one is a single row.
        let mut rows = BTreeSet::new();
        for (idx, rel) in self.wall_relations() {
            let mut row = vec![BigInt::zero(); n];
            for (&r, c) in idx.iter().zip(&rel) {
                row[r] += c;
            }
            rows.insert(row);
        }
        let mut lp = LinearProgram::new(n);
        for row in rows {
            lp.add_ge(row, BigInt::from(1));
        }
        lp.feasible_point()
            .map(|p| crate::linalg::vector::clear_denominators(&p).0)
    }

    fn strictly_convex_heights_general(&self) -> Option<Vec<BigInt>> {
        // Variables: u_sigma in Q^d per maximal cone.
        let d = self.dim;
        let k = self.cones.len();
        let mut lp = LinearProgram::new(d * k);
        let var_row = |c: usize, ray: &[BigInt], sign: i64| -> Vec<BigInt> {
            let mut row = vec![BigInt::zero(); d * k];
            for t in 0..d {
                row[c * d + t] = &ray[t] * sign;
            }
            row
        };
        for (w, owners) in self.walls() {
            if owners.len() != 2 {
                continue;
            }
            let (a, b) = (owners[0], owners[1]);
            for r in indices_of(w) {
                let mut row = var_row(a, &self.rays[r], 1);
                for (x, y) in row.iter_mut().zip(var_row(b, &self.rays[r], -1)) {
                    *x += y;
                }
                lp.add_eq(row, BigInt::zero());
            }
            for (s, t) in [(a, b), (b, a)] {
                for r in indices_of(self.cone_masks[t] & !w) {
                    // <u_t - u_s, r> >= 1
                    let mut row = var_row(t, &self.rays[r], 1);
                    for (x, y) in row.iter_mut().zip(var_row(s, &self.rays[r], -1)) {
                        *x += y;
                    }
                    lp.add_ge(row, BigInt::from(1));
                }
            }
        }
        let p = lp.feasible_point()?;
        let (u, _) = crate::linalg::vector::clear_denominators(&p);
        let mut h = vec![BigInt::zero(); self.rays.len()];
        for (c, cone) in self.cones.iter().enumerate() {
            for &r in cone {
                h[r] = dot(&u[c * d..(c + 1) * d], &self.rays[r]);
            }
        }
        Some(h)
    }

    pub fn validate(&self) -> FanReport {
        let simplicial = self.is_simplicial();
        let convex_support = self.has_convex_support();
        FanReport {
            complete: self.is_complete(),
            simplicial,
            smooth: simplicial && self.is_smooth(),
            convex_support,
            semiprojective: convex_support && self.heights().is_some(),
        }
    }

    /// `Cl(X) = Z^n / M`, with coordinates given by the supplied `pi` when present.
    pub fn class_group(&self) -> Result<&QuotientLattice> {
        self.caches
            .class_group
            .get_or_init(|| {
                let rho_star = self.ray_matrix_transpose();
                if rho_star.rank() < self.dim {
                    return Err(Error::TorusFactor);
                }
                let cl = cokernel(&rho_star);
                match &self.pi {
                    Some(pi) => cl.with_projection(pi.clone()),
                    None => Ok(cl),
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The class map `pi : Z^n -> Cl(X)` (free part) and the class group.
    pub fn class_map(&self) -> Result<(IntMatrix, &QuotientLattice)> {
        let cl = self.class_group()?;
        Ok((cl.projection().clone(), cl))
    }

    pub fn class_rank(&self) -> Result<usize> {
        Ok(self.class_group()?.free_rank())
    }

    pub fn class_of(&self, coefficients: &[BigInt]) -> Result<DivisorClass> {
        if coefficients.len() != self.rays.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rays.len(),
                found: coefficients.len(),
            });
        }
        Ok(self.class_group()?.project(coefficients))
    }

    /// A torus-invariant divisor in the class `c`.
    pub fn lift_class(&self, c: &DivisorClass) -> Result<ToricDivisor> {
        Ok(ToricDivisor::new(self.class_group()?.lift(c)?))
    }

    pub fn free_class(&self, coords: &[BigInt]) -> Result<DivisorClass> {
        let cl = self.class_group()?;
        if coords.len() != cl.free_rank() {
            return Err(Error::DimensionMismatch {
                expected: cl.free_rank(),
                found: coords.len(),
            });
        }
        Ok(LatticeClass {
            free: coords.to_vec(),
            torsion: vec![BigInt::zero(); cl.torsion().len()],
        })
    }

    /// The canonical class `K = pi(-1, ..., -1)`.
    pub fn canonical_class(&self) -> Result<DivisorClass> {
        self.class_of(&vec![BigInt::from(-1); self.rays.len()])
    }

    /// `K - c`.
    pub fn serre_dual(&self, c: &DivisorClass) -> Result<DivisorClass> {
        let k = self.canonical_class()?;
        let cl = self.class_group()?;
        let free = k.free.iter().zip(&c.free).map(|(a, b)| a - b).collect();
        let torsion = k
            .torsion
            .iter()
            .zip(&c.torsion)
            .zip(cl.torsion())
            .map(|((a, b), d)| num_integer::Integer::mod_floor(&(a - b), d))
            .collect();
        Ok(LatticeClass { free, torsion })
    }

    /// Images `pi(e_i)` of the torus-invariant prime divisors.
    pub fn ray_classes(&self) -> Result<Vec<DivisorClass>> {
        (0..self.rays.len())
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.rays.len()];
                e[i] = BigInt::from(1);
                self.class_of(&e)
            })
            .collect()
    }

    /// Rays of cone `i` as a set of indices.
    pub fn cone_rays(&self, i: usize) -> BTreeSet<usize> {
        self.cones[i].iter().copied().collect()
    }
}

trait OneAbs {
    fn is_one_abs(&self) -> bool;
}

impl OneAbs for BigInt {
    fn is_one_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn cone_of(rays: &[Vec<BigInt>], idx: &[usize], dim: usize) -> Cone {
    let gens: Vec<Vec<BigInt>> = idx.iter().map(|&i| rays[i].clone()).collect();
    Cone::from_rays(dim, &gens)
}

/// `σ ∩ τ` must be the cone over the common rays and a face of both.
/// A functional `f >= 0` on `a` and `<= 0` on `b` vanishing on exactly the
/// common rays of both: the sum of the facet normals of `a` through them.
fn separated(
    rays: &[Vec<BigInt>],
    a: (&Vec<usize>, &Cone),
    b: (&Vec<usize>, &Cone),
    common: &[usize],
) -> bool {
    if !a.1.equations().is_empty() {
        return false;
    }
    let mut f = vec![BigInt::zero(); rays[0].len()];
    for facet in a.1.facets() {
        if common.iter().all(|&r| dot(facet, &rays[r]).is_zero()) {
            f.iter_mut().zip(facet).for_each(|(x, y)| *x += y);
        }
    }
    let zero_on = |idx: &Vec<usize>, sign_ok: &dyn Fn(&BigInt) -> bool| {
        idx.iter().all(|&r| {
            let v = dot(&f, &rays[r]);
            if common.contains(&r) {
                v.is_zero()
            } else {
                sign_ok(&v)
            }
        })
    };
    zero_on(a.0, &|v| v.is_positive()) && zero_on(b.0, &|v| v.is_negative())
}

fn check_intersection(
    rays: &[Vec<BigInt>],
    dim: usize,
    a: (&Vec<usize>, &Cone),
    b: (&Vec<usize>, &Cone),
) -> Result<()> {
    let common: Vec<usize> = a.0.iter().copied().filter(|i| b.0.contains(i)).collect();
    if separated(rays, a, b, &common) || separated(rays, b, a, &common) {
        return Ok(());
    }
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    for c in [a.1, b.1] {
        normals.extend(c.facets().iter().cloned());
        for e in c.equations() {
            normals.push(e.clone());
            normals.push(e.iter().map(|x| -x).collect());
        }
    }
    let meet = Cone::from_inequalities(dim, &normals);
    let expected = cone_of(rays, &common, dim);
    if meet != expected {
        return Err(Error::MalformedFan(format!(
            "cones {:?} and {:?} overlap in their interiors",
            a.0, b.0
        )));
    }
    for (idx, cone) in [a, b] {
        // Smallest face of `cone` containing the common rays.
        let mut face: BTreeSet<usize> = idx.iter().copied().collect();
        for f in cone.facets() {
            if common.iter().all(|&r| dot(f, &rays[r]).is_zero()) {
                face.retain(|&r| dot(f, &rays[r]).is_zero());
            }
        }
        if face.len() != common.len() {
            return Err(Error::MalformedFan(format!(
                "cones {:?} and {:?} do not meet in a common face",
                a.0, b.0
            )));
        }
    }
    Ok(())
}
