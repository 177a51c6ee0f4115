//! Double description: extreme rays and lineality of `{x : c·x >= 0}` over integer vectors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::vector::{dot, primitive};

/// A polyhedral cone as `cone(rays) + span(lines)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lines: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        if i / 64 >= self.0.len() {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0
            .iter()
            .zip(o.0.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

/// Generators of `{x ∈ R^dim : c·x >= 0 for all c in constraints}`.
pub fn cone_from_constraints(dim: usize, constraints: &[Vec<BigInt>]) -> ConeGenerators {
    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let nc = constraints.len();
    for (k, a) in constraints.iter().enumerate() {
        if let Some(li) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lines.swap_remove(li);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = l.iter().map(|x| -x).collect();
                al = -al;
            }
            for other in lines.iter_mut() {
                let ao = dot(a, other);
                if !ao.is_zero() {
                    let v: Vec<BigInt> = other
                        .iter()
                        .zip(&l)
                        .map(|(o, x)| &al * o - &ao * x)
                        .collect();
                    *other = primitive(&v);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let v: Vec<BigInt> =
                        r.v.iter().zip(&l).map(|(o, x)| &al * o - &ar * x).collect();
                    r.v = primitive(&v);
                }
                r.zeros.set(k);
            }
            // The new ray is tight on every earlier constraint.
            let mut zeros = Bits::new(nc);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray {
                v: primitive(&l),
                zeros,
            });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let pointed_dim = dim - lines.len();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.subset_of(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(nq, xp)| &vals[p] * nq - &vals[q] * xp)
                    .collect();
                let mut zeros = common;
                zeros.set(k);
                new_rays.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.set(k);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    ConeGenerators { lines, rays: out }
}

/// The dual description: constraints `{y : y·g >= 0}` for every generator,
/// `y·l = 0` for every line. Returned as generators of the dual cone.
pub fn dual_generators(dim: usize, gens: &ConeGenerators) -> ConeGenerators {
    let mut cons: Vec<Vec<BigInt>> = gens.rays.clone();
    for l in &gens.lines {
        cons.push(l.clone());
        cons.push(l.iter().map(|x| -x).collect());
    }
    cone_from_constraints(dim, &cons)
}
