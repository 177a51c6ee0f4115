use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{fan_from_class_map, invalid};
use crate::error::Result;
use crate::fan::Fan;
use crate::linalg::IntMatrix;

/// Block sizes `l` and the non-positive blocks above the diagonal of the
/// class map. `c[i]` holds the blocks `c_{i,i+1}, ..., c_{i,k-1}`; block
/// `c_{ij}` has `l[j]` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub l: Vec<usize>,
    pub c: Vec<Vec<Vec<i64>>>,
}

impl SplittingData {
    /// All blocks zero: a product of projective spaces.
    pub fn product(l: &[usize]) -> Self {
        let k = l.len();
        let c = (0..k)
            .map(|i| (i + 1..k).map(|j| vec![0; l[j]]).collect())
            .collect();
        SplittingData { l: l.to_vec(), c }
    }

    pub fn k(&self) -> usize {
        self.l.len()
    }

    /// Block `c_{ij}` for `i < j`.
    pub fn block(&self, i: usize, j: usize) -> &[i64] {
        &self.c[i][j - i - 1]
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k == 0 {
            return Err(invalid("no blocks"));
        }
        if let Some(j) = self.l.iter().position(|&l| l < 2) {
            return Err(invalid(format!("block {j} has fewer than two rays")));
        }
        if self.c.len() != k {
            return Err(invalid(format!(
                "expected {k} rows of blocks, got {}",
                self.c.len()
            )));
        }
        for i in 0..k {
            if self.c[i].len() != k - i - 1 {
                return Err(invalid(format!("row {i} should hold {} blocks", k - i - 1)));
            }
            for j in i + 1..k {
                let b = self.block(i, j);
                if b.len() != self.l[j] {
                    return Err(invalid(format!(
                        "block ({i},{j}) should have {} entries",
                        self.l[j]
                    )));
                }
                if b.iter().any(|&x| x > 0) {
                    return Err(invalid(format!("block ({i},{j}) has a positive entry")));
                }
                if !b.contains(&0) {
                    return Err(invalid(format!("block ({i},{j}) has no zero entry")));
                }
            }
        }
        Ok(())
    }

    pub fn n_rays(&self) -> usize {
        self.l.iter().sum()
    }

    /// Column offset of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.l
            .iter()
            .scan(0, |acc, &l| {
                let o = *acc;
                *acc += l;
                Some(o)
            })
            .collect()
    }

    pub fn class_map(&self) -> IntMatrix {
        let k = self.k();
        let offsets = self.offsets();
        let mut pi = IntMatrix::zeros(k, self.n_rays());
        for i in 0..k {
            for nu in 0..self.l[i] {
                pi.set(i, offsets[i] + nu, BigInt::from(1));
            }
            for (j, &off) in offsets.iter().enumerate().skip(i + 1) {
                for (nu, &x) in self.block(i, j).iter().enumerate() {
                    pi.set(i, off + nu, BigInt::from(x));
                }
            }
        }
        pi
    }

    /// `v_j = (c̄_{0j}, ..., c̄_{j-1,j}, l_j, 0, ..., 0)`.
    pub fn v(&self, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.k()];
        for (i, x) in v.iter_mut().enumerate().take(j) {
            *x = BigInt::from(self.block(i, j).iter().sum::<i64>());
        }
        v[j] = BigInt::from(self.l[j]);
        v
    }

    /// Each `c_{j,j+1}` has two entries differing by more than `l_j`.
    pub fn is_general(&self) -> bool {
        (0..self.k().saturating_sub(1)).all(|j| {
            let b = self.block(j, j + 1);
            let spread = b.iter().max().unwrap() - b.iter().min().unwrap();
            spread > self.l[j] as i64
        })
    }
}

/// Maximal cones drop one ray from every block.
pub fn build_splitting(data: &SplittingData) -> Result<Fan> {
    data.validate()?;
    let offsets = data.offsets();
    let mut cones = vec![Vec::new()];
    for (&l, &start) in data.l.iter().zip(&offsets) {
        cones = cones
            .into_iter()
            .flat_map(|dropped: Vec<usize>| {
                (0..l).map(move |nu| {
                    let mut d = dropped.clone();
                    d.push(start + nu);
                    d
                })
            })
            .collect();
    }
    let n = data.n_rays();
    let cones = cones
        .into_iter()
        .map(|dropped| (0..n).filter(|i| !dropped.contains(i)).collect())
        .collect();
    fan_from_class_map(data.class_map(), cones)
}

/// `Z^free × fixed`: the first `free` coordinates are arbitrary, the rest
/// equal `fixed`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slab {
    pub free: usize,
    pub fixed: Vec<BigInt>,
}

impl Slab {
    pub fn contains(&self, a: &[BigInt]) -> bool {
        a.len() == self.free + self.fixed.len() && a[self.free..] == self.fixed[..]
    }

    /// Whether the slab lies in `Z^j × 0`.
    fn in_prefix(&self, j: usize) -> bool {
        j >= self.free
            && self.fixed[j - self.free..]
                .iter()
                .all(|x| *x == BigInt::from(0))
    }
}

/// A finite union of slabs, sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabSet {
    pub rank: usize,
    pub slabs: Vec<Slab>,
}

impl SlabSet {
    pub fn new(rank: usize, slabs: impl IntoIterator<Item = Slab>) -> Self {
        let set: BTreeSet<Slab> = slabs.into_iter().collect();
        SlabSet {
            rank,
            slabs: set.into_iter().collect(),
        }
    }

    pub fn contains(&self, a: &[BigInt]) -> bool {
        self.slabs.iter().any(|s| s.contains(a))
    }

    pub fn len(&self) -> usize {
        self.slabs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slabs.is_empty()
    }
}

/// `⋃_j Z^{j-1} × {-1, ..., -(l_j - 1)} × 0^{k-j}`.
pub fn splitting_seed(l: &[usize]) -> SlabSet {
    let k = l.len();
    let slabs = l.iter().enumerate().flat_map(|(j, &lj)| {
        (1..lj).map(move |t| {
            let mut fixed = vec![BigInt::from(0); k - j];
            fixed[0] = BigInt::from(-(t as i64));
            Slab { free: j, fixed }
        })
    });
    SlabSet::new(k, slabs)
}

/// Closes `seed` under `a ↦ a - v_{j+1}` for `a ∈ Z^j × 0`.
pub fn c_hull(seed: &SlabSet, data: &SplittingData) -> SlabSet {
    let k = data.k();
    let vs: Vec<Vec<BigInt>> = (0..k).map(|j| data.v(j)).collect();
    let mut seen: BTreeSet<Slab> = seed.slabs.iter().cloned().collect();
    let mut todo: Vec<Slab> = seed.slabs.clone();
    while let Some(s) = todo.pop() {
        for (j, v) in vs.iter().enumerate() {
            if !s.in_prefix(j) {
                continue;
            }
            let fixed = s
                .fixed
                .iter()
                .enumerate()
                .map(|(t, x)| x - &v[s.free + t])
                .collect();
            let shifted = Slab {
                free: s.free,
                fixed,
            };
            if seen.insert(shifted.clone()) {
                todo.push(shifted);
            }
        }
    }
    SlabSet::new(seed.rank, seen)
}

/// The hull of the seed, which is the whole immaculate locus when the
/// parameters are general and a subset of it otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingLocus {
    pub slabs: SlabSet,
    pub lower_bound_only: bool,
}

pub fn splitting_immaculate_general(data: &SplittingData) -> Result<SplittingLocus> {
    data.validate()?;
    Ok(SplittingLocus {
        slabs: c_hull(&splitting_seed(&data.l), data),
        lower_bound_only: !data.is_general(),
    })
}
