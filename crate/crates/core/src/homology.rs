//! Reduced simplicial homology over Q or GF(p), with integral torsion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::elementary_divisors_sparse;
use crate::polyhedra::PolytopalComplex;

/// Coefficient field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rational,
    /// GF(p) for a prime p.
    Prime(u64),
}

impl Field {
    fn rank_of(&self, divisors: &[BigInt]) -> usize {
        match self {
            Field::Rational => divisors.len(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                divisors.iter().filter(|d| !(*d % &p).is_zero()).count()
            }
        }
    }
}

/// Reduced Betti numbers and integral torsion, indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    betti: Vec<usize>,
    torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    /// Homology of the empty complex: only `b_{-1} = 1`.
    pub fn empty_complex() -> Self {
        HomologyProfile {
            betti: vec![1],
            torsion: vec![Vec::new()],
        }
    }

    /// Homology of a contractible space.
    pub fn acyclic() -> Self {
        HomologyProfile {
            betti: vec![0],
            torsion: vec![Vec::new()],
        }
    }

    /// Builds a profile from per-dimension data starting at dimension -1.
    pub fn from_parts(mut betti: Vec<usize>, mut torsion: Vec<Vec<BigInt>>) -> Self {
        torsion.resize(betti.len(), Vec::new());
        while betti.len() > 1
            && betti.last() == Some(&0)
            && torsion.last().is_some_and(Vec::is_empty)
        {
            betti.pop();
            torsion.pop();
        }
        if betti.is_empty() {
            betti.push(0);
            torsion.push(Vec::new());
        }
        HomologyProfile { betti, torsion }
    }

    /// Reduced Betti number in dimension `k >= -1`.
    pub fn betti(&self, k: isize) -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.betti.get(i).copied())
            .unwrap_or(0)
    }

    /// `(dimension, Betti number)` pairs with nonzero Betti number.
    pub fn nonzero(&self) -> Vec<(isize, usize)> {
        self.betti
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(i, &b)| (i as isize - 1, b))
            .collect()
    }

    /// Elementary divisors above one of the integral homology in dimension `k`.
    pub fn torsion(&self, k: isize) -> &[BigInt] {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.torsion.get(i))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn betti_numbers(&self) -> &[usize] {
        &self.betti
    }

    /// All reduced homology vanishes, `b_{-1}` included.
    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    pub fn max_dim(&self) -> isize {
        self.betti.len() as isize - 2
    }
}

/// A finite abstract simplicial complex given by generating simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// The complex generated by the given simplices; non-maximal ones are dropped.
    pub fn new(simplices: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut s: Vec<Vec<u32>> = simplices
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v
            })
            .filter(|v| !v.is_empty())
            .collect();
        s.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        s.dedup();
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for f in s {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        facets.sort();
        SimplicialComplex { facets }
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Faces grouped by dimension, index 0 holding the empty face.
    fn faces_by_dim(&self) -> Vec<Vec<Vec<u32>>> {
        let top = self.dim();
        let mut sets: Vec<std::collections::HashSet<Vec<u32>>> =
            vec![Default::default(); (top + 2) as usize];
        sets[0].insert(Vec::new());
        for f in &self.facets {
            let n = f.len();
            assert!(n < 32, "simplex too large for subset enumeration");
            for mask in 1u32..(1u32 << n) {
                let s: Vec<u32> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                sets[s.len()].insert(s);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<Vec<u32>> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn reduced_homology(&self, field: Field) -> HomologyProfile {
        if self.facets.is_empty() {
            return HomologyProfile::empty_complex();
        }
        let faces = self.faces_by_dim();
        let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
        // divisors[k] for the boundary from faces[k] to faces[k-1] (k >= 1 in index terms).
        let mut divisors: Vec<Vec<BigInt>> = vec![Vec::new(); faces.len() + 1];
        for k in 1..faces.len() {
            let index: HashMap<&Vec<u32>, usize> = faces[k - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f, i))
                .collect();
            let mut entries = Vec::with_capacity(faces[k].len() * k);
            for (j, f) in faces[k].iter().enumerate() {
                for i in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(i);
                    let sign = if i % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    entries.push((index[&g], j, sign));
                }
            }
            divisors[k] = elementary_divisors_sparse(counts[k - 1], counts[k], entries);
        }
        let ranks: Vec<usize> = divisors.iter().map(|d| field.rank_of(d)).collect();
        let mut betti = Vec::with_capacity(faces.len());
        let mut torsion = Vec::with_capacity(faces.len());
        for k in 0..faces.len() {
            let b = counts[k] - ranks[k] - ranks[k + 1];
            betti.push(b);
            torsion.push(
                divisors[k + 1]
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect(),
            );
        }
        HomologyProfile::from_parts(betti, torsion)
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Reduced homology of a polytopal complex, computed on the order complex of
/// its face poset (the barycentric subdivision).
pub fn reduced_homology(complex: &PolytopalComplex, field: Field) -> HomologyProfile {
    let chains = complex.order_complex_facets();
    SimplicialComplex::new(
        chains
            .into_iter()
            .map(|c| c.into_iter().map(|i| i as u32).collect()),
    )
    .reduced_homology(field)
}

/// Nonempty with vanishing reduced homology.
pub fn is_k_acyclic(complex: &PolytopalComplex, field: Field) -> bool {
    reduced_homology(complex, field).is_acyclic()
}
