use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;

use super::polyhedron::Polyhedron;
use super::reduce::rref;

/// A face given by the indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: isize,
    pub vertices: Vec<usize>,
}

/// All faces of a polytope, the empty face included, sorted by dimension and
/// then by vertex list. The last face is the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    points: Vec<Vec<BigRational>>,
    faces: Vec<Face>,
}

/// Dimension of the affine hull of some points.
pub(crate) fn affine_dim(points: &[&Vec<BigRational>]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    rref(diffs).1.len() as isize
}

impl FaceLattice {
    pub(crate) fn of_polytope(p: &Polyhedron) -> FaceLattice {
        let points = p.vertices().to_vec();
        if points.is_empty() {
            return FaceLattice {
                points,
                faces: vec![Face {
                    dim: -1,
                    vertices: Vec::new(),
                }],
            };
        }
        let facets: Vec<BTreeSet<usize>> = p
            .inequalities()
            .iter()
            .map(|ineq| {
                (0..points.len())
                    .filter(|&i| ineq.is_tight(&points[i]))
                    .collect()
            })
            .collect();
        let all: BTreeSet<usize> = (0..points.len()).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        seen.insert(all.clone());
        let mut stack = vec![all];
        while let Some(f) = stack.pop() {
            for g in &facets {
                let h: BTreeSet<usize> = f.intersection(g).copied().collect();
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        seen.insert(BTreeSet::new());
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let pts: Vec<&Vec<BigRational>> = s.iter().map(|&i| &points[i]).collect();
                Face {
                    dim: affine_dim(&pts),
                    vertices: s.into_iter().collect(),
                }
            })
            .collect();
        faces.sort();
        FaceLattice { points, faces }
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: isize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn count_of_dim(&self, k: isize) -> usize {
        self.faces_of_dim(k).count()
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.dim)
    }

    /// `f_{-1}, f_0, ..., f_d`.
    pub fn f_vector(&self) -> Vec<usize> {
        (-1..=self.dim()).map(|k| self.count_of_dim(k)).collect()
    }

    /// Is face `i` contained in face `j`?
    pub fn is_subface(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.faces[i].vertices, &self.faces[j].vertices);
        a.iter().all(|v| b.binary_search(v).is_ok())
    }

    /// Pairs `(i, j)` with face `i` a facet of face `j`.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.faces.len() {
            for i in 0..self.faces.len() {
                if self.faces[i].dim + 1 == self.faces[j].dim && self.is_subface(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
