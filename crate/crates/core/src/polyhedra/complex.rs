use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use super::faces::affine_dim;
use super::lp::LinearProgram;
use super::polyhedron::Polyhedron;
use crate::error::Result;
use crate::linalg::vector::rats;

/// A finite polytopal complex. Cells are convex hulls of subsets of `points`;
/// the cell list is closed under taking nonempty faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolytopalComplex {
    dim: usize,
    points: Vec<Vec<BigRational>>,
    /// `(dimension, sorted point indices)`, sorted.
    cells: Vec<(isize, Vec<usize>)>,
}

impl PolytopalComplex {
    pub fn empty(dim: usize) -> Self {
        PolytopalComplex {
            dim,
            points: Vec::new(),
            cells: Vec::new(),
        }
    }

    /// All nonempty faces of a polytope.
    pub fn from_polytope(p: &Polyhedron) -> Result<Self> {
        let fl = p.face_lattice()?;
        let cells = fl
            .faces()
            .iter()
            .filter(|f| f.dim >= 0)
            .map(|f| (f.dim, f.vertices.clone()))
            .collect();
        Ok(PolytopalComplex {
            dim: p.dim(),
            points: fl.points().to_vec(),
            cells,
        })
    }

    /// The union of the face complexes of several polytopes. The polytopes
    /// must meet in common faces.
    pub fn from_polytopes(dim: usize, polytopes: &[Polyhedron]) -> Result<Self> {
        let mut index: BTreeMap<Vec<BigRational>, usize> = BTreeMap::new();
        let mut points = Vec::new();
        let mut cells: BTreeSet<(isize, Vec<usize>)> = BTreeSet::new();
        for p in polytopes {
            let fl = p.face_lattice()?;
            let map: Vec<usize> = fl
                .points()
                .iter()
                .map(|v| {
                    *index.entry(v.clone()).or_insert_with(|| {
                        points.push(v.clone());
                        points.len() - 1
                    })
                })
                .collect();
            for f in fl.faces().iter().filter(|f| f.dim >= 0) {
                let mut vs: Vec<usize> = f.vertices.iter().map(|&i| map[i]).collect();
                vs.sort_unstable();
                cells.insert((f.dim, vs));
            }
        }
        Ok(PolytopalComplex {
            dim,
            points,
            cells: cells.into_iter().collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn cells(&self) -> &[(isize, Vec<usize>)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest cell dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.cells.iter().map(|c| c.0).max().unwrap_or(-1)
    }

    pub fn cell_polytope(&self, i: usize) -> Polyhedron {
        let vs = self.cells[i]
            .1
            .iter()
            .map(|&k| self.points[k].clone())
            .collect();
        Polyhedron::from_vrep(self.dim, vs, Vec::new(), Vec::new()).expect("cells are nonempty")
    }

    /// Keeps the cells selected by `keep`; the caller guarantees closure under faces.
    pub fn filter_cells(&self, keep: impl Fn(usize) -> bool) -> Self {
        let cells = (0..self.cells.len())
            .filter(|&i| keep(i))
            .map(|i| self.cells[i].clone())
            .collect();
        PolytopalComplex {
            dim: self.dim,
            points: self.points.clone(),
            cells,
        }
    }

    /// Cells disjoint from `q`. Disjointness is decided by LP feasibility of
    /// `conv(cell) ∩ q`.
    pub fn disjoint_face_subcomplex(&self, q: &Polyhedron) -> Self {
        if q.is_empty() {
            return self.clone();
        }
        let keep: Vec<bool> = self
            .cells
            .iter()
            .map(|(_, vs)| !self.cell_meets(vs, q))
            .collect();
        self.filter_cells(|i| keep[i])
    }

    fn cell_meets(&self, vs: &[usize], q: &Polyhedron) -> bool {
        // Variables: convex weights on the cell's vertices.
        let k = vs.len();
        let mut lp = LinearProgram::new(k);
        let one = num_bigint::BigInt::from(1);
        let zero = num_bigint::BigInt::from(0);
        for i in 0..k {
            let mut e = vec![zero.clone(); k];
            e[i] = one.clone();
            lp.add_ge(e, zero.clone());
        }
        lp.add_eq(vec![one.clone(); k], one.clone());
        let combine = |normal: &[num_bigint::BigInt]| -> Vec<BigRational> {
            let n = rats(normal);
            vs.iter()
                .map(|&v| n.iter().zip(&self.points[v]).map(|(a, x)| a * x).sum())
                .collect()
        };
        for i in q.inequalities() {
            lp.add_ge_rat(&combine(&i.normal), &i.rhs);
        }
        for e in q.equations() {
            lp.add_eq_rat(&combine(&e.normal), &e.rhs);
        }
        lp.is_feasible()
    }

    /// Chains of the face poset (nonempty cells ordered by inclusion) that are
    /// maximal; these are the facets of the barycentric subdivision.
    pub fn order_complex_facets(&self) -> Vec<Vec<usize>> {
        let n = self.cells.len();
        let sub = |i: usize, j: usize| -> bool {
            let (a, b) = (&self.cells[i].1, &self.cells[j].1);
            a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
        };
        // Covering relation.
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if self.cells[i].0 + 1 == self.cells[j].0 && sub(i, j) {
                    row.push(j);
                }
            }
        }
        let mut has_down = vec![false; n];
        for u in &up {
            for &j in u {
                has_down[j] = true;
            }
        }
        let mut out = Vec::new();
        let mut chain = Vec::new();
        fn walk(i: usize, up: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            chain.push(i);
            if up[i].is_empty() {
                out.push(chain.clone());
            } else {
                for &j in &up[i] {
                    walk(j, up, chain, out);
                }
            }
            chain.pop();
        }
        for (i, &down) in has_down.iter().enumerate() {
            if !down {
                walk(i, &up, &mut chain, &mut out);
            }
        }
        out
    }

    /// Checks closure under faces and recomputes cell dimensions.
    pub fn is_closed(&self) -> Result<bool> {
        let set: BTreeSet<&Vec<usize>> = self.cells.iter().map(|c| &c.1).collect();
        for i in 0..self.cells.len() {
            let pts: Vec<&Vec<BigRational>> =
                self.cells[i].1.iter().map(|&k| &self.points[k]).collect();
            if affine_dim(&pts) != self.cells[i].0 {
                return Ok(false);
            }
            let fl = self.cell_polytope(i).face_lattice()?;
            let local: Vec<usize> = fl
                .points()
                .iter()
                .map(|p| {
                    self.points
                        .iter()
                        .position(|q| q == p)
                        .expect("vertex among points")
                })
                .collect();
            for f in fl.faces().iter().filter(|f| f.dim >= 0) {
                let mut vs: Vec<usize> = f.vertices.iter().map(|&k| local[k]).collect();
                vs.sort_unstable();
                if !set.contains(&vs) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
