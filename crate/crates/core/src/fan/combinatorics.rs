use num_bigint::BigInt;

use super::{indices_of, Fan, RaySet};
use crate::homology::{Field, HomologyProfile, SimplicialComplex};
use crate::polyhedra::LinearProgram;

impl Fan {
    /// Is the ray set contained in a single maximal cone?
    pub fn in_single_cone(&self, s: RaySet) -> bool {
        self.cone_masks().iter().any(|&m| s & !m == 0)
    }

    /// Minimal ray sets not contained in a single cone, sorted by bitmask.
    pub fn primitive_collections(&self) -> &[RaySet] {
        self.caches.primitive.get_or_init(|| {
            let n = self.n_rays();
            let mut out = Vec::new();
            // Grow sets that lie in a cone; report the first extension that leaves.
            let mut stack: Vec<(RaySet, usize)> = vec![(0, 0)];
            while let Some((s, next)) = stack.pop() {
                for i in next..n {
                    let t = s | 1 << i;
                    if self.in_single_cone(t) {
                        stack.push((t, i + 1));
                    } else if indices_of(t)
                        .iter()
                        .all(|&j| self.in_single_cone(t & !(1 << j)))
                    {
                        out.push(t);
                    }
                }
            }
            out.sort_unstable();
            out
        })
    }

    /// Reduced homology of `V^>(R)`, the union of `conv(R ∩ σ(1))` over the cones.
    pub fn induced_homology(&self, r: RaySet, field: Field) -> HomologyProfile {
        if let Some(h) = self
            .caches
            .homology
            .lock()
            .expect("cache lock")
            .get(&(r, field))
        {
            return h.clone();
        }
        let h = if r == 0 {
            HomologyProfile::empty_complex()
        } else if self.is_simplicial() {
            self.induced_homology_simplicial(r, field)
        } else {
            self.induced_homology_general(r, field)
        };
        self.caches
            .homology
            .lock()
            .expect("cache lock")
            .insert((r, field), h.clone());
        h
    }

    fn maximal_traces(&self, r: RaySet) -> Vec<RaySet> {
        let mut traces: Vec<RaySet> = self
            .cone_masks()
            .iter()
            .map(|&m| m & r)
            .filter(|&t| t != 0)
            .collect();
        traces.sort_unstable_by_key(|t| std::cmp::Reverse(t.count_ones()));
        traces.dedup();
        let mut out: Vec<RaySet> = Vec::new();
        for t in traces {
            if !out.iter().any(|&u| t & !u == 0) {
                out.push(t);
            }
        }
        out
    }

    fn induced_homology_simplicial(&self, r: RaySet, field: Field) -> HomologyProfile {
        let inside: Vec<RaySet> = self
            .primitive_collections()
            .iter()
            .copied()
            .filter(|&p| p & !r == 0)
            .collect();
        let union = inside.iter().fold(0, |a, &p| a | p);
        if union != r {
            // Some vertex of R lies in no non-face: the complex is a cone.
            return HomologyProfile::acyclic();
        }
        let n = r.count_ones() as isize;
        if inside.len() == 1 {
            return sphere(n - 2);
        }
        let direct_cost = self
            .maximal_cones()
            .len()
            .saturating_mul(1usize << self.dim().min(40));
        if inside.len() > 20 || direct_cost < (1usize << inside.len()) {
            let facets = self
                .maximal_traces(r)
                .into_iter()
                .map(|t| indices_of(t).into_iter().map(|i| i as u32).collect());
            return SimplicialComplex::new(facets).reduced_homology(field);
        }
        // Alexander dual: generated by the simplices R \ P; its nerve has a
        // simplex for each family of collections whose union misses part of R.
        let k = inside.len();
        let mut maximal: Vec<u32> = Vec::new();
        for j in 1u32..(1 << k) {
            if union_of(&inside, j) == r {
                continue;
            }
            if (0..k).all(|i| j >> i & 1 == 1 || union_of(&inside, j | 1 << i) == r) {
                maximal.push(j);
            }
        }
        let nerve = SimplicialComplex::new(
            maximal
                .into_iter()
                .map(|j| (0..k as u32).filter(|i| j >> i & 1 == 1).collect()),
        );
        let dual = nerve.reduced_homology(field);
        // H_i(K) = H^{n-i-3}(dual); torsion of H^j sits in H_{j-1}.
        let top = n - 2;
        let mut betti = Vec::new();
        let mut torsion = Vec::new();
        for i in -1..=top {
            betti.push(dual.betti(n - i - 3));
            torsion.push(dual.torsion(n - i - 4).to_vec());
        }
        HomologyProfile::from_parts(betti, torsion)
    }

    fn induced_homology_general(&self, r: RaySet, field: Field) -> HomologyProfile {
        let pieces = self.maximal_traces(r);
        let k = pieces.len();
        let meets = |j: &[usize]| -> bool {
            self.cones_meet_away_from_origin(&j.iter().map(|&i| pieces[i]).collect::<Vec<_>>())
        };
        // Build the nerve level by level.
        let mut level: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        let mut all: Vec<Vec<u32>> = level
            .iter()
            .map(|s| s.iter().map(|&i| i as u32).collect())
            .collect();
        while !level.is_empty() {
            let set: std::collections::HashSet<&Vec<usize>> = level.iter().collect();
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().expect("nonempty");
                for i in last + 1..k {
                    let mut t = s.clone();
                    t.push(i);
                    let faces_ok = (0..t.len() - 1).all(|drop| {
                        let mut f = t.clone();
                        f.remove(drop);
                        set.contains(&f)
                    });
                    if faces_ok && meets(&t) {
                        next.push(t);
                    }
                }
            }
            all.extend(
                next.iter()
                    .map(|s| s.iter().map(|&i| i as u32).collect::<Vec<u32>>()),
            );
            level = next;
        }
        SimplicialComplex::new(all).reduced_homology(field)
    }

    /// Do the cones over the given ray sets share a point other than the origin?
    fn cones_meet_away_from_origin(&self, sets: &[RaySet]) -> bool {
        let d = self.dim();
        let groups: Vec<Vec<usize>> = sets.iter().map(|&s| indices_of(s)).collect();
        let nvars = d + groups.iter().map(Vec::len).sum::<usize>();
        let mut lp = LinearProgram::new(nvars);
        let zero = BigInt::from(0);
        let mut offset = d;
        for (g, rays) in groups.iter().enumerate() {
            for t in 0..d {
                let mut row = vec![zero.clone(); nvars];
                row[t] = BigInt::from(1);
                for (k, &ri) in rays.iter().enumerate() {
                    row[offset + k] = -&self.rays()[ri][t];
                }
                lp.add_eq(row, zero.clone());
            }
            for k in 0..rays.len() {
                let mut row = vec![zero.clone(); nvars];
                row[offset + k] = BigInt::from(1);
                lp.add_ge(row, zero.clone());
            }
            if g == 0 {
                let mut row = vec![zero.clone(); nvars];
                for k in 0..rays.len() {
                    row[offset + k] = BigInt::from(1);
                }
                lp.add_eq(row, BigInt::from(1));
            }
            offset += rays.len();
        }
        lp.is_feasible()
    }
}

fn union_of(sets: &[RaySet], j: u32) -> RaySet {
    (0..sets.len())
        .filter(|i| j >> i & 1 == 1)
        .fold(0, |a, i| a | sets[i])
}

fn sphere(dim: isize) -> HomologyProfile {
    let mut betti = vec![0; (dim + 2) as usize];
    betti[(dim + 1) as usize] = 1;
    HomologyProfile::from_parts(betti, vec![Vec::new(); (dim + 2) as usize])
}
