use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::fan::{Fan, RaySet};
use crate::linalg::vector::{dot, primitive, rat, sub};
use crate::polyhedra::{Cone, Inequality, Polyhedron};

/// `π(-1_R) + cone(π(s_ρ e_ρ))` with `s_ρ = -1` on `R` and `+1` off `R`,
/// in free class coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaculateRegion {
    pub subset: RaySet,
    pub vertex: Vec<BigInt>,
    pub rays: Vec<Vec<BigInt>>,
    cone: Cone,
}

impl MaculateRegion {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn contains(&self, c: &[BigInt]) -> bool {
        self.cone.contains(&sub(c, &self.vertex))
    }

    pub fn contains_rat(&self, c: &[BigRational]) -> bool {
        let shifted: Vec<BigRational> = c
            .iter()
            .zip(&self.vertex)
            .map(|(x, v)| x - rat(v))
            .collect();
        self.cone.contains_rat(&shifted)
    }

    /// Facet inequalities `a·x >= a·v` with primitive `a`.
    pub fn inequalities(&self) -> Vec<Inequality> {
        self.cone
            .facets()
            .iter()
            .map(|f| self.through_vertex(f))
            .collect()
    }

    /// Equations `a·x = a·v` of the affine span.
    pub fn equations(&self) -> Vec<Inequality> {
        self.cone
            .equations()
            .iter()
            .map(|e| self.through_vertex(e))
            .collect()
    }

    fn through_vertex(&self, a: &[BigInt]) -> Inequality {
        let a = primitive(a);
        let rhs = dot(&a, &self.vertex);
        Inequality::from_ints(a, rhs)
    }

    pub fn polyhedron(&self) -> Polyhedron {
        Polyhedron::from_hrep_or_empty(self.vertex.len(), self.inequalities(), self.equations())
    }

    /// Half-spaces whose lattice points are exactly the lattice points
    /// outside the region: each facet and each side of each equation, moved
    /// across by one.
    pub fn lattice_complement(&self) -> Vec<Inequality> {
        let one = BigInt::one();
        let mut out: Vec<Inequality> = self
            .inequalities()
            .into_iter()
            .map(|i| {
                Inequality::from_ints(
                    i.normal.iter().map(|x| -x).collect(),
                    -i.rhs.to_integer() + &one,
                )
            })
            .collect();
        for e in self.equations() {
            let b = e.rhs.to_integer();
            out.push(Inequality::from_ints(
                e.normal.iter().map(|x| -x).collect(),
                -&b + &one,
            ));
            out.push(Inequality::from_ints(e.normal, b + &one));
        }
        out
    }
}

pub fn maculate_region(fan: &Fan, r: RaySet) -> Result<MaculateRegion> {
    let (pi, _) = fan.class_map()?;
    let n = fan.n_rays();
    let mut corner = vec![BigInt::zero(); n];
    let mut rays = Vec::with_capacity(n);
    for (i, c) in corner.iter_mut().enumerate() {
        let col = pi.column(i);
        if r >> i & 1 == 1 {
            *c = -BigInt::one();
            rays.push(col.iter().map(|x| -x).collect());
        } else {
            rays.push(col);
        }
    }
    let vertex = pi.apply(&corner);
    let cone = Cone::from_rays(pi.rows(), &rays);
    Ok(MaculateRegion {
        subset: r,
        vertex,
        rays,
        cone,
    })
}
