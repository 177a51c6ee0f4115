use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::tempting::tempting_subsets;
use crate::cohomology::is_immaculate;
use crate::error::{Error, Result};
use crate::fan::{Fan, RaySet};
use crate::polyhedra::Polyhedron;

/// Images of the vertices of `[-1, 0]^n` in `Cl(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeReport {
    /// `π(-1_R)`, indexed by the bitmask `R`.
    pub vertex_classes: Vec<Vec<BigInt>>,
    pub image_vertices: Vec<Vec<BigInt>>,
    pub lattice_points: Vec<Vec<BigInt>>,
    /// Distinct vertex classes that are immaculate, sorted.
    pub immaculate_classes: Vec<Vec<BigInt>>,
    /// Each non-immaculate vertex class has a single preimage.
    pub injective_on_maculate: bool,
    /// Every non-immaculate vertex class comes from a tempting subset.
    pub maculate_vertices_tempting: bool,
}

impl CubeReport {
    pub fn preimages(&self, class: &[BigInt]) -> Vec<RaySet> {
        (0..self.vertex_classes.len() as RaySet)
            .filter(|&r| self.vertex_classes[r as usize] == class)
            .collect()
    }
}

pub fn cube_analysis(fan: &Fan) -> Result<CubeReport> {
    if !fan.is_simplicial() {
        return Err(Error::NonSimplicialFan);
    }
    let data = tempting_subsets(fan)?;
    let (pi, _) = fan.class_map()?;
    let n = fan.n_rays();
    let vertex_classes: Vec<Vec<BigInt>> = (0..1u64 << n)
        .map(|r| {
            let corner: Vec<BigInt> = (0..n)
                .map(|i| {
                    if r >> i & 1 == 1 {
                        -BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            pi.apply(&corner)
        })
        .collect();
    let mut by_class: BTreeMap<&Vec<BigInt>, Vec<RaySet>> = BTreeMap::new();
    for (r, c) in vertex_classes.iter().enumerate() {
        by_class.entry(c).or_default().push(r as RaySet);
    }
    let mut immaculate_classes = Vec::new();
    let mut injective = true;
    let mut tempting_ok = true;
    for (c, pre) in &by_class {
        if is_immaculate(fan, &fan.free_class(c)?)? {
            immaculate_classes.push((*c).clone());
        } else {
            injective &= pre.len() == 1;
            tempting_ok &= pre.iter().all(|&r| data.report.is_tempting(r));
        }
    }
    let image = Polyhedron::from_int_vertices(pi.rows(), &vertex_classes)?;
    let image_vertices = image.integral_vertices().expect("lattice polytope");
    let lattice_points = image.lattice_points()?;
    Ok(CubeReport {
        vertex_classes,
        image_vertices,
        lattice_points,
        immaculate_classes,
        injective_on_maculate: injective,
        maculate_vertices_tempting: tempting_ok,
    })
}
