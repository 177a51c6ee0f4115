//! Tempting subsets, maculate regions, the immaculate locus and the cube of
//! vertex classes.

mod cube;
mod line;
mod region;
mod tempting;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::{DivisorClass, Fan, RaySet};
use crate::homology::Field;
use crate::linalg::vector::to_i64;
use crate::polyhedra::{Inequality, Polyhedron};

pub use cube::{cube_analysis, CubeReport};
pub use line::LatticeLine;
pub use region::{maculate_region, MaculateRegion};
pub use tempting::{
    tempting_subsets, tempting_subsets_direct, tempting_subsets_over, Decision, SubsetStatus,
    TemptingData, TemptingReport,
};

/// One piece of the locus, classified by shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusPiece {
    /// A bounded piece and its lattice points.
    Points {
        region: Polyhedron,
        points: Vec<Vec<BigInt>>,
    },
    /// A bounded polytope times a line; its lattice points form parallel lattice lines.
    Lines {
        region: Polyhedron,
        lines: Vec<LatticeLine>,
    },
    /// Anything else, kept as an H-description.
    Polyhedron { region: Polyhedron },
}

impl LocusPiece {
    pub fn region(&self) -> &Polyhedron {
        match self {
            LocusPiece::Points { region, .. }
            | LocusPiece::Lines { region, .. }
            | LocusPiece::Polyhedron { region } => region,
        }
    }
}

/// Polyhedra in `Cl(X) ⊗ R` whose lattice points are the really immaculate classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusDescription {
    pub rank: usize,
    pub pieces: Vec<LocusPiece>,
    pub tempting: Vec<RaySet>,
}

impl LocusDescription {
    /// Lattice lines over all pieces, sorted.
    pub fn lines(&self) -> Vec<LatticeLine> {
        let mut out: Vec<LatticeLine> = self
            .pieces
            .iter()
            .filter_map(|p| match p {
                LocusPiece::Lines { lines, .. } => Some(lines.iter().cloned()),
                _ => None,
            })
            .flatten()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Lattice points of bounded pieces that lie on no listed line, sorted.
    pub fn isolated_points(&self) -> Vec<Vec<BigInt>> {
        let lines = self.lines();
        let mut out: Vec<Vec<BigInt>> = self
            .pieces
            .iter()
            .filter_map(|p| match p {
                LocusPiece::Points { points, .. } => Some(points.iter().cloned()),
                _ => None,
            })
            .flatten()
            .filter(|p| !lines.iter().any(|l| l.contains(p)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, c: &[BigInt]) -> bool {
        self.pieces.iter().any(|p| p.region().contains_int(c))
    }

    pub fn to_json(&self) -> Value {
        let ints = |v: &[BigInt]| -> Value {
            match to_i64(v) {
                Some(x) => json!(x),
                None => json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            }
        };
        let ineq = |i: &Inequality| json!({ "normal": ints(&i.normal), "rhs": i.rhs.to_string() });
        let pieces: Vec<Value> = self
            .pieces
            .iter()
            .map(|p| match p {
                LocusPiece::Points { points, .. } => {
                    json!({ "kind": "points", "points": points.iter().map(|q| ints(q)).collect::<Vec<_>>() })
                }
                LocusPiece::Lines { lines, .. } => json!({
                    "kind": "lines",
                    "direction": lines.first().map(|l| ints(&l.direction)),
                    "base_points": lines.iter().map(|l| ints(&l.base)).collect::<Vec<_>>(),
                }),
                LocusPiece::Polyhedron { region } => json!({
                    "kind": "polyhedron",
                    "inequalities": region.inequalities().iter().map(ineq).collect::<Vec<_>>(),
                    "equations": region.equations().iter().map(ineq).collect::<Vec<_>>(),
                }),
            })
            .collect();
        json!({ "pieces": pieces, "tempting": self.tempting })
    }
}

fn free_coordinates(fan: &Fan, c: &DivisorClass) -> Result<Vec<BigInt>> {
    let cl = fan.class_group()?;
    if !cl.is_torsion_free() {
        return Err(Error::TorsionUnsupported);
    }
    if c.free.len() != cl.free_rank() {
        return Err(Error::DimensionMismatch {
            expected: cl.free_rank(),
            found: c.free.len(),
        });
    }
    Ok(c.free.clone())
}

/// Outside every maculate region of a tempting subset.
pub fn is_really_immaculate(fan: &Fan, c: &DivisorClass) -> Result<bool> {
    let x = free_coordinates(fan, c)?;
    let data = tempting_subsets(fan)?;
    Ok(data.regions.iter().all(|r| !r.contains(&x)))
}

pub fn immaculate_locus(fan: &Fan) -> Result<LocusDescription> {
    let data = tempting_subsets(fan)?;
    immaculate_locus_in_order(fan, &data.report.tempting())
}

/// The locus with the regions of the given tempting subsets removed in the
/// given order. The lattice points of the result do not depend on the order.
pub fn immaculate_locus_in_order(fan: &Fan, order: &[RaySet]) -> Result<LocusDescription> {
    let cl = fan.class_group()?;
    if !cl.is_torsion_free() {
        return Err(Error::TorsionUnsupported);
    }
    let rank = cl.free_rank();
    let data = tempting_subsets(fan)?;
    let mut pieces = vec![Polyhedron::universe(rank)];
    for &r in order {
        let region = data
            .regions
            .iter()
            .find(|g| g.subset == r)
            .ok_or_else(|| Error::InvalidParameters(format!("subset {r} is not tempting")))?;
        let halves = region.lattice_complement();
        let whole = region.polyhedron();
        let mut next = Vec::new();
        for p in &pieces {
            if !p.meets(&whole) {
                next.push(p.clone());
                continue;
            }
            for h in &halves {
                let q = p.cut(h);
                if q.is_empty() || (q.is_bounded() && q.lattice_points()?.is_empty()) {
                    continue;
                }
                next.push(q);
            }
        }
        pieces = keep_maximal(next);
    }
    let pieces = pieces
        .into_iter()
        .map(classify_piece)
        .collect::<Result<Vec<_>>>()?;
    Ok(LocusDescription {
        rank,
        pieces,
        tempting: data.report.tempting(),
    })
}

fn keep_maximal(mut pieces: Vec<Polyhedron>) -> Vec<Polyhedron> {
    pieces.sort_by_key(|p| std::cmp::Reverse(p.affine_dim()));
    let mut kept: Vec<Polyhedron> = Vec::new();
    for p in pieces {
        if !kept.iter().any(|k| k.contains_polyhedron(&p)) {
            kept.retain(|k| !p.contains_polyhedron(k));
            kept.push(p);
        }
    }
    kept
}

fn classify_piece(region: Polyhedron) -> Result<LocusPiece> {
    if region.is_bounded() {
        let points = region.lattice_points()?;
        return Ok(LocusPiece::Points { region, points });
    }
    if region.rays().is_empty() && region.lines().len() == 1 {
        let lines = line::lattice_lines(&region)?;
        return Ok(LocusPiece::Lines { region, lines });
    }
    Ok(LocusPiece::Polyhedron { region })
}

/// Per-class cohomology check over a field, for classes found in a box.
pub fn locus_points_in_box(fan: &Fan, radius: i64, field: Field) -> Result<Vec<Vec<BigInt>>> {
    let rank = fan.class_rank()?;
    let bx = Polyhedron::cube(rank, &BigInt::from(-radius), &BigInt::from(radius));
    let mut out = Vec::new();
    for p in bx.lattice_points()? {
        let c = fan.free_class(&p)?;
        if crate::cohomology::is_immaculate_over(fan, &c, field)? {
            out.push(p);
        }
    }
    Ok(out)
}
