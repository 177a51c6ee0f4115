//! Exceptional sequences of line bundles: ordered classes `L_0, ..., L_{n-1}`
//! with `L_j - L_i` immaculate whenever `i > j`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cohomology::is_immaculate;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::vector::{is_zero, sub};
use crate::linalg::IntMatrix;
use crate::polyhedra::Polyhedron;

pub type ExceptionalSequence = Vec<Vec<BigInt>>;

#[derive(Clone, Debug)]
pub struct SequenceQuery<'a> {
    pub fan: &'a Fan,
    pub length: usize,
    /// Candidate classes; `None` means the lattice points of `π([0, 1]^n)`.
    pub region: Option<Vec<Vec<BigInt>>>,
    /// Pin `L_0 = 0`.
    pub normalize: bool,
}

impl<'a> SequenceQuery<'a> {
    pub fn new(fan: &'a Fan, length: usize) -> Self {
        SequenceQuery {
            fan,
            length,
            region: None,
            normalize: true,
        }
    }
}

/// Lattice points of the image of `[0, 1]^n` under the class map. With
/// `L_0 = 0` every later class `L_i` has `-L_i` immaculate, and immaculate
/// classes lie in `π([-1, 0]^n)`, so this is the natural search box.
pub fn projected_cube(fan: &Fan) -> Result<Vec<Vec<BigInt>>> {
    let (pi, _) = fan.class_map()?;
    let n = fan.n_rays();
    let corners: Vec<Vec<BigInt>> = (0..1u64 << n)
        .map(|r| {
            pi.apply(
                &(0..n)
                    .map(|i| BigInt::from((r >> i & 1) as i64))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Polyhedron::from_int_vertices(pi.rows(), &corners)?.lattice_points()
}

/// Lattice points of `[-radius, radius]^rank`.
pub fn box_region(fan: &Fan, radius: i64) -> Result<Vec<Vec<BigInt>>> {
    let rank = fan.class_rank()?;
    Polyhedron::cube(rank, &BigInt::from(-radius), &BigInt::from(radius)).lattice_points()
}

/// Immaculacy of every difference of two region points.
fn difference_table(fan: &Fan, region: &[Vec<BigInt>]) -> Result<HashMap<Vec<BigInt>, bool>> {
    let diffs: BTreeSet<Vec<BigInt>> = region
        .iter()
        .flat_map(|a| region.iter().map(move |b| sub(a, b)))
        .filter(|d| !is_zero(d))
        .collect();
    let diffs: Vec<Vec<BigInt>> = diffs.into_iter().collect();
    let flags = diffs
        .par_iter()
        .map(|d| is_immaculate(fan, &fan.free_class(d)?))
        .collect::<Result<Vec<bool>>>()?;
    Ok(diffs.into_iter().zip(flags).collect())
}

/// All sequences of the requested length inside the region, sorted
/// lexicographically.
pub fn find_exceptional_sequences(q: &SequenceQuery) -> Result<Vec<ExceptionalSequence>> {
    if !q.fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if !q.fan.is_smooth() {
        return Err(Error::InvalidParameters(
            "exceptional sequences need a smooth fan".into(),
        ));
    }
    let mut region = match &q.region {
        Some(r) => r.clone(),
        None => projected_cube(q.fan)?,
    };
    region.sort();
    region.dedup();
    if region.is_empty() || q.length == 0 {
        return Err(Error::RegionEmpty);
    }
    let rank = q.fan.class_rank()?;
    let origin = vec![BigInt::from(0); rank];
    let mut points = region.clone();
    if q.normalize && !points.contains(&origin) {
        points.push(origin.clone());
        points.sort();
    }
    let table = difference_table(q.fan, &points)?;
    // later[a][b]: b may follow a, i.e. a - b is immaculate.
    let later: Vec<Vec<bool>> = points
        .iter()
        .map(|a| points.iter().map(|b| a != b && table[&sub(a, b)]).collect())
        .collect();
    let in_region: Vec<bool> = points
        .iter()
        .map(|p| region.binary_search(p).is_ok())
        .collect();
    let starts: Vec<usize> = if q.normalize {
        vec![points.binary_search(&origin).expect("origin was added")]
    } else {
        (0..points.len()).filter(|&i| in_region[i]).collect()
    };
    let found: Vec<Vec<Vec<usize>>> = starts
        .par_iter()
        .map(|&s| {
            let mut out = Vec::new();
            let mut path = vec![s];
            extend(&later, &in_region, q.length, &mut path, &mut out);
            out
        })
        .collect();
    let mut seqs: Vec<ExceptionalSequence> = found
        .into_iter()
        .flatten()
        .map(|idx| idx.into_iter().map(|i| points[i].clone()).collect())
        .collect();
    seqs.sort();
    Ok(seqs)
}

fn extend(
    later: &[Vec<bool>],
    in_region: &[bool],
    length: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() == length {
        out.push(path.clone());
        return;
    }
    for c in 0..later.len() {
        if in_region[c] && path.iter().all(|&p| later[p][c]) {
            path.push(c);
            extend(later, in_region, length, path, out);
            path.pop();
        }
    }
}

/// Whether `L_j - L_i` is immaculate for all `i > j`, recomputed from scratch.
pub fn is_exceptional(fan: &Fan, seq: &[Vec<BigInt>]) -> Result<bool> {
    for i in 0..seq.len() {
        for j in 0..i {
            if !is_immaculate(fan, &fan.free_class(&sub(&seq[j], &seq[i]))?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically smallest member.
    pub representative: ExceptionalSequence,
    pub members: Vec<ExceptionalSequence>,
}

fn renormalize(mut seq: ExceptionalSequence) -> ExceptionalSequence {
    if let Some(first) = seq.first().cloned() {
        seq.iter_mut().for_each(|l| *l = sub(l, &first));
    }
    seq
}

/// Orbits of `seqs` under the given actions on class coordinates, applied
/// class by class and followed by `L_0 = 0`. The actions should form a
/// group. Orbits are sorted by representative.
pub fn orbit_classes(seqs: &[ExceptionalSequence], actions: &[IntMatrix]) -> Vec<Orbit> {
    let normalized = seqs
        .first()
        .is_some_and(|s| s.first().is_some_and(|l| is_zero(l)));
    let mut remaining: BTreeSet<&ExceptionalSequence> = seqs.iter().collect();
    let mut orbits: BTreeMap<ExceptionalSequence, Vec<ExceptionalSequence>> = BTreeMap::new();
    while let Some(&s) = remaining.iter().next() {
        let mut members: BTreeSet<ExceptionalSequence> = BTreeSet::new();
        members.insert(s.clone());
        for g in actions {
            let image: ExceptionalSequence = s.iter().map(|l| g.apply(l)).collect();
            members.insert(if normalized {
                renormalize(image)
            } else {
                image
            });
        }
        for m in &members {
            remaining.remove(m);
        }
        let members: Vec<_> = members.into_iter().collect();
        orbits.insert(members[0].clone(), members);
    }
    orbits
        .into_iter()
        .map(|(representative, members)| Orbit {
            representative,
            members,
        })
        .collect()
}
