#![allow(dead_code)]

use immaculate_core::fan::{DivisorClass, Fan};
use immaculate_core::linalg::vector::ints;
use immaculate_core::linalg::IntMatrix;

pub fn hexagon() -> Fan {
    Fan::from_i64(
        &[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
    )
    .unwrap()
    .with_class_map(IntMatrix::from_i64_rows(&[
        &[1, 0, 0, 1, 0, 0],
        &[0, 1, 0, 0, 1, 0],
        &[0, 0, 1, 0, 0, 1],
        &[1, -1, 1, 0, 0, 0],
    ]))
    .unwrap()
}

pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(
        &[&[1, 0], &[-1, -a], &[0, 1], &[0, -1]],
        &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
    )
    .unwrap()
    .with_class_map(IntMatrix::from_i64_rows(&[&[1, 1, 0, -a], &[0, 0, 1, 1]]))
    .unwrap()
}

pub fn p1() -> Fan {
    Fan::from_i64(&[&[1], &[-1]], &[&[0], &[1]]).unwrap()
}

pub fn p2() -> Fan {
    Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

pub fn p1xp1() -> Fan {
    hirzebruch(0)
}

/// Weighted projective plane with weights 2, 3, 5.
pub fn p235() -> Fan {
    Fan::from_i64(&[&[1, 0], &[1, -5], &[-1, 3]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

pub fn class(v: &[i64]) -> DivisorClass {
    DivisorClass::free(ints(v))
}

/// Replaces every maximal cone `σ ⊇ τ` by the cones `σ - ρ + new` for
/// `ρ ∈ τ`, where `new` is the sum of the rays of `τ`.
pub fn star_subdivide(rays: &mut Vec<Vec<i64>>, cones: &mut Vec<Vec<usize>>, tau: &[usize]) {
    let dim = rays[0].len();
    let new: Vec<i64> = (0..dim)
        .map(|k| tau.iter().map(|&i| rays[i][k]).sum())
        .collect();
    let idx = rays.len();
    rays.push(new);
    let mut out = Vec::new();
    for c in cones.iter() {
        if tau.iter().all(|t| c.contains(t)) {
            for r in tau {
                let mut d: Vec<usize> = c.iter().copied().filter(|x| x != r).collect();
                d.push(idx);
                d.sort_unstable();
                out.push(d);
            }
        } else {
            out.push(c.clone());
        }
    }
    *cones = out;
}

/// A smooth projective fan: a small starting variety followed by random
/// blow-ups along faces of maximal cones, stopping at `max_rays`.
pub fn random_smooth_fan(rng: &mut impl rand::Rng, dim: usize, max_rays: usize) -> Fan {
    let (mut rays, mut cones): (Vec<Vec<i64>>, Vec<Vec<usize>>) =
        match (dim, rng.random_range(0..3)) {
            (1, _) => (vec![vec![1], vec![-1]], vec![vec![0], vec![1]]),
            (2, 0) => (
                vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
                vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            ),
            (2, a) => (
                vec![vec![1, 0], vec![-1, -a], vec![0, 1], vec![0, -1]],
                vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
            ),
            (3, 0) => {
                let rays = vec![
                    vec![1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, 0, 1],
                    vec![-1, -1, -1],
                ];
                let cones = (0..4)
                    .map(|skip| (0..4).filter(|&i| i != skip).collect())
                    .collect();
                (rays, cones)
            }
            (3, _) => {
                let rays = vec![
                    vec![1, 0, 0],
                    vec![-1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, 0, 1],
                    vec![0, -1, -1],
                ];
                let mut cones = Vec::new();
                for a in 0..2 {
                    for pair in [[2, 3], [3, 4], [2, 4]] {
                        cones.push(vec![a, pair[0], pair[1]]);
                    }
                }
                (rays, cones)
            }
            _ => panic!("dimension {dim} not supported"),
        };
    let blowups = rng.random_range(0..=max_rays.saturating_sub(rays.len()));
    for _ in 0..blowups {
        let c = cones[rng.random_range(0..cones.len())].clone();
        let size = rng.random_range(2..=dim.max(2)).min(c.len());
        if size < 2 {
            break;
        }
        let mut tau = c.clone();
        while tau.len() > size {
            tau.remove(rng.random_range(0..tau.len()));
        }
        star_subdivide(&mut rays, &mut cones, &tau);
    }
    let ray_refs: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
    let cone_refs: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
    Fan::from_i64(&ray_refs, &cone_refs).unwrap()
}
