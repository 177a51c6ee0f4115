mod common;

use std::collections::BTreeMap;

use common::{class, hexagon, hirzebruch, p1xp1, p2, p235};
use immaculate_core::cohomology::is_immaculate;
use immaculate_core::fan::{mask_of, Fan, RaySet};
use immaculate_core::homology::Field;
use immaculate_core::linalg::vector::ints;
use immaculate_core::locus::{
    cube_analysis, immaculate_locus, immaculate_locus_in_order, is_really_immaculate,
    maculate_region, tempting_subsets, tempting_subsets_direct, Decision, LatticeLine,
};
use immaculate_core::polyhedra::Cone;
use immaculate_core::Error;

fn masks(sets: &[&[usize]]) -> Vec<RaySet> {
    let mut v: Vec<RaySet> = sets.iter().map(|s| mask_of(s)).collect();
    v.sort_unstable();
    v
}

fn box_points(rank: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut points = vec![vec![]];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| (lo..=hi).map(move |v| [p.clone(), vec![v]].concat()))
            .collect();
    }
    points
}

#[test]
fn hexagon_tempting_subsets() {
    let expected = masks(&[
        &[],
        &[0, 2],
        &[0, 3],
        &[0, 4],
        &[1, 3],
        &[1, 4],
        &[1, 5],
        &[2, 4],
        &[2, 5],
        &[3, 5],
        &[0, 1, 3],
        &[0, 1, 4],
        &[0, 2, 3],
        &[0, 2, 4],
        &[0, 2, 5],
        &[0, 3, 4],
        &[0, 3, 5],
        &[1, 2, 4],
        &[1, 2, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[1, 4, 5],
        &[2, 3, 5],
        &[2, 4, 5],
        &[0, 1, 2, 4],
        &[0, 1, 3, 4],
        &[0, 1, 3, 5],
        &[0, 2, 3, 4],
        &[0, 2, 3, 5],
        &[0, 2, 4, 5],
        &[1, 2, 3, 5],
        &[1, 2, 4, 5],
        &[1, 3, 4, 5],
        &[0, 1, 2, 3, 4, 5],
    ]);
    let data = tempting_subsets(&hexagon()).unwrap();
    assert_eq!(data.report.tempting(), expected);
    assert_eq!(data.regions.len(), 34);
}

#[test]
fn hirzebruch_tempting_subsets() {
    for a in 1..=3 {
        let t = tempting_subsets(&hirzebruch(a)).unwrap().report.tempting();
        assert_eq!(t, masks(&[&[], &[0, 1], &[2, 3], &[0, 1, 2, 3]]), "a = {a}");
    }
}

#[test]
fn shortcuts_agree_with_homology() {
    let fans = [
        hexagon(),
        hirzebruch(0),
        hirzebruch(1),
        hirzebruch(3),
        p2(),
        p235(),
    ];
    for x in &fans {
        let fast = tempting_subsets(x).unwrap();
        let slow = tempting_subsets_direct(x, Field::Rational).unwrap();
        let all = x.all_rays_mask();
        for r in 0..=all {
            assert_eq!(
                fast.report.is_tempting(r),
                slow.is_tempting(r),
                "subset {r:b}"
            );
            assert_eq!(slow.is_tempting(r), slow.is_tempting(all ^ r));
        }
    }
    let report = &tempting_subsets(&hexagon()).unwrap().report;
    assert!(report.count_decided_by(Decision::Criterion3) > 0);
    assert!(report.count_decided_by(Decision::Criterion2) > 0);
    assert_eq!(report.status(0).decided_by, Decision::Criterion3);
}

#[test]
fn tempting_needs_a_complete_fan() {
    let x = Fan::from_i64(&[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
    assert_eq!(tempting_subsets(&x).err(), Some(Error::NotComplete));
}

#[test]
fn hirzebruch_maculate_regions() {
    for a in 0..=3 {
        let x = hirzebruch(a);
        let full = maculate_region(&x, 0b1111).unwrap();
        assert_eq!(full.vertex, ints(&[a - 2, -2]));
        assert_eq!(
            full.cone(),
            &Cone::from_rays(2, &[ints(&[-1, 0]), ints(&[a, -1])])
        );
        let r1 = maculate_region(&x, 0b0011).unwrap();
        assert_eq!(r1.vertex, ints(&[-2, 0]));
        assert_eq!(
            r1.cone(),
            &Cone::from_rays(2, &[ints(&[-1, 0]), ints(&[0, 1])])
        );
        let eff = maculate_region(&x, 0).unwrap();
        let rays: Vec<_> = x
            .ray_classes()
            .unwrap()
            .into_iter()
            .map(|c| c.free)
            .collect();
        assert_eq!(eff.cone(), &Cone::from_rays(2, &rays));
        assert_eq!(eff.vertex, ints(&[0, 0]));
    }
}

fn lines_of(v: &[(&[i64], &[i64])]) -> Vec<LatticeLine> {
    let mut out: Vec<LatticeLine> = v.iter().map(|(b, d)| LatticeLine::from_i64(b, d)).collect();
    out.sort();
    out
}

#[test]
fn hirzebruch_locus() {
    for a in 0..=3 {
        let x = hirzebruch(a);
        let locus = immaculate_locus(&x).unwrap();
        if a == 0 {
            assert_eq!(
                locus.lines(),
                lines_of(&[(&[0, -1], &[1, 0]), (&[-1, 0], &[0, 1])])
            );
            assert!(locus.isolated_points().is_empty());
        } else {
            assert_eq!(locus.lines(), lines_of(&[(&[0, -1], &[1, 0])]));
            assert_eq!(
                locus.isolated_points(),
                vec![ints(&[-1, 0]), ints(&[a - 1, -2])]
            );
        }
        for p in box_points(2, -6, 6) {
            let c = class(&p);
            let really = is_really_immaculate(&x, &c).unwrap();
            assert_eq!(locus.contains(&ints(&p)), really, "a = {a}, {p:?}");
            if really {
                assert!(is_immaculate(&x, &c).unwrap());
            }
        }
    }
}

#[test]
fn hexagon_locus() {
    let x = hexagon();
    let locus = immaculate_locus(&x).unwrap();
    let expected_lines = lines_of(&[
        (&[0, 0, -1, -1], &[1, 1, 0, 0]),
        (&[1, 0, -1, 0], &[1, 1, 0, 0]),
        (&[0, 0, -1, 0], &[1, 1, 0, 0]),
        (&[-1, 0, -1, -1], &[1, 1, 0, 0]),
        (&[0, -1, -1, 0], &[1, 0, 1, 1]),
        (&[0, -1, 0, 0], &[1, 0, 1, 1]),
        (&[-1, -1, 0, 0], &[1, 0, 1, 1]),
        (&[-1, -1, -1, 0], &[1, 0, 1, 1]),
        (&[-1, 0, 0, 0], &[0, 1, 1, 0]),
        (&[-1, 0, 1, 0], &[0, 1, 1, 0]),
        (&[-1, 0, 0, -1], &[0, 1, 1, 0]),
        (&[-1, 0, -1, -1], &[0, 1, 1, 0]),
    ]);
    assert_eq!(locus.lines(), expected_lines);
    let mut isolated = vec![
        ints(&[-2, -2, -2, -2]),
        ints(&[-2, -2, -2, 0]),
        ints(&[0, 0, 0, -1]),
        ints(&[0, 0, 0, 1]),
    ];
    isolated.sort();
    assert_eq!(locus.isolated_points(), isolated);
    for p in &isolated {
        assert!(is_immaculate(&x, &x.free_class(p).unwrap()).unwrap());
    }
    for l in &expected_lines {
        for t in -4..=4 {
            let p: Vec<_> = l
                .base
                .iter()
                .zip(&l.direction)
                .map(|(b, d)| b + d * t)
                .collect();
            let c = x.free_class(&p).unwrap();
            assert!(is_immaculate(&x, &c).unwrap());
            assert!(is_really_immaculate(&x, &c).unwrap());
        }
    }
    // A different removal order gives the same lattice points.
    let mut order = locus.tempting.clone();
    order.reverse();
    let other = immaculate_locus_in_order(&x, &order).unwrap();
    assert_eq!(other.lines(), locus.lines());
    assert_eq!(other.isolated_points(), locus.isolated_points());
}

#[test]
fn hexagon_locus_is_complete_in_a_box() {
    let x = hexagon();
    let locus = immaculate_locus(&x).unwrap();
    for p in box_points(4, -3, 2) {
        let c = class(&p);
        let really = is_really_immaculate(&x, &c).unwrap();
        assert_eq!(locus.contains(&ints(&p)), really, "{p:?}");
        // All immaculate classes on the hexagon are really immaculate.
        assert_eq!(is_immaculate(&x, &c).unwrap(), really, "{p:?}");
    }
}

#[test]
fn product_of_lines() {
    let locus = immaculate_locus(&p1xp1()).unwrap();
    assert_eq!(locus.pieces.len(), 2);
    let json = locus.to_json();
    assert_eq!(json["pieces"][0]["kind"], "lines");
    assert_eq!(json["tempting"].as_array().unwrap().len(), 4);
}

#[test]
fn immaculate_but_not_really() {
    let x = p235();
    let weights = x.ray_classes().unwrap();
    let sign = if weights[0].free[0] > 0.into() { 1 } else { -1 };
    let o1 = class(&[sign]);
    assert!(is_immaculate(&x, &o1).unwrap());
    assert!(!is_really_immaculate(&x, &o1).unwrap());
}

#[test]
fn hexagon_cube() {
    let x = hexagon();
    let cube = cube_analysis(&x).unwrap();
    assert_eq!(cube.image_vertices.len(), 46);
    assert_eq!(cube.lattice_points.len(), 54);
    assert_eq!(cube.immaculate_classes.len(), 20);
    assert!(cube.injective_on_maculate);
    assert!(cube.maculate_vertices_tempting);
    let data = tempting_subsets(&x).unwrap();
    for r in 0..64 {
        if !data.report.is_tempting(r) {
            assert!(cube
                .immaculate_classes
                .contains(&cube.vertex_classes[r as usize]));
        }
    }
}

#[test]
fn hirzebruch_cube() {
    for a in 1..=3 {
        let x = hirzebruch(a);
        let cube = cube_analysis(&x).unwrap();
        let data = tempting_subsets(&x).unwrap();
        let mut tempting_images: Vec<_> = data
            .report
            .tempting()
            .iter()
            .map(|&r| cube.vertex_classes[r as usize].clone())
            .collect();
        tempting_images.sort();
        let mut expected = vec![
            ints(&[0, 0]),
            ints(&[-2, 0]),
            ints(&[a, -2]),
            ints(&[a - 2, -2]),
        ];
        expected.sort();
        assert_eq!(tempting_images, expected);
        let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for r in 0..16u64 {
            if !data.report.is_tempting(r) {
                let c = cube.vertex_classes[r as usize]
                    .iter()
                    .map(|v| i64::try_from(v).unwrap())
                    .collect();
                *counts.entry(c).or_default() += 1;
            }
        }
        let mut expected: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for (c, k) in [
            (vec![-1, 0], 2),
            (vec![a - 1, -2], 2),
            (vec![-1, -1], 2),
            (vec![a - 1, -1], 2),
            (vec![0, -1], 1),
            (vec![a, -1], 1),
            (vec![-2, -1], 1),
            (vec![a - 2, -1], 1),
        ] {
            *expected.entry(c).or_default() += k;
        }
        assert_eq!(counts, expected);
    }
}
