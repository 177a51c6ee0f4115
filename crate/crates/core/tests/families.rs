mod common;

use common::{class, hirzebruch};
use immaculate_core::cohomology::is_immaculate;
use immaculate_core::families::{
    build_pic2, build_pic3, build_splitting, c_hull, pic2_immaculate, pic3_candidates,
    pic3_immaculate_closed_form, splitting_immaculate_general, splitting_seed, ClosedFormStatus,
    ClosedFormVia, PicThreeData, PicTwoData, Slab, SlabSet, SplittingData,
};
use immaculate_core::fan::{mask_of, Fan};
use immaculate_core::linalg::vector::{int, ints, sub};
use immaculate_core::locus::{immaculate_locus, is_really_immaculate};
use num_bigint::BigInt;
use proptest::prelude::*;

fn grid(rank: usize, lo: i64, hi: i64) -> Vec<Vec<BigInt>> {
    let mut points = vec![vec![]];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p: Vec<BigInt>| (lo..=hi).map(move |v| [p.clone(), vec![int(v)]].concat()))
            .collect();
    }
    points
}

fn pic2(l1: usize, l2: usize, c: &[i64]) -> PicTwoData {
    PicTwoData {
        l1,
        l2,
        c: c.to_vec(),
    }
}

fn assert_smooth_complete(x: &Fan) {
    let report = x.validate();
    assert!(report.smooth && report.complete, "{report:?}");
}

fn sorted_collections(x: &Fan) -> Vec<u64> {
    let mut v = x.primitive_collections().to_vec();
    v.sort_unstable();
    v
}

#[test]
fn picard_rank_two_constructors() {
    let p1p1 = build_pic2(&pic2(2, 2, &[0, 0])).unwrap();
    assert_smooth_complete(&p1p1);
    assert_eq!(sorted_collections(&p1p1), vec![0b0011, 0b1100]);

    let f1 = build_pic2(&pic2(2, 2, &[0, -1])).unwrap();
    assert_smooth_complete(&f1);
    assert_eq!(
        f1.class_map().unwrap().0,
        hirzebruch(1).class_map().unwrap().0
    );

    let fivefold = build_pic2(&pic2(4, 3, &[0, -1, -1])).unwrap();
    assert_smooth_complete(&fivefold);
    assert_eq!(fivefold.dim(), 5);
    assert_eq!(fivefold.maximal_cones().len(), 12);
    assert_eq!(fivefold.primitive_collections().len(), 2);

    for bad in [
        pic2(1, 2, &[0, 0]),
        pic2(2, 2, &[-1, 0]),
        pic2(2, 3, &[0, -1, 0]),
        pic2(2, 2, &[0]),
    ] {
        assert!(build_pic2(&bad).is_err(), "{bad:?}");
    }
}

#[test]
fn picard_rank_two_closed_form() {
    let f1 = pic2(2, 2, &[0, -1]);
    assert!(pic2_immaculate(&f1, &ints(&[0, -2])));
    for x in -5..=5 {
        assert!(pic2_immaculate(&f1, &ints(&[x, -1])));
    }
    assert!(!pic2_immaculate(&f1, &ints(&[0, 0])));
    let p1p1 = pic2(2, 2, &[0, 0]);
    assert!(pic2_immaculate(&p1p1, &ints(&[-1, 5])));
    assert!(!pic2_immaculate(&p1p1, &ints(&[0, 0])));
    assert!(pic2(4, 3, &[0, -1, -1]).is_fano());
    assert!(!pic2(2, 2, &[0, -2]).is_fano());
}

#[test]
fn picard_rank_two_matches_engine() {
    for data in [
        pic2(2, 2, &[0, 0]),
        pic2(2, 2, &[0, -3]),
        pic2(4, 3, &[0, -1, -1]),
        pic2(3, 3, &[0, 0, -2]),
    ] {
        let x = build_pic2(&data).unwrap();
        let locus = immaculate_locus(&x).unwrap();
        for p in grid(2, -8, 8) {
            assert_eq!(
                pic2_immaculate(&data, &p),
                locus.contains(&p),
                "{data:?} {p:?}"
            );
        }
        // Integral and real loci agree.
        for p in grid(2, -5, 5) {
            let c = x.free_class(&p).unwrap();
            assert_eq!(
                is_immaculate(&x, &c).unwrap(),
                is_really_immaculate(&x, &c).unwrap(),
                "{data:?} {p:?}"
            );
        }
    }
}

#[test]
fn two_blocks_give_picard_rank_two() {
    let data = pic2(3, 2, &[0, -2]);
    let a = build_pic2(&data).unwrap();
    let b = build_splitting(&data.as_splitting()).unwrap();
    assert_eq!(a.class_map().unwrap().0, b.class_map().unwrap().0);
    assert_eq!(a.maximal_cones(), b.maximal_cones());
}

fn three_fold() -> SplittingData {
    SplittingData {
        l: vec![2, 2, 2],
        c: vec![vec![vec![0, 0], vec![-2, 0]], vec![vec![0, -2]], vec![]],
    }
}

#[test]
fn projective_bundle_over_a_quadric() {
    let data = three_fold();
    let x = build_splitting(&data).unwrap();
    assert_smooth_complete(&x);
    assert!(x.validate().projective());
    assert_eq!(x.dim(), 3);
    assert_eq!(
        sorted_collections(&x),
        vec![mask_of(&[0, 1]), mask_of(&[2, 3]), mask_of(&[4, 5])]
    );
    let c = class(&[-1, -1, 1]);
    assert!(is_immaculate(&x, &c).unwrap());
    assert!(!is_really_immaculate(&x, &c).unwrap());
}

#[test]
fn zero_blocks_give_products() {
    let data = SplittingData::product(&[2, 3, 2]);
    let x = build_splitting(&data).unwrap();
    assert_smooth_complete(&x);
    assert_eq!(x.dim(), 4);
    assert_eq!(
        sorted_collections(&x),
        vec![mask_of(&[0, 1]), mask_of(&[2, 3, 4]), mask_of(&[5, 6])]
    );
    let bad = SplittingData {
        l: vec![2, 2],
        c: vec![vec![vec![-1, -1]], vec![]],
    };
    assert!(build_splitting(&bad).is_err());
}

fn slab(free: usize, fixed: &[i64]) -> Slab {
    Slab {
        free,
        fixed: ints(fixed),
    }
}

#[test]
fn seeds() {
    assert_eq!(
        splitting_seed(&[4]),
        SlabSet::new(1, [slab(0, &[-1]), slab(0, &[-2]), slab(0, &[-3])])
    );
    assert_eq!(
        splitting_seed(&[2, 2]),
        SlabSet::new(2, [slab(0, &[-1, 0]), slab(1, &[-1])])
    );
    let s = splitting_seed(&[3, 4]);
    assert_eq!(s.len(), 2 + 3);
    assert!(s.contains(&ints(&[-2, 0])));
    assert!(s.contains(&ints(&[17, -3])));
    assert!(!s.contains(&ints(&[-3, 0])));
}

#[test]
fn hull_of_the_seed() {
    let k1 = SplittingData {
        l: vec![4],
        c: vec![vec![]],
    };
    assert_eq!(c_hull(&splitting_seed(&[4]), &k1), splitting_seed(&[4]));
    for a in 0..=4 {
        let data = SplittingData {
            l: vec![2, 2],
            c: vec![vec![vec![0, -a]], vec![]],
        };
        let hull = splitting_immaculate_general(&data).unwrap();
        let expected = SlabSet::new(
            2,
            [slab(0, &[-1, 0]), slab(0, &[a - 1, -2]), slab(1, &[-1])],
        );
        assert_eq!(hull.slabs, expected);
        assert_eq!(hull.lower_bound_only, a <= 2);
    }
    // Free coordinates survive the shift.
    let data = SplittingData {
        l: vec![2, 2, 2],
        c: vec![vec![vec![0, -3], vec![0, -1]], vec![vec![0, -3]], vec![]],
    };
    let hull = c_hull(&splitting_seed(&data.l), &data);
    assert!(hull.slabs.contains(&slab(1, &[-1, 0])));
    assert!(hull.slabs.contains(&slab(1, &[-1 + 3, -2])));
}

#[test]
fn general_hull_is_the_locus() {
    let cases = [
        SplittingData {
            l: vec![2, 2],
            c: vec![vec![vec![0, -3]], vec![]],
        },
        SplittingData {
            l: vec![2, 3],
            c: vec![vec![vec![0, -1, -4]], vec![]],
        },
        SplittingData {
            l: vec![2, 2, 2],
            c: vec![vec![vec![0, -3], vec![0, -1]], vec![vec![0, -3]], vec![]],
        },
    ];
    for data in cases {
        let hull = splitting_immaculate_general(&data).unwrap();
        assert!(!hull.lower_bound_only);
        let x = build_splitting(&data).unwrap();
        let locus = immaculate_locus(&x).unwrap();
        for p in grid(data.k(), -8, 8) {
            assert_eq!(
                hull.slabs.contains(&p),
                locus.contains(&p),
                "{data:?} {p:?}"
            );
        }
    }
}

#[test]
fn special_hull_is_only_a_lower_bound() {
    let data = SplittingData::product(&[2, 2]);
    let hull = splitting_immaculate_general(&data).unwrap();
    assert!(hull.lower_bound_only);
    let x = build_splitting(&data).unwrap();
    let locus = immaculate_locus(&x).unwrap();
    let mut extra = 0;
    for p in grid(2, -6, 6) {
        if hull.slabs.contains(&p) {
            assert!(locus.contains(&p));
        } else if locus.contains(&p) {
            extra += 1;
        }
    }
    assert!(extra > 0);
}

#[test]
fn hull_steps_preserve_immaculacy() {
    let data = three_fold();
    let x = build_splitting(&data).unwrap();
    for j in 0..2 {
        let v = data.v(j + 1);
        for p in grid(j + 1, -4, 3) {
            let mut a = p.clone();
            a.resize(3, int(0));
            let c = x.free_class(&a).unwrap();
            if is_immaculate(&x, &c).unwrap() {
                let shifted = x.free_class(&sub(&a, &v)).unwrap();
                assert!(is_immaculate(&x, &shifted).unwrap(), "{a:?}");
            }
            if is_really_immaculate(&x, &c).unwrap() {
                let shifted = x.free_class(&sub(&a, &v)).unwrap();
                assert!(is_really_immaculate(&x, &shifted).unwrap(), "{a:?}");
            }
        }
    }
}

fn block(len: usize, mut entries: Vec<i64>, zero_at: usize) -> Vec<i64> {
    entries.truncate(len);
    entries[zero_at % len] = 0;
    entries
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]
    #[test]
    fn seeds_are_really_immaculate(
        l in prop::collection::vec(2usize..=3, 2..=3),
        raw in prop::collection::vec(prop::collection::vec(-4i64..=0, 3), 3),
        zeros in prop::collection::vec(0usize..3, 3),
    ) {
        let k = l.len();
        let mut next = 0;
        let c = (0..k)
            .map(|i| {
                (i + 1..k)
                    .map(|j| {
                        let b = block(l[j], raw[next].clone(), zeros[next]);
                        next += 1;
                        b
                    })
                    .collect()
            })
            .collect();
        let data = SplittingData { l: l.clone(), c };
        let x = build_splitting(&data).unwrap();
        let seed = splitting_seed(&l);
        for s in &seed.slabs {
            for t in -3..=3 {
                let mut a = vec![int(t); s.free];
                a.extend(s.fixed.iter().cloned());
                let c = x.free_class(&a).unwrap();
                prop_assert!(is_really_immaculate(&x, &c).unwrap(), "{:?} {:?}", data, a);
            }
        }
    }
}

#[test]
fn picard_rank_three_constructor() {
    let data = PicThreeData::plain([1, 4, 3, 2, 5]);
    let x = build_pic3(&data).unwrap();
    assert_smooth_complete(&x);
    assert_eq!(x.dim(), 12);
    let mut expected: Vec<u64> = data
        .primitive_collections()
        .iter()
        .map(|c| mask_of(c))
        .collect();
    expected.sort_unstable();
    assert_eq!(sorted_collections(&x), expected);
    assert_eq!(expected.len(), 5);

    let data = PicThreeData {
        p: [2, 1, 2, 2, 1],
        c: vec![0, 3],
        b: vec![1, 2],
    };
    let x = build_pic3(&data).unwrap();
    assert_smooth_complete(&x);
    assert_eq!(
        x.canonical_class().unwrap().free,
        ints(&data.canonical_class())
    );

    assert!(build_pic3(&PicThreeData {
        p: [1, 1, 1, 1, 1],
        c: vec![1],
        b: vec![0]
    })
    .is_err());
    assert!(build_pic3(&PicThreeData {
        p: [1, 1, 1, 1, 1],
        c: vec![0],
        b: vec![-1]
    })
    .is_err());
}

#[test]
fn picard_rank_three_minors() {
    let data = PicThreeData {
        p: [2, 2, 3, 2, 2],
        c: vec![0, 4, 1],
        b: vec![2, 5],
    };
    let pi = data.class_map();
    let o = data.offsets();
    for a in 0..5 {
        let blocks = [a, (a + 1) % 5, (a + 3) % 5];
        for i in 0..data.p[blocks[0]] {
            for j in 0..data.p[blocks[1]] {
                for k in 0..data.p[blocks[2]] {
                    let cols = [o[blocks[0]] + i, o[blocks[1]] + j, o[blocks[2]] + k];
                    let det = pi.select_columns(&cols).determinant();
                    assert_eq!(det.magnitude(), &1u32.into());
                }
            }
        }
    }
}

/// Projection of `π(-1_R)` to the last two coordinates.
fn projected_vertex(data: &PicThreeData, blocks: &[usize]) -> Vec<BigInt> {
    let pi = data.class_map();
    let o = data.offsets();
    let mut corner = vec![int(0); pi.cols()];
    for &b in blocks {
        for nu in 0..data.p[b] {
            corner[o[b] + nu] = int(-1);
        }
    }
    pi.apply(&corner)[1..].to_vec()
}

#[test]
fn picard_rank_three_vertex_table() {
    let data = PicThreeData::plain([1, 4, 3, 2, 5]);
    let (p1, p2, p3, p4) = (4, 3, 2, 5);
    let table: Vec<(Vec<usize>, [i64; 2])> = vec![
        (vec![0, 1, 2, 3, 4], [-p1 - p2 + p4, p1 - p3 - p4]),
        (vec![], [0, 0]),
        (vec![2, 3, 4], [-p2 + p4, -p3 - p4]),
        (vec![0, 1], [-p1, p1]),
        (vec![3, 4, 0], [p4, -p3 - p4]),
        (vec![1, 2], [-p1 - p2, p1]),
        (vec![4, 0, 1], [-p1 + p4, p1 - p4]),
        (vec![2, 3], [-p2, -p3]),
        (vec![1, 2, 3], [-p1 - p2, p1 - p3]),
        (vec![4, 0], [p4, -p4]),
    ];
    for (blocks, yz) in table {
        assert_eq!(projected_vertex(&data, &blocks), ints(&yz), "{blocks:?}");
    }
    assert_eq!(projected_vertex(&data, &[0, 1, 2, 3, 4]), ints(&[-2, -3]));
    assert_eq!(projected_vertex(&data, &[3, 4, 0]), ints(&[5, -7]));
}

#[test]
fn picard_rank_three_candidates() {
    let cands = pic3_candidates(&PicThreeData::plain([2, 4, 3, 2, 5])).unwrap();
    // First row of the case p_1 < p_4.
    for y in -6..=-5 {
        let s = cands.type_a.iter().find(|s| s.z == y).unwrap();
        assert_eq!(s.len(), 2 + 5 - 1);
    }
    let cands = pic3_candidates(&PicThreeData::plain([2, 4, 1, 2, 5])).unwrap();
    assert!(cands.p1.contains_polyhedron(&cands.p2));
    assert_eq!(cands.type_b.len(), 2);
    let cands = pic3_candidates(&PicThreeData::plain([2, 4, 3, 1, 5])).unwrap();
    assert!(cands.p2.contains_polyhedron(&cands.p1));
    assert_eq!(cands.type_b.len(), 3);
}

fn check_pic3_against_engine(data: &PicThreeData, radius: i64) {
    let x = build_pic3(data).unwrap();
    let locus = immaculate_locus(&x).unwrap();
    let cands = pic3_candidates(data).unwrap();
    for s in cands.type_a.iter().chain(&cands.type_b) {
        for p in s.points() {
            assert!(locus.contains(&ints(&p)), "{data:?} listed {p:?}");
        }
    }
    for p in grid(3, -radius, radius) {
        let answer = pic3_immaculate_closed_form(data, &p, Some(&x)).unwrap();
        let expected = if locus.contains(&p) {
            ClosedFormStatus::Immaculate
        } else {
            ClosedFormStatus::Maculate
        };
        assert_eq!(answer.status, expected, "{data:?} {p:?} {answer:?}");
    }
}

#[test]
fn picard_rank_three_large_parameters() {
    let cases = [
        PicThreeData {
            p: [1, 1, 1, 1, 1],
            c: vec![0],
            b: vec![4],
        },
        PicThreeData {
            p: [2, 1, 1, 1, 1],
            c: vec![0],
            b: vec![5],
        },
        PicThreeData {
            p: [1, 1, 2, 2, 1],
            c: vec![0, 5],
            b: vec![0, 0],
        },
        PicThreeData {
            p: [2, 1, 2, 1, 1],
            c: vec![0, 6],
            b: vec![0],
        },
    ];
    for data in &cases {
        assert!(data.is_large(), "{data:?}");
        check_pic3_against_engine(data, 8);
    }
}

#[test]
fn picard_rank_three_small_parameters() {
    let data = PicThreeData::plain([1, 2, 1, 1, 2]);
    assert!(!data.is_large());
    check_pic3_against_engine(&data, 6);
    let undecided = pic3_immaculate_closed_form(&data, &ints(&[0, 0, 0]), None).unwrap();
    assert_eq!(undecided.status, ClosedFormStatus::Unknown);
    let x = build_pic3(&data).unwrap();
    let zero = pic3_immaculate_closed_form(&data, &ints(&[0, 0, 0]), Some(&x)).unwrap();
    assert_eq!(
        (zero.status, zero.via),
        (ClosedFormStatus::Maculate, ClosedFormVia::Enumeration)
    );
    // The canonical class is the dual of the structure sheaf.
    let k = ints(&data.canonical_class());
    assert_eq!(
        pic3_immaculate_closed_form(&data, &k, Some(&x))
            .unwrap()
            .status,
        ClosedFormStatus::Maculate
    );
}

#[test]
fn picard_rank_three_integral_equals_real() {
    let data = PicThreeData {
        p: [1, 1, 2, 1, 1],
        c: vec![0, 2],
        b: vec![1],
    };
    let x = build_pic3(&data).unwrap();
    for p in grid(3, -4, 3) {
        let c = x.free_class(&p).unwrap();
        assert_eq!(
            is_immaculate(&x, &c).unwrap(),
            is_really_immaculate(&x, &c).unwrap(),
            "{p:?}"
        );
    }
}
