use immaculate_core::linalg::vector::{int, ints, rats};
use immaculate_core::polyhedra::{
    Cone, Inequality, LinearProgram, LpOutcome, Polyhedron, PolytopalComplex,
};
use immaculate_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(vs: &[&[i64]]) -> Polyhedron {
    let v: Vec<Vec<BigInt>> = vs.iter().map(|v| ints(v)).collect();
    Polyhedron::from_int_vertices(v[0].len(), &v).unwrap()
}

fn ineq(a: &[i64], b: i64) -> Inequality {
    Inequality::from_ints(ints(a), int(b))
}

fn brute_points(p: &Polyhedron, r: i64) -> Vec<Vec<BigInt>> {
    let d = p.dim();
    let mut out = Vec::new();
    let mut x = vec![-r; d];
    loop {
        let v = ints(&x);
        if p.contains_int(&v) {
            out.push(v);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < r {
                x[i] += 1;
                for y in x.iter_mut().skip(i + 1) {
                    *y = -r;
                }
                break;
            }
        }
    }
}

#[test]
fn lp_basics() {
    let mut lp = LinearProgram::new(1);
    lp.add_ge(ints(&[1]), int(1)).add_le(ints(&[1]), int(0));
    assert_eq!(lp.minimize(&ints(&[1])), LpOutcome::Infeasible);

    let mut lp = LinearProgram::new(2);
    lp.add_ge(ints(&[1, 0]), int(0))
        .add_ge(ints(&[0, 1]), int(0))
        .add_le(ints(&[2, 3]), int(12));
    let out = lp.maximize(&ints(&[1, 1]));
    assert_eq!(out.value(), Some(&BigRational::from_integer(int(6))));
    assert_eq!(
        lp.minimize(&ints(&[-1, 0])).value(),
        Some(&BigRational::from_integer(int(-6)))
    );

    let mut lp = LinearProgram::new(2);
    lp.add_ge(ints(&[1, 1]), int(1));
    assert_eq!(lp.minimize(&ints(&[1, 0])), LpOutcome::Unbounded);
    let mut lp = LinearProgram::new(2);
    lp.add_eq(ints(&[1, 1]), int(3))
        .add_eq(ints(&[1, -1]), int(1))
        .add_eq(ints(&[2, 0]), int(4));
    let LpOutcome::Optimal { point, .. } = lp.minimize(&ints(&[0, 0])) else {
        panic!()
    };
    assert_eq!(point, rats(&ints(&[2, 1])));
}

#[test]
fn dual_cones() {
    let orth = Cone::from_rays(2, &[ints(&[1, 0]), ints(&[0, 1])]);
    assert_eq!(orth.dual(), orth);
    let c = Cone::from_rays(2, &[ints(&[1, 0]), ints(&[1, 2])]);
    let d = c.dual();
    assert_eq!(d.rays(), &[ints(&[0, 1]), ints(&[2, -1])]);
    assert_eq!(d.dual(), c);
    let full = Cone::from_inequalities(2, &[]);
    assert!(full.facets().is_empty());
    assert!(full.dual().is_zero());
    // Recomputing from the facets gives the same cone.
    assert_eq!(Cone::from_inequalities(2, d.rays()), c);
}

#[test]
fn square_representations() {
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let mut expect = vec![
        ineq(&[1, 0], 0),
        ineq(&[0, 1], 0),
        ineq(&[-1, 0], -1),
        ineq(&[0, -1], -1),
    ];
    expect.sort();
    assert_eq!(sq.inequalities(), &expect[..]);
    let back = Polyhedron::vrep_from_hrep(2, expect).unwrap();
    assert_eq!(back, sq);
    assert_eq!(
        Polyhedron::vrep_from_hrep(1, vec![ineq(&[1], 1), ineq(&[-1], 0)]),
        Err(Error::EmptyPolyhedron)
    );
}

#[test]
fn minkowski() {
    let seg1 = poly(&[&[0, 0], &[1, 0]]);
    let seg2 = poly(&[&[0, 0], &[0, 1]]);
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    assert_eq!(seg1.minkowski_sum(&seg2).unwrap(), sq);
    let origin = Polyhedron::int_point(&ints(&[0, 0]));
    assert_eq!(sq.minkowski_sum(&origin).unwrap(), sq);
    let quad = Polyhedron::from_vrep(
        2,
        vec![rats(&ints(&[0, 0]))],
        vec![ints(&[1, 0]), ints(&[0, 1])],
        vec![],
    )
    .unwrap();
    let half = Polyhedron::from_vrep(
        2,
        vec![rats(&ints(&[0, 0]))],
        vec![ints(&[1, 0])],
        vec![ints(&[0, 1])],
    )
    .unwrap();
    assert_eq!(quad.minkowski_sum(&half), Err(Error::TailMismatch));
    assert!(quad.minkowski_sum(&quad).is_ok());
}

#[test]
fn lattice_point_counts() {
    let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
    assert_eq!(tri.lattice_points().unwrap().len(), 3);
    let tri3 = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
    assert_eq!(tri3.lattice_points().unwrap().len(), 10);
    assert_eq!(tri3.interior_lattice_points().unwrap(), vec![ints(&[1, 1])]);
    let pt = Polyhedron::int_point(&ints(&[2, -1]));
    assert_eq!(pt.interior_lattice_points().unwrap(), vec![ints(&[2, -1])]);
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    assert!(sq.interior_lattice_points().unwrap().is_empty());
    let seg = poly(&[&[0, 0], &[2, 0]]);
    assert_eq!(seg.interior_lattice_points().unwrap(), vec![ints(&[1, 0])]);
    let quad =
        Polyhedron::from_vrep(2, vec![rats(&ints(&[0, 0]))], vec![ints(&[1, 0])], vec![]).unwrap();
    assert_eq!(quad.lattice_points(), Err(Error::UnboundedInput));
}

#[test]
fn face_lattices() {
    let seg = poly(&[&[0], &[1]]);
    assert_eq!(seg.face_lattice().unwrap().f_vector(), vec![1, 2, 1]);
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    assert_eq!(sq.face_lattice().unwrap().f_vector(), vec![1, 4, 4, 1]);
    let cube = poly(&[
        &[0, 0, 0],
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, 0],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
    ]);
    assert_eq!(
        cube.face_lattice().unwrap().f_vector(),
        vec![1, 8, 12, 6, 1]
    );
    // A triangle sitting in 3-space.
    let tri = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(tri.face_lattice().unwrap().f_vector(), vec![1, 3, 3, 1]);
}

#[test]
fn truncation() {
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let bx = Polyhedron::cube(2, &int(-5), &int(5));
    assert_eq!(sq.truncate(&bx).unwrap(), sq);
    let quad = Polyhedron::from_vrep(
        2,
        vec![rats(&ints(&[0, 0]))],
        vec![ints(&[1, 0]), ints(&[0, 1])],
        vec![],
    )
    .unwrap();
    let b10 = Polyhedron::cube(2, &int(0), &int(10));
    assert_eq!(quad.truncate(&b10).unwrap(), b10);
    let shifted = quad.translate_int(&ints(&[20, 0]));
    assert_eq!(shifted.truncate(&b10), Err(Error::BoxTooSmall));
    let dbox = shifted.default_box();
    assert!(shifted.truncate(&dbox).is_ok());
}

#[test]
fn disjoint_faces_of_triangle() {
    let tri = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
    let xi = PolytopalComplex::from_polytope(&tri).unwrap();
    assert_eq!(xi.len(), 7);
    let mid = Polyhedron::int_point(&ints(&[1, 0]));
    let c = xi.disjoint_face_subcomplex(&mid);
    // The two other edges and the three vertices.
    assert_eq!(c.len(), 5);
    assert_eq!(c.dim(), 1);
    assert!(c.is_closed().unwrap());
    let far = Polyhedron::int_point(&ints(&[5, 5]));
    assert_eq!(xi.disjoint_face_subcomplex(&far), xi);
    let big = Polyhedron::cube(2, &int(-1), &int(3));
    assert!(xi.disjoint_face_subcomplex(&big).is_empty());
}

fn arb_points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(pts in arb_points()) {
        let v: Vec<Vec<BigInt>> = pts.iter().map(|p| ints(p)).collect();
        let p = Polyhedron::from_int_vertices(3, &v).unwrap();
        let q = Polyhedron::from_hrep(3, p.inequalities().to_vec(), p.equations().to_vec()).unwrap();
        prop_assert_eq!(&p, &q);
        for x in &v {
            prop_assert!(p.contains_int(x));
        }
    }

    #[test]
    fn lattice_points_match_scan(pts in arb_points()) {
        let v: Vec<Vec<BigInt>> = pts.iter().map(|p| ints(p)).collect();
        let p = Polyhedron::from_int_vertices(3, &v).unwrap();
        prop_assert_eq!(p.lattice_points().unwrap(), brute_points(&p, 4));
    }

    #[test]
    fn support_is_additive(a in arb_points(), b in arb_points()) {
        let p = Polyhedron::from_int_vertices(3, &a.iter().map(|x| ints(x)).collect::<Vec<_>>()).unwrap();
        let q = Polyhedron::from_int_vertices(3, &b.iter().map(|x| ints(x)).collect::<Vec<_>>()).unwrap();
        let s = p.minkowski_sum(&q).unwrap();
        for f in s.inequalities() {
            prop_assert_eq!(s.support(&f.normal).unwrap(), p.support(&f.normal).unwrap() + q.support(&f.normal).unwrap());
        }
    }

    #[test]
    fn disjoint_subcomplex_is_monotone(pts in arb_points(), c in proptest::collection::vec(-3i64..=3, 3), r in 0i64..3) {
        let v: Vec<Vec<BigInt>> = pts.iter().map(|p| ints(p)).collect();
        let p = Polyhedron::from_int_vertices(3, &v).unwrap();
        let xi = PolytopalComplex::from_polytope(&p).unwrap();
        let small = Polyhedron::int_point(&ints(&c));
        let large = small.minkowski_sum(&Polyhedron::cube(3, &int(-r), &int(r))).unwrap();
        let a = xi.disjoint_face_subcomplex(&small);
        let b = xi.disjoint_face_subcomplex(&large);
        prop_assert!(a.is_closed().unwrap());
        prop_assert!(b.cells().iter().all(|cell| a.cells().contains(cell)));
    }
}
