use immaculate_core::homology::{reduced_homology, Field, HomologyProfile, SimplicialComplex};
use immaculate_core::linalg::vector::ints;
use immaculate_core::polyhedra::{Polyhedron, PolytopalComplex};
use num_bigint::BigInt;

fn complex(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::new(facets.iter().map(|f| f.to_vec()))
}

#[test]
fn empty_complex_has_minus_one_homology() {
    let h = SimplicialComplex::default().reduced_homology(Field::Rational);
    assert_eq!(h, HomologyProfile::empty_complex());
    assert_eq!(h.betti(-1), 1);
    assert!(!h.is_acyclic());
}

#[test]
fn point_and_simplex_are_acyclic() {
    assert!(complex(&[&[0]])
        .reduced_homology(Field::Rational)
        .is_acyclic());
    assert!(complex(&[&[0, 1, 2, 3]])
        .reduced_homology(Field::Rational)
        .is_acyclic());
}

#[test]
fn two_points_and_circle() {
    let h = complex(&[&[0], &[1]]).reduced_homology(Field::Rational);
    assert_eq!(h.nonzero(), vec![(0, 1)]);
    let h = complex(&[&[0, 1], &[1, 2], &[0, 2]]).reduced_homology(Field::Rational);
    assert_eq!(h.nonzero(), vec![(1, 1)]);
    // boundary of a tetrahedron
    let h = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
        .reduced_homology(Field::Prime(3));
    assert_eq!(h.nonzero(), vec![(2, 1)]);
}

/// Six-vertex triangulation of the real projective plane.
fn rp2() -> SimplicialComplex {
    complex(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[2, 4, 5],
    ])
}

#[test]
fn projective_plane_depends_on_the_field() {
    let q = rp2().reduced_homology(Field::Rational);
    assert!(q.is_acyclic());
    assert_eq!(q.torsion(0), &[] as &[BigInt]);
    assert_eq!(q.torsion(1), &[BigInt::from(2)]);
    let f2 = rp2().reduced_homology(Field::Prime(2));
    assert_eq!(f2.nonzero(), vec![(1, 1), (2, 1)]);
    assert!(rp2().reduced_homology(Field::Prime(3)).is_acyclic());
}

#[test]
fn polytope_boundary_is_a_sphere() {
    let square = Polyhedron::from_int_vertices(
        2,
        &[ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])],
    )
    .unwrap();
    let full = PolytopalComplex::from_polytope(&square).unwrap();
    assert!(reduced_homology(&full, Field::Rational).is_acyclic());
    let top = full.cells().len() - 1;
    let boundary = full.filter_cells(|i| i != top);
    assert_eq!(
        reduced_homology(&boundary, Field::Rational).nonzero(),
        vec![(1, 1)]
    );
    let q = Polyhedron::int_point(&ints(&[0, 0]));
    let rest = full.disjoint_face_subcomplex(&q);
    assert!(reduced_homology(&rest, Field::Rational).is_acyclic());
    assert_eq!(
        reduced_homology(&PolytopalComplex::empty(2), Field::Rational),
        HomologyProfile::empty_complex()
    );
}
