//! Graded sheaf cohomology of torus-invariant divisors, by the fan and by
//! nef polytope differences, and immaculacy predicates.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{DivisorClass, Fan, NefPair, RaySet, ToricDivisor};
use crate::homology::{reduced_homology, Field, HomologyProfile};
use crate::linalg::vector::{dot, rat, sub};
use crate::linalg::{cokernel, saturation, IntMatrix};
use crate::polyhedra::{has_integer_point, Inequality, Polyhedron, PolytopalComplex};

/// `h^i_m` for every degree `m` with some nonzero entry, and the totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCohomology {
    dim: usize,
    degrees: BTreeMap<Vec<BigInt>, Vec<usize>>,
    totals: Vec<usize>,
}

impl GradedCohomology {
    pub fn new(dim: usize) -> Self {
        GradedCohomology {
            dim,
            degrees: BTreeMap::new(),
            totals: vec![0; dim + 1],
        }
    }

    /// Records `h` in degree `m`; zero vectors are dropped.
    pub fn insert(&mut self, m: Vec<BigInt>, h: Vec<usize>) {
        assert_eq!(h.len(), self.dim + 1);
        if h.iter().all(|&x| x == 0) {
            return;
        }
        for (t, x) in self.totals.iter_mut().zip(&h) {
            *t += x;
        }
        if let Some(old) = self.degrees.insert(m, h) {
            for (t, x) in self.totals.iter_mut().zip(&old) {
                *t -= x;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degrees(&self) -> &BTreeMap<Vec<BigInt>, Vec<usize>> {
        &self.degrees
    }

    pub fn in_degree(&self, m: &[BigInt]) -> Vec<usize> {
        self.degrees
            .get(m)
            .cloned()
            .unwrap_or_else(|| vec![0; self.dim + 1])
    }

    pub fn totals(&self) -> &[usize] {
        &self.totals
    }

    pub fn h(&self, i: usize) -> usize {
        self.totals.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.totals
            .iter()
            .enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

fn graded_entry(profile: &HomologyProfile, dim: usize) -> Vec<usize> {
    (0..=dim).map(|i| profile.betti(i as isize - 1)).collect()
}

/// `Δ⁺ + (-Δ⁻)`, every facet moved outwards by one.
pub fn degree_search_box(pair: &NefPair) -> Result<Polyhedron> {
    if !pair.plus.is_bounded() || !pair.minus.is_bounded() {
        return Err(Error::UnboundedInput);
    }
    let diff = pair.plus.minkowski_sum(&pair.minus.negate())?;
    let one = BigRational::one();
    let mut ineqs: Vec<Inequality> = diff
        .inequalities()
        .iter()
        .map(|i| {
            let i = i.normalized();
            Inequality::new(i.normal, i.rhs - &one)
        })
        .collect();
    for e in diff.equations() {
        let e = e.normalized();
        ineqs.push(Inequality::new(e.normal.clone(), &e.rhs - &one));
        ineqs.push(Inequality::new(
            e.normal.iter().map(|x| -x).collect(),
            -&e.rhs - &one,
        ));
    }
    Ok(Polyhedron::from_hrep_or_empty(
        diff.dim(),
        ineqs,
        Vec::new(),
    ))
}

fn default_degrees(pair: &NefPair) -> Result<Vec<Vec<BigInt>>> {
    degree_search_box(pair)?.lattice_points()
}

/// `H^i(X, O(D))_m = H̃^{i-1}(V_{D,m})` with `V_{D,m}` the part of the fan
/// spanned by the rays with `⟨ρ, m⟩ < -λ_ρ`.
pub fn cohomology_fan_side(
    fan: &Fan,
    d: &ToricDivisor,
    degrees: Option<&[Vec<BigInt>]>,
    field: Field,
) -> Result<GradedCohomology> {
    if !fan.is_simplicial() {
        return Err(Error::NonSimplicialFan);
    }
    if d.len() != fan.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: fan.n_rays(),
            found: d.len(),
        });
    }
    let owned;
    let degrees = match degrees {
        Some(ds) => ds,
        None => {
            owned = default_degrees(&fan.nef_decompose(d)?)?;
            &owned
        }
    };
    let dim = fan.dim();
    let entries: Vec<Vec<usize>> = degrees
        .par_iter()
        .map(|m| {
            let r = negative_rays(fan, d, m);
            graded_entry(&fan.induced_homology(r, field), dim)
        })
        .collect();
    let mut out = GradedCohomology::new(dim);
    for (m, h) in degrees.iter().zip(entries) {
        out.insert(m.clone(), h);
    }
    Ok(out)
}

/// `{ρ : ⟨ρ, m⟩ < -λ_ρ}`.
pub fn negative_rays(fan: &Fan, d: &ToricDivisor, m: &[BigInt]) -> RaySet {
    fan.rays()
        .iter()
        .zip(d.coefficients())
        .enumerate()
        .filter(|(_, (r, l))| dot(r, m) + *l < BigInt::zero())
        .fold(0, |a, (i, _)| a | 1 << i)
}

/// Faces of `Δ⁻` and, per face `F`, the set of degrees `m` where `F` meets
/// `Δ⁺ - m`, namely `Δ⁺ + (-F)`.
struct DifferenceEngine {
    complex: PolytopalComplex,
    meets: Vec<Polyhedron>,
    field: Field,
    cache: Mutex<HashMap<Vec<bool>, HomologyProfile>>,
}

impl DifferenceEngine {
    fn new(pair: &NefPair, field: Field) -> Result<Self> {
        let complex = PolytopalComplex::from_polytope(&pair.minus)?;
        let meets = (0..complex.len())
            .map(|i| pair.plus.minkowski_sum(&complex.cell_polytope(i).negate()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DifferenceEngine {
            complex,
            meets,
            field,
            cache: Mutex::default(),
        })
    }

    fn profile(&self, m: &[BigInt]) -> HomologyProfile {
        let keep: Vec<bool> = self.meets.iter().map(|s| !s.contains_int(m)).collect();
        if let Some(h) = self.cache.lock().expect("cache lock").get(&keep) {
            return h.clone();
        }
        let h = reduced_homology(&self.complex.filter_cells(|i| keep[i]), self.field);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(keep, h.clone());
        h
    }
}

/// `H^i(X, O(D))_m = H̃^{i-1}(Δ⁻ \ (Δ⁺ - m))`, through the faces of `Δ⁻`
/// disjoint from `Δ⁺ - m`. Unbounded pairs need explicit degrees and are
/// truncated by a box around both polyhedra.
pub fn cohomology_polytope_side(
    pair: &NefPair,
    degrees: Option<&[Vec<BigInt>]>,
    field: Field,
) -> Result<GradedCohomology> {
    let dim = pair.minus.dim();
    assert!(
        !pair.minus.is_empty() && !pair.plus.is_empty(),
        "nef section polyhedra are nonempty"
    );
    if pair.plus.tail_cone() != pair.minus.tail_cone() {
        return Err(Error::TailMismatch);
    }
    let mut out = GradedCohomology::new(dim);
    if pair.minus.is_bounded() {
        let owned;
        let degrees = match degrees {
            Some(ds) => ds,
            None => {
                owned = default_degrees(pair)?;
                &owned
            }
        };
        let engine = DifferenceEngine::new(pair, field)?;
        let entries: Vec<Vec<usize>> = degrees
            .par_iter()
            .map(|m| graded_entry(&engine.profile(m), dim))
            .collect();
        for (m, h) in degrees.iter().zip(entries) {
            out.insert(m.clone(), h);
        }
        return Ok(out);
    }
    let degrees = degrees.ok_or(Error::UnboundedInput)?;
    let entries = degrees
        .par_iter()
        .map(|m| truncated_entry(pair, m, field))
        .collect::<Result<Vec<_>>>()?;
    for (m, h) in degrees.iter().zip(entries) {
        out.insert(m.clone(), h);
    }
    Ok(out)
}

fn truncated_entry(pair: &NefPair, m: &[BigInt], field: Field) -> Result<Vec<usize>> {
    let dim = pair.minus.dim();
    let shift: Vec<BigRational> = m.iter().map(|x| -rat(x)).collect();
    let q = pair.plus.translate(&shift);
    let reach = pair
        .minus
        .vertices()
        .iter()
        .chain(q.vertices())
        .flatten()
        .map(|x| x.abs().ceil().to_integer())
        .max()
        .unwrap_or_default();
    let r = BigInt::from(2) * (reach + 1);
    let bx = Polyhedron::cube(dim, &-&r, &r);
    let minus = pair.minus.truncate(&bx)?;
    let complex = PolytopalComplex::from_polytope(&minus)?.disjoint_face_subcomplex(&q);
    Ok(graded_entry(&reduced_homology(&complex, field), dim))
}

/// Polytope side with the default nef decomposition of `D`.
pub fn cohomology(fan: &Fan, d: &ToricDivisor, field: Field) -> Result<GradedCohomology> {
    cohomology_polytope_side(&fan.nef_decompose(d)?, None, field)
}

pub fn is_immaculate(fan: &Fan, c: &DivisorClass) -> Result<bool> {
    is_immaculate_over(fan, c, Field::Rational)
}

/// A degree `m` carries cohomology exactly when its negative ray set is
/// tempting, so it suffices to look for lattice points in the polytope of
/// degrees with a prescribed tempting negative set.
pub fn is_immaculate_over(fan: &Fan, c: &DivisorClass, field: Field) -> Result<bool> {
    let data = crate::locus::tempting_subsets_over(fan, field)?;
    let lambda = fan.class_group()?.lift(c)?;
    for region in &data.regions {
        if region.contains(&c.free) && has_degree_with_sign_pattern(fan, &lambda, region.subset)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some `m` with `⟨ρ, m⟩ <= -1 - λ_ρ` on `R` and `>= -λ_ρ` off `R`.
fn has_degree_with_sign_pattern(fan: &Fan, lambda: &[BigInt], r: RaySet) -> Result<bool> {
    let one = BigInt::one();
    let ineqs: Vec<Inequality> = fan
        .rays()
        .iter()
        .zip(lambda)
        .enumerate()
        .map(|(i, (ray, l))| {
            if r >> i & 1 == 1 {
                Inequality::from_ints(ray.iter().map(|x| -x).collect(), l + &one)
            } else {
                Inequality::from_ints(ray.clone(), -l)
            }
        })
        .collect();
    has_integer_point(fan.dim(), &ineqs, &[])
}

/// Whether `a D' - D⁻` is immaculate for every integer `a`: `Δ⁻` projected
/// along the saturated span of `Δ'` has no lattice point in its relative interior.
pub fn line_of_immaculates_test(
    fan: &Fan,
    d_minus: &ToricDivisor,
    d_prime: &ToricDivisor,
) -> Result<bool> {
    if !fan.is_nef(d_minus)? || !fan.is_nef(d_prime)? {
        return Err(Error::NotNef);
    }
    if !fan.is_cartier(d_prime) {
        return Err(Error::NotCartier);
    }
    let n = fan.dim();
    let prime = fan.section_polyhedron(d_prime);
    let verts = prime.integral_vertices().ok_or(Error::NotCartier)?;
    let diffs: Vec<Vec<BigInt>> = verts
        .iter()
        .skip(1)
        .map(|v| sub(v, &verts[0]))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let span = saturation(&diffs, n);
    if span.len() == n {
        return Ok(false);
    }
    let quotient = if span.is_empty() {
        IntMatrix::identity(n)
    } else {
        cokernel(&IntMatrix::from_columns(&span, n))
            .projection()
            .clone()
    };
    let k = quotient.rows();
    let minus = fan.section_polyhedron(d_minus);
    let image: Vec<Vec<BigRational>> = minus
        .vertices()
        .iter()
        .map(|v| {
            (0..k)
                .map(|i| (0..n).map(|j| rat(quotient.get(i, j)) * &v[j]).sum())
                .collect()
        })
        .collect();
    let projected = Polyhedron::from_vrep(k, image, Vec::new(), Vec::new())?;
    Ok(projected.interior_lattice_points()?.is_empty())
}

/// `p^*` on class groups for a lattice map `p : N_X -> N_Y` (a `dim Y × dim X`
/// matrix) sending every cone of `X` into a cone of `Y`. The class must be
/// Cartier on `Y`.
pub fn pullback_class(x: &Fan, y: &Fan, p: &IntMatrix, c: &DivisorClass) -> Result<DivisorClass> {
    if p.rows() != y.dim() || p.cols() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim() * x.dim(),
            found: p.rows() * p.cols(),
        });
    }
    let y_cones: Vec<_> = (0..y.maximal_cones().len()).map(|i| y.cone(i)).collect();
    for cone in x.maximal_cones() {
        let images: Vec<Vec<BigInt>> = cone.iter().map(|&r| p.apply(&x.rays()[r])).collect();
        if !y_cones.iter().any(|t| images.iter().all(|v| t.contains(v))) {
            return Err(Error::IncompatibleFans);
        }
    }
    let d = y.lift_class(c)?;
    if !y.is_cartier(&d) {
        return Err(Error::NotCartier);
    }
    let psi = y.support_function(&d)?;
    let lambda = x
        .rays()
        .iter()
        .map(|r| {
            let v = p.apply(r);
            let value = psi.evaluate(y, &v).ok_or(Error::IncompatibleFans)?;
            Ok(-value.to_integer())
        })
        .collect::<Result<Vec<_>>>()?;
    x.class_of(&lambda)
}
