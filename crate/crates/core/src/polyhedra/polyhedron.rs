use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::dd::{cone_from_constraints, dual_generators, ConeGenerators};
use super::faces::FaceLattice;
use super::integer::integer_points;
use super::lp::{LinearProgram, LpOutcome};
use super::reduce::{canonical_span, reduce_by};
use crate::error::{Error, Result};
use crate::linalg::vector::{
    clear_denominators, dot, dot_rat, primitive, primitive_from_rat, rat, rats,
};

/// `normal·x >= rhs`, or `normal·x = rhs` when used as an equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<BigInt>,
    pub rhs: BigRational,
}

impl Inequality {
    pub fn new(normal: Vec<BigInt>, rhs: BigRational) -> Self {
        Inequality { normal, rhs }
    }

    pub fn from_ints(normal: Vec<BigInt>, rhs: BigInt) -> Self {
        Inequality {
            normal,
            rhs: rat(&rhs),
        }
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        dot_rat(&self.normal, x) - &self.rhs
    }

    pub fn value_int(&self, x: &[BigInt]) -> BigRational {
        rat(&dot(&self.normal, x)) - &self.rhs
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        !self.value(x).is_negative()
    }

    pub fn holds_int(&self, x: &[BigInt]) -> bool {
        !self.value_int(x).is_negative()
    }

    pub fn is_tight(&self, x: &[BigRational]) -> bool {
        self.value(x).is_zero()
    }

    /// Normal made primitive, right hand side scaled along.
    pub fn normalized(&self) -> Inequality {
        let g = crate::linalg::vector::content(&self.normal);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Inequality {
            normal: primitive(&self.normal),
            rhs: &self.rhs / rat(&g),
        }
    }

    /// Integer row `(q·a, -p)` of the homogenized constraint `q a·x - p t >= 0`.
    fn homogenized(&self) -> Vec<BigInt> {
        let q = self.rhs.denom().clone();
        let mut row: Vec<BigInt> = self.normal.iter().map(|x| x * &q).collect();
        row.push(-self.rhs.numer().clone());
        row
    }

    /// The negated inequality `-a·x >= -b`.
    pub fn negated(&self) -> Inequality {
        Inequality {
            normal: self.normal.iter().map(|x| -x).collect(),
            rhs: -&self.rhs,
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.normal.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]·x >= {}", a.join(","), self.rhs)
    }
}

/// A rational polyhedron with both descriptions.
///
/// The V-description is `conv(vertices) + cone(rays) + span(lines)`. Vertices
/// and rays are reduced modulo the lineality space so the representation is
/// canonical; equality of two values is equality of point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    rays: Vec<Vec<BigInt>>,
    lines: Vec<Vec<BigInt>>,
    inequalities: Vec<Inequality>,
    equations: Vec<Inequality>,
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Polyhedron {
        Polyhedron {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
            inequalities: vec![Inequality::new(
                vec![BigInt::zero(); dim],
                BigRational::one(),
            )],
            equations: Vec::new(),
        }
    }

    pub fn point(v: Vec<BigRational>) -> Polyhedron {
        let dim = v.len();
        Polyhedron::from_vrep(dim, vec![v], Vec::new(), Vec::new()).expect("a point is nonempty")
    }

    pub fn int_point(v: &[BigInt]) -> Polyhedron {
        Polyhedron::point(rats(v))
    }

    /// Full-space polyhedron `R^dim`.
    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron::from_hrep_or_empty(dim, Vec::new(), Vec::new())
    }

    /// `{x : a·x >= b for ineqs, a·x = b for eqs}`, failing when empty.
    pub fn from_hrep(
        dim: usize,
        ineqs: Vec<Inequality>,
        eqs: Vec<Inequality>,
    ) -> Result<Polyhedron> {
        let p = Polyhedron::from_hrep_or_empty(dim, ineqs, eqs);
        if p.is_empty() {
            Err(Error::EmptyPolyhedron)
        } else {
            Ok(p)
        }
    }

    /// Same as [`Polyhedron::from_hrep`] but returns the empty polyhedron instead of failing.
    pub fn from_hrep_or_empty(
        dim: usize,
        ineqs: Vec<Inequality>,
        eqs: Vec<Inequality>,
    ) -> Polyhedron {
        let mut cons: Vec<Vec<BigInt>> = Vec::with_capacity(ineqs.len() + 2 * eqs.len() + 1);
        for i in &ineqs {
            assert_eq!(i.normal.len(), dim, "inequality has the wrong length");
            cons.push(i.homogenized());
        }
        for e in &eqs {
            assert_eq!(e.normal.len(), dim, "equation has the wrong length");
            let h = e.homogenized();
            cons.push(h.iter().map(|x| -x).collect());
            cons.push(h);
        }
        let mut t = vec![BigInt::zero(); dim + 1];
        t[dim] = BigInt::one();
        cons.push(t);
        let primal = cone_from_constraints(dim + 1, &cons);
        Polyhedron::from_homogeneous(dim, primal)
    }

    /// `conv(vertices) + cone(rays) + span(lines)`.
    pub fn from_vrep(
        dim: usize,
        vertices: Vec<Vec<BigRational>>,
        rays: Vec<Vec<BigInt>>,
        lines: Vec<Vec<BigInt>>,
    ) -> Result<Polyhedron> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut gens = ConeGenerators::default();
        for v in &vertices {
            assert_eq!(v.len(), dim, "vertex has the wrong length");
            let (mut w, d) = clear_denominators(v);
            w.push(d);
            gens.rays.push(primitive(&w));
        }
        for r in rays.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())) {
            let mut w = primitive(&r);
            w.push(BigInt::zero());
            gens.rays.push(w);
        }
        for l in lines.into_iter().filter(|l| l.iter().any(|x| !x.is_zero())) {
            let mut w = l;
            w.push(BigInt::zero());
            gens.lines.push(w);
        }
        let dual = dual_generators(dim + 1, &gens);
        let primal = dual_generators(dim + 1, &dual);
        Ok(Polyhedron::from_homogeneous(dim, primal))
    }

    pub fn from_int_vertices(dim: usize, vertices: &[Vec<BigInt>]) -> Result<Polyhedron> {
        Polyhedron::from_vrep(
            dim,
            vertices.iter().map(|v| rats(v)).collect(),
            Vec::new(),
            Vec::new(),
        )
    }

    /// Convex hull and tail cone to H-description.
    pub fn hrep_from_vrep(
        vertices: Vec<Vec<BigRational>>,
        tail_rays: Vec<Vec<BigInt>>,
    ) -> Result<Polyhedron> {
        let dim = vertices
            .first()
            .map(Vec::len)
            .ok_or(Error::EmptyPolyhedron)?;
        Polyhedron::from_vrep(dim, vertices, tail_rays, Vec::new())
    }

    /// Inequalities to V-description.
    pub fn vrep_from_hrep(dim: usize, inequalities: Vec<Inequality>) -> Result<Polyhedron> {
        Polyhedron::from_hrep(dim, inequalities, Vec::new())
    }

    fn from_homogeneous(dim: usize, primal: ConeGenerators) -> Polyhedron {
        if !primal.rays.iter().any(|r| r[dim].is_positive()) {
            return Polyhedron::empty(dim);
        }
        let dual = dual_generators(dim + 1, &primal);
        // Affine hull.
        let (_, erows, epiv) = canonical_span(&dual.lines);
        let mut equations = Vec::new();
        for row in &erows {
            equations.push(affine_row(row, dim));
        }
        let mut inequalities = Vec::new();
        for r in &dual.rays {
            let red = reduce_by(&rats(r), &erows, &epiv);
            if red[..dim].iter().all(Zero::is_zero) {
                continue;
            }
            inequalities.push(affine_row(&red, dim));
        }
        inequalities.sort();
        inequalities.dedup();
        let line_vecs: Vec<Vec<BigInt>> = primal.lines.iter().map(|l| l[..dim].to_vec()).collect();
        let (lines, lrows, lpiv) = canonical_span(&line_vecs);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &primal.rays {
            let t = &r[dim];
            if t.is_positive() {
                let v: Vec<BigRational> = r[..dim]
                    .iter()
                    .map(|x| BigRational::new(x.clone(), t.clone()))
                    .collect();
                vertices.push(reduce_by(&v, &lrows, &lpiv));
            } else {
                let v = reduce_by(&rats(&r[..dim]), &lrows, &lpiv);
                if v.iter().any(|x| !x.is_zero()) {
                    rays.push(primitive_from_rat(&v));
                }
            }
        }
        vertices.sort();
        vertices.dedup();
        rays.sort();
        rays.dedup();
        Polyhedron {
            dim,
            vertices,
            rays,
            lines,
            inequalities,
            equations,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    /// Vertices as integer vectors when all of them are integral.
    pub fn integral_vertices(&self) -> Option<Vec<Vec<BigInt>>> {
        self.vertices
            .iter()
            .map(|v| crate::linalg::vector::to_integral(v))
            .collect()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vec<BigInt>] {
        &self.lines
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Inequality] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.is_bounded()
            && self
                .vertices
                .iter()
                .all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Dimension of the affine hull, `-1` when empty.
    pub fn affine_dim(&self) -> isize {
        if self.is_empty() {
            -1
        } else {
            (self.dim - self.equations.len()) as isize
        }
    }

    /// The recession cone.
    pub fn tail_cone(&self) -> Cone {
        let mut gens = self.rays.clone();
        for l in &self.lines {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_rays(self.dim, &gens)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.is_tight(x))
            && self.inequalities.iter().all(|i| i.holds(x))
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.value_int(x).is_zero())
            && self.inequalities.iter().all(|i| i.holds_int(x))
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, x: &[BigRational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|e| e.is_tight(x))
            && self.inequalities.iter().all(|i| i.value(x).is_positive())
    }

    /// `min a·x` over the polyhedron, `None` when unbounded below or empty.
    pub fn support(&self, a: &[BigInt]) -> Option<BigRational> {
        if self.is_empty() {
            return None;
        }
        if self.lines.iter().any(|l| !dot(a, l).is_zero())
            || self.rays.iter().any(|r| dot(a, r).is_negative())
        {
            return None;
        }
        self.vertices.iter().map(|v| dot_rat(a, v)).min()
    }

    pub fn translate(&self, t: &[BigRational]) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        Polyhedron::from_vrep(self.dim, vertices, self.rays.clone(), self.lines.clone())
            .expect("translate of a nonempty polyhedron")
    }

    pub fn translate_int(&self, t: &[BigInt]) -> Polyhedron {
        self.translate(&rats(t))
    }

    /// `-P`.
    pub fn negate(&self) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        Polyhedron::from_vrep(self.dim, vertices, rays, self.lines.clone()).expect("nonempty")
    }

    /// `k·P` for a nonnegative integer `k`.
    pub fn dilate(&self, k: &BigInt) -> Polyhedron {
        assert!(!k.is_negative(), "negative dilation factor");
        if self.is_empty() {
            return self.clone();
        }
        let kr = rat(k);
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * &kr).collect())
            .collect();
        let (rays, lines) = if k.is_zero() {
            (Vec::new(), Vec::new())
        } else {
            (self.rays.clone(), self.lines.clone())
        };
        Polyhedron::from_vrep(self.dim, vertices, rays, lines).expect("nonempty")
    }

    pub fn intersection(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        if self.is_empty() || other.is_empty() {
            return Polyhedron::empty(self.dim);
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Polyhedron::from_hrep_or_empty(self.dim, ineqs, eqs)
    }

    /// Adds one inequality.
    pub fn cut(&self, ineq: &Inequality) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        if self.vertices.iter().all(|v| ineq.holds(v))
            && self
                .rays
                .iter()
                .all(|r| !dot(&ineq.normal, r).is_negative())
            && self.lines.iter().all(|l| dot(&ineq.normal, l).is_zero())
        {
            return self.clone();
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.push(ineq.clone());
        Polyhedron::from_hrep_or_empty(self.dim, ineqs, self.equations.clone())
    }

    /// Is `other ⊆ self`?
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        other.vertices.iter().all(|v| self.contains(v))
            && other.rays.iter().all(|r| self.recession_contains(r))
            && other.lines.iter().all(|l| {
                self.recession_contains(l)
                    && self.recession_contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    fn recession_contains(&self, r: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(&e.normal, r).is_zero())
            && self
                .inequalities
                .iter()
                .all(|i| !dot(&i.normal, r).is_negative())
    }

    /// Minkowski sum. When both summands are unbounded their tail cones must agree.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        assert_eq!(self.dim, other.dim);
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.dim));
        }
        if !self.is_bounded() && !other.is_bounded() && self.tail_cone() != other.tail_cone() {
            return Err(Error::TailMismatch);
        }
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                vertices.push(v.iter().zip(w).map(|(x, y)| x + y).collect());
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lines = self.lines.clone();
        lines.extend(other.lines.iter().cloned());
        Polyhedron::from_vrep(self.dim, vertices, rays, lines)
    }

    /// Integer points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_bounded() {
            return Err(Error::UnboundedInput);
        }
        if self.is_empty() {
            return Ok(Vec::new());
        }
        integer_points(self.dim, &self.inequalities, &self.equations, None)
    }

    /// Integer points in the relative interior. A single point is its own
    /// relative interior.
    pub fn interior_lattice_points(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_bounded() {
            return Err(Error::UnboundedInput);
        }
        Ok(self
            .lattice_points()?
            .into_iter()
            .filter(|p| {
                self.inequalities
                    .iter()
                    .all(|i| i.value_int(p).is_positive())
            })
            .collect())
    }

    pub fn face_lattice(&self) -> Result<FaceLattice> {
        if !self.is_bounded() {
            return Err(Error::UnboundedInput);
        }
        Ok(FaceLattice::of_polytope(self))
    }

    /// Intersects with a bounded box that must contain every vertex.
    pub fn truncate(&self, bx: &Polyhedron) -> Result<Polyhedron> {
        if !bx.is_bounded() {
            return Err(Error::UnboundedInput);
        }
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if !self.vertices.iter().all(|v| bx.contains(v)) {
            return Err(Error::BoxTooSmall);
        }
        Ok(self.intersection(bx))
    }

    /// The coordinate box `[-r, r]^dim` with `r = 2 (max |vertex coordinate| + 1)`.
    pub fn default_box(&self) -> Polyhedron {
        let m = self
            .vertices
            .iter()
            .flatten()
            .map(|x| x.abs().ceil().to_integer())
            .max()
            .unwrap_or_default();
        let r = BigInt::from(2) * (m + 1);
        Polyhedron::cube(self.dim, &(-&r), &r)
    }

    /// The box `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: &BigInt, hi: &BigInt) -> Polyhedron {
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            ineqs.push(Inequality::from_ints(e.clone(), lo.clone()));
            e[i] = -BigInt::one();
            ineqs.push(Inequality::from_ints(e, -hi));
        }
        Polyhedron::from_hrep_or_empty(dim, ineqs, Vec::new())
    }

    /// Feasibility of the H-description together with extra constraints, by LP.
    pub fn meets(&self, other: &Polyhedron) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let mut lp = LinearProgram::new(self.dim);
        for i in self.inequalities.iter().chain(&other.inequalities) {
            lp.add_ge_rat(&rats(&i.normal), &i.rhs);
        }
        for e in self.equations.iter().chain(&other.equations) {
            lp.add_eq_rat(&rats(&e.normal), &e.rhs);
        }
        !matches!(
            lp.minimize(&vec![BigInt::zero(); self.dim]),
            LpOutcome::Infeasible
        )
    }
}

/// Turns a homogeneous row `(a, c)` meaning `a·x + c >= 0` into `a'·x >= b` with `a'` primitive.
fn affine_row(row: &[BigRational], dim: usize) -> Inequality {
    let a = &row[..dim];
    let (ai, l) = clear_denominators(a);
    let g = crate::linalg::vector::content(&ai);
    let normal: Vec<BigInt> = ai.iter().map(|x| x / &g).collect();
    // normal = a * l / g
    let s = BigRational::new(l, g);
    Inequality {
        normal,
        rhs: -(&row[dim] * s),
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty polyhedron in dimension {}", self.dim);
        }
        let show = |v: &[BigRational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", show(v)))
            .collect();
        write!(f, "conv{{{}}}", vs.join(" "))?;
        for r in &self.rays {
            write!(f, " +ray({})", show(&rats(r)))?;
        }
        for l in &self.lines {
            write!(f, " +line({})", show(&rats(l)))?;
        }
        Ok(())
    }
}
