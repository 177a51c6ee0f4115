//! Exact rational cones, polyhedra, face lattices and polytopal complexes.

mod complex;
mod cone;
pub mod dd;
mod faces;
mod integer;
pub mod lp;
mod polyhedron;
pub(crate) mod reduce;

pub use complex::PolytopalComplex;
pub use cone::Cone;
pub use faces::{Face, FaceLattice};
pub use integer::{has_integer_point, integer_points};
pub use lp::{LinearProgram, LpOutcome};
pub use polyhedron::{Inequality, Polyhedron};
