//! Exact cohomology of torus-invariant divisors on toric varieties, immaculate
//! loci in the class group, closed forms for three families of toric manifolds,
//! and a search for exceptional sequences of line bundles.

pub mod cohomology;
pub mod error;
pub mod exceptional;
pub mod families;
pub mod fan;
pub mod homology;
pub mod linalg;
pub mod locus;
pub mod polyhedra;

pub use error::{Error, Result};
