//! Constructors and closed-form immaculate loci for three families of smooth
//! projective toric varieties: Picard rank two, splitting fans, and Picard
//! rank three with five primitive collections.

mod pic2;
mod pic3;
mod splitting;

pub use pic2::{build_pic2, pic2_immaculate, PicTwoData};
pub use pic3::{
    build_pic3, pic3_candidates, pic3_immaculate_closed_form, ClosedFormAnswer, ClosedFormStatus,
    ClosedFormVia, Pic3Candidates, PicThreeData, Segment,
};
pub use splitting::{
    build_splitting, c_hull, splitting_immaculate_general, splitting_seed, Slab, SlabSet,
    SplittingData, SplittingLocus,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{kernel_basis, IntMatrix};

/// The fan whose class map is `pi`, with the given maximal cones.
///
/// Ray `i` is the `i`-th coordinate of a lattice basis of `ker pi`.
pub(crate) fn fan_from_class_map(pi: IntMatrix, cones: Vec<Vec<usize>>) -> Result<Fan> {
    let basis = kernel_basis(&pi);
    if basis.is_empty() {
        return Err(Error::InvalidParameters("class map has no kernel".into()));
    }
    let rays: Vec<Vec<BigInt>> = (0..pi.cols())
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    Fan::new(rays, cones)?.with_class_map(pi)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
