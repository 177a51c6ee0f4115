use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class is not in the lattice")]
    NotInLattice,
    #[error("invalid class map: {0}")]
    InvalidProjection(String),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("tail cones differ")]
    TailMismatch,
    #[error("input polyhedron is unbounded")]
    UnboundedInput,
    #[error("truncation box does not contain every vertex")]
    BoxTooSmall,

    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("rays do not span the ambient space (torus factor)")]
    TorusFactor,
    #[error("divisor is not Q-Cartier")]
    NotQCartier,
    #[error("divisor is not Cartier")]
    NotCartier,
    #[error("divisor is not nef")]
    NotNef,
    #[error("fan is not semiprojective")]
    NotSemiprojective,
    #[error("fan is not simplicial")]
    NonSimplicialFan,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fans are not compatible with the lattice map")]
    IncompatibleFans,
    #[error("class group has torsion; not supported here")]
    TorsionUnsupported,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("search region is empty")]
    RegionEmpty,
}
