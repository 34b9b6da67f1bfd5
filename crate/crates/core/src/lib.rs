//! Quadratic forms over complete dyadic discretely valued fields: wildness
//! indices, residue symbols of the depth filtration, canonical Witt
//! decompositions and Witt-class equality.

pub mod arason;
pub mod error;
pub mod field_tower;
pub mod graded;
pub mod linalg;
pub mod norms;
pub mod parse;
pub mod quadform;
pub mod residue_witt;

pub use arason::{
    boundary_symbol, canonical_decomposition, enumerate_wq_q2, generator_certificate, witt_equal, CanonicalDecomposition,
    Equality, GeneratorCertificate, Payload, ResidueSymbol,
};
pub use error::{Error, Result};
pub use field_tower::{Elem, Field, Res, ResidueField};
pub use graded::{ShiftedQuadSpace, SpaceType, UniformizingChoice};
pub use norms::{wildness_index, DepthCertificate, Reduction, VNorm, Wildness};
pub use quadform::QuadraticForm;

/// Exact rational degrees, depths and norm values.
pub type Q = num_rational::Rational64;
