//! The classical and Euclidean Dehn invariants, the scissor-congruence
//! coproduct, the volume homomorphism, and the exact identity checks that
//! bind them.

pub mod classical;
pub mod invariant;
pub mod registry;
pub mod symbols;

pub use classical::{angle_lattice_normalize, classical_dehn_3d, ClassicalDehnValue};
pub use invariant::{
    coassoc_check, euclidean_dehn, scissor_consistency, sn_coproduct, vol_hom, DehnContext,
    DehnTensor,
};
pub use registry::MulRegistry;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DehnError {
    #[error("not a Euclidean simplex: {witness}")]
    NotEuclideanSimplex { witness: String },
    #[error("hyperplanes not in generic position: {witness}")]
    NotGenericPosition { witness: String },
    #[error("required square-root adjunction failed: sqrt({radicand})")]
    AdjunctionRequired { radicand: String },
    #[error("generators of mixed weights")]
    MixedWeights,
    #[error("value not embeddable into the reals")]
    NotRealEmbeddable,
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error(transparent)]
    Linear(#[from] crate::linear::LinearError),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}
