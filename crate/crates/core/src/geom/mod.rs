//! The geometric substrate: quadratic spaces, volume forms, the star
//! operator, isotropic line pairs, cross-ratios, and Euclidean simplices.

pub mod la;
pub mod lines;
pub mod quad;
pub mod simplex;

pub use lines::{cross_ratio, isotropic_discriminant, isotropic_lines_2d, isotropic_lines_with_root, normalize_line};
pub use quad::{star_operator, ExtElement, QuadSpace, VolumeForm};
pub use simplex::{facet_hyperplanes, points_from_hyperplanes, HyperplaneSimplex, PointSimplex};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate quadratic form")]
    DegenerateForm,
    #[error("degenerate restriction; radical vector {witness:?}")]
    DegenerateRestriction { witness: Vec<String> },
    #[error("invalid volume form: scale {scale} does not square to det {det}")]
    InvalidVolumeForm { scale: String, det: String },
    #[error("discriminant is not a square; adjoin sqrt({radicand})")]
    IrrationalDiscriminant { radicand: String },
    #[error("coincident lines in cross-ratio")]
    CoincidentLines,
    #[error("not a Euclidean simplex: face {witness} carries a degenerate form")]
    NotEuclideanSimplex { witness: String },
    #[error("hyperplanes not in generic position: {witness}")]
    NotGenericPosition { witness: String },
    #[error("required square root not expressible: sqrt({radicand})")]
    AdjunctionRequired { radicand: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}
