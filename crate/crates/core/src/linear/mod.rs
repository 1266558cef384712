//! Sparse exact linear algebra over a field: formal sums on generator
//! symbols, quotients by finite relation lists, tensor and exterior
//! normalization, kernels, and homology of finite complexes.

pub mod complex;
pub mod formal;
pub mod space;
pub mod tensor;

pub use complex::{FiniteComplex, Homology};
pub use formal::{FormalSum, Sym};
pub use space::{LinearMap, PresentedSpace};
pub use tensor::{RawSlot, RawTerm, SlotKind, SlotKey, TensorElement, TensorKey};

/// Errors raised across the linear-algebra layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinearError {
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("dimension overflow: {0} generators exceeds the cap {1}")]
    DimensionOverflow(usize, usize),
    #[error("not a complex: d∘d ≠ 0 on generator {witness} in degree {degree}")]
    NotAComplex { witness: String, degree: i64 },
    #[error("zero element in a multiplicative slot")]
    ZeroInMultiplicativeSlot,
    #[error("slot shape mismatch: {0}")]
    SlotMismatch(String),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}
