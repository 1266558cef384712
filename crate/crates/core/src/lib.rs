//! Exact computation of scissor-congruence invariants.
//!
//! The crate provides exact arithmetic over computable fields (rationals,
//! real quadratic towers, multivariate rational function fields), sparse
//! linear algebra on finitely presented spaces, the geometry of quadratic
//! spaces and Euclidean simplices, the classical and Euclidean Dehn
//! invariants with their coproduct identities, additive polylogarithmic
//! complexes, the tensor category of eps-modules, and a heuristic integer
//! relation finder used to normalize classical Dehn values.

pub mod scalar;
pub mod linear;
pub mod geom;
pub mod dehn;
pub mod qeps;
pub mod complexes;
pub mod relations;
pub mod report;
