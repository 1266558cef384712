//! Heuristic integer-relation detection over high-precision reals, used to
//! canonicalize classical Dehn invariants and to certify multiplicative
//! relations that are then verified exactly.

pub mod bigfloat;
pub mod finder;
pub mod lll;

pub use finder::{find_relation, FinderError, Outcome, RelationCertificate};
