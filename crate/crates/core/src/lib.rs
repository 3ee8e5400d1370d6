//! Exact computations around the hit problem for F_q[x_1, ..., x_n]:
//! Steenrod operations and hit subspaces, the matroid complexes Δ(V*, k) and
//! K with their Stanley-Reisner quotients, Steinberg idempotents of GL_n(F_q),
//! and mod-2 Brown-Gitler module dimensions.

pub mod error;
pub mod field;
pub mod grouprep;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod quotient_ring;
pub mod steenrod_action;
pub mod invariants;
pub mod simplicial;
pub mod steenrod2;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, FieldSpec};
pub use linalg::{EchelonBuilder, MatrixGF, Subspace};
