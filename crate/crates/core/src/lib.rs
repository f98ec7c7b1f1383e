//! Exact computation in free group rings: Seifert modules, their covering
//! presentations, primitivity certificates, Mayer–Vietoris transversality for
//! link-module presentations, and abelianized torsion invariants.
//!
//! Everything is generic over an exact [`Scalar`] field; the aliases below fix
//! the two supported fields.

pub mod blanchfield;
pub mod free_group;
pub mod group_ring;
pub mod invariants;
pub mod laurent;
pub mod linalg;
pub mod magnus_fox;
pub mod random;
pub mod scalar;
pub mod seifert;
pub mod serial;

pub use free_group::{CayleySubtree, Edge, Letter, Word, WordError};
pub use group_ring::{GroupRingElem, GroupRingMatrix};
pub use laurent::LaurentPoly;
pub use linalg::{AlgebraError, Cokernel, Mat, Nilpotency};
pub use scalar::{FieldKind, Fp, Rational, Scalar, ScalarError};
pub use seifert::SeifertModule;
pub use serial::SerialError;

pub type QMat = Mat<Rational>;
pub type FpMat = Mat<Fp>;
pub type QGroupRingMatrix = GroupRingMatrix<Rational>;
pub type FpGroupRingMatrix = GroupRingMatrix<Fp>;
pub type QSeifert = SeifertModule<Rational>;
pub type FpSeifert = SeifertModule<Fp>;
