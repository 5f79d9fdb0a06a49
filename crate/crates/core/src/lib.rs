//! Exact finite-difference Pólya–Schur toolkit.
//!
//! Polynomials carry exact rational coefficients in either the monomial
//! basis or the Pochhammer (falling factorial) basis. On top of that sit
//! Sturm-based real root isolation, mesh decisions, the proper-position
//! relation `p ≪ q`, finite difference operators and diagonal operators on
//! the Pochhammer basis, checkers for the known preservation results and a
//! seeded search harness for the open conjectures.

pub mod error;
pub mod harness;
pub mod interlace;
pub mod operators;
pub mod poly;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use interlace::{class_membership, proper_position, ClassSpec, ProperPositionVerdict};
pub use operators::{DiagonalSequence, FiniteDifferenceOperator, Operator, ShiftCombination};
pub use poly::{Basis, Degree, Difference, Polynomial, Rational};
pub use roots::{mesh_at_least, mesh_numeric, root_profile, Mesh, MeshReport, RootProfile};
