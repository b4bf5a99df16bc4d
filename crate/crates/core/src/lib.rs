//! Generalized Khovanov homology of link diagrams over the universal ring
//! `R_U = Z[x, y, z, z^-1]/(x^2 = y^2 = 1)`, with specializations to the
//! standard (even) and odd theories, exact integral homology via Smith
//! normal form, and the classical polynomial invariants for cross-checking.

pub mod diagram;
pub mod homology;
pub mod jones;
pub mod braid;
pub mod complex;
pub mod cube;
pub mod tqft;
pub mod verify;
pub mod ring;
pub mod table;

pub use diagram::{CircleSet, DiagramError, EnhancedState, LinkDiagram, ResolutionState};
pub use ring::{LaurentPoly, LaurentRule, RingElem, RingError, Specialization, UnitMonomial, Var};
