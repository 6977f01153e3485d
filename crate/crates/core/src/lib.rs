//! Exact rational geometry-of-numbers engine.
//!
//! Everything that feeds a verdict is computed in arbitrary-precision
//! rational arithmetic: lattice point counts of convex bodies, hyperplane
//! sections, lattice projections, successive minima, and the inequality
//! checks built on top of them. Floating point appears only in report
//! fields that are explicitly marked approximate.

pub mod body;
pub mod counting;
pub mod error;
pub mod exact;
pub mod harness;
pub mod lattice;

pub use body::{BallSq, Body, Polytope, SymmetryTag};
pub use counting::{CountOptions, CountResult, SectionScan};
pub use error::Error;
pub use exact::{Int, QMatrix, QVector, Rational};
pub use harness::{CheckReport, FamilyId, FamilyInstance, Verdict};
pub use lattice::{AffineLattice, Lattice, MahlerBasis, MinimaProfile};

pub type Result<T> = std::result::Result<T, Error>;
