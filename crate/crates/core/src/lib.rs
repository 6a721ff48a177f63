//! Finite KAN-algebras and their relatives.
//!
//! The crate works with finite bounded distributive lattices carrying a
//! Kleene involution `∼`, an intuitionistic negation `¬` and optionally a
//! center. It decides membership in the varieties pdl, stone, kleene, kan,
//! kanc, skan and skanc, builds the Kalman, Monteiro, center-slice, `◊`, `□`
//! and `θ` constructions, verifies and searches homomorphisms, and enumerates
//! small models as a brute-force oracle.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod morphisms;
pub mod suites;
pub mod term;
pub mod varieties;
pub mod verify;

pub use algebra::{Algebra, AlgebraError, UnaryOp};
pub use lattice::{Elem, FinLattice, LatticeError, PosetInput};
pub use varieties::{check_variety, Variety, VarietyReport};
