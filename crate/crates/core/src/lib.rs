//! Quantum set theory over finite orthomodular lattices and projection
//! lattices: conditionals, Q-valued truth values of bounded formulas,
//! internal reals and successive-measurement checks.

pub mod cli;
pub mod connectives;
pub mod formula;
pub mod hilbert;
pub mod logic;
pub mod measurement;
pub mod oml;
pub mod qvu;
pub mod reals;
pub mod report;
pub mod suite;

pub use connectives::{Interpretation, Kind};
pub use logic::{commutator_pair, commutator_set, Logic};
pub use oml::{Element, FiniteOml};
