//! Positive matching decompositions (pmd) of hypergraphs with exact rational
//! certificates, together with the symbolic side of Lovász–Saks–Schrijver
//! ideals: generators, presentation matrices, minors and `H_{W,c}`
//! obstructions.
//!
//! Every claim this crate makes about a matching or a decomposition carries a
//! certificate (a weight function or a Farkas multiplier vector) that can be
//! re-checked with nothing but rational arithmetic.

pub mod error;
pub mod family;
pub mod hypergraph;
pub mod lp;
pub mod lss;
pub mod pmd;
pub mod positive;
pub mod random;
pub mod rational;
pub mod tree;

pub use error::{Error, Result};

pub use family::{LabelPair, PartitionTable, ScanMode, ScanReport};

pub use hypergraph::{Component, Edge, Hypergraph, Vertex};
pub use lp::{FeasibilityVerdict, LinearSystem, Relation};
pub use lss::{
    Dialect, IrreducibleRange, Monomial, ObstructionWitness, Polynomial, Primality,
    PresentationMatrix, StatusOptions, StatusReport,
};
pub use pmd::{PmdBounds, PmdDecomposition, PmdMode, SearchBudget};
pub use positive::{PositivityVerdict, WeightCertificate};
pub use rational::Rational;
pub use tree::{TreeCheckResult, TreeViolation};
