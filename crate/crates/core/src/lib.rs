//! Labeled Rauzy classes and the automorphism groups of their diagrams.
//!
//! The crate is organized bottom-up:
//!
//! - [`permutation`]: alphabets, labeled permutations, renumberings and the
//!   two combinatorial Rauzy moves;
//! - [`diagram`]: breadth-first enumeration of a labeled Rauzy class into an
//!   edge-colored graph, plus JSON/DOT export;
//! - [`marking`]: singularity data read off the suspension polygon: corner
//!   cycles, degrees, genus, and the separatrix rotation map `T`;
//! - [`symmetry`]: the group of relabelings commuting with `T`, its
//!   semidirect coordinates, the diagram automorphism group and the sign
//!   homomorphism whose kernel it is.

pub mod diagram;
pub mod error;
pub mod export;
pub mod marking;
pub mod permutation;
pub mod symmetry;

pub use diagram::{DegreeAudit, RauzyDiagram, VertexId, DEFAULT_MAX_VERTICES};
pub use error::{Error, ParseError, Result};
pub use marking::{CornerMap, MarkingData};
pub use permutation::{Alphabet, LabeledPermutation, Letter, MoveKind, Renumbering};
pub use symmetry::{
    OrbitFrame, SemidirectElement, Sign, SymmetryGroup, VerificationReport,
};
